#include "distsense/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "distsense/errors.hpp"

namespace distsense {

namespace {
std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}
}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string KeyValueConfig::get_string_or(const std::string& key,
                                          const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + v);
  }
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
  const double d = get_double(key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) throw ConfigError("config key " + key + " is not an integer");
  return i;
}

int KeyValueConfig::get_int_or(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_uint64(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not an unsigned integer: " + v);
  }
}

std::vector<std::string> KeyValueConfig::get_string_list(const std::string& key) const {
  // split on commas outside parentheses, so "gamma(1,1), exponential(1)"
  // yields two entries
  const std::string v = get_string(key);
  std::vector<std::string> out;
  std::string tok;
  int depth = 0;
  for (char c : v) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      tok = trim(tok);
      if (!tok.empty()) out.push_back(tok);
      tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  tok = trim(tok);
  if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& tok : get_string_list(key)) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " has a non-integer entry: " + tok);
    }
  }
  return out;
}

}  // namespace distsense
