#include "distsense/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "distsense/errors.hpp"

namespace distsense {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_number(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == t.size();
}

}  // namespace

Dataset ingest_csv(const std::string& path, const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open dataset file: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // trailing blank lines are not data
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw IngestError("dataset file is empty: " + path);

  const auto first_cells = split_csv_line(lines[0]);
  double probe;
  bool has_header = false;
  for (const auto& c : first_cells) {
    if (!parse_number(c, probe)) {
      has_header = true;
      break;
    }
  }

  std::size_t col_index = 0;
  if (column) {
    if (!has_header) {
      throw IngestError("column '" + *column + "' requested but file has no header line");
    }
    bool found = false;
    for (std::size_t j = 0; j < first_cells.size(); ++j) {
      if (trim(first_cells[j]) == *column) {
        col_index = j;
        found = true;
        break;
      }
    }
    if (!found) throw IngestError("column '" + *column + "' not found in " + path);
  } else if (has_header || first_cells.size() > 1) {
    if (first_cells.size() > 1) {
      throw IngestError("file has " + std::to_string(first_cells.size()) +
                        " columns; select one by name");
    }
  }

  Dataset out;
  out.source = path;
  std::vector<std::size_t> bad_lines;
  for (std::size_t i = has_header ? 1 : 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) {
      bad_lines.push_back(i + 1);
      continue;
    }
    const auto cells = split_csv_line(lines[i]);
    double v;
    if (col_index >= cells.size() || !parse_number(cells[col_index], v)) {
      bad_lines.push_back(i + 1);
      continue;
    }
    out.values.push_back(v);
  }
  if (!bad_lines.empty()) {
    std::ostringstream msg;
    msg << "unparseable or missing values in " << path << " at line";
    msg << (bad_lines.size() > 1 ? "s " : " ");
    for (std::size_t i = 0; i < bad_lines.size(); ++i) msg << (i ? ", " : "") << bad_lines[i];
    throw IngestError(msg.str());
  }
  if (out.values.empty()) throw IngestError("no data rows in " + path);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_draws_csv(const PosteriorDraws& draws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (int j = 0; j < draws.k; ++j) out << (j ? "," : "") << "theta_" << (j + 1);
  out << '\n';
  for (int m = 0; m < draws.M; ++m) {
    const auto row = draws.row(m);
    for (int j = 0; j < draws.k; ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

}  // namespace distsense
