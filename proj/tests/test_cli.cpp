// End-to-end checks of the command-line driver: exit codes, error JSON and
// byte-identical outputs across process runs.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DISTSENSE_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) output += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

fs::path temp_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("distsense_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli sensitivity subcommand succeeds and writes a report") {
  const auto dir = temp_dir("sens");
  write_file(dir / "run.conf",
             "model = exponential\n"
             "prior = gamma(1,1)\n"
             "dgp = exponential(0.5)\n"
             "n = 50\n"
             "family = power-survival\n"
             "M = 500\n"
             "seed = 5\n");
  const auto r = run_cli("sensitivity --config " + (dir / "run.conf").string() + " --out " +
                         (dir / "out").string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "out" / "report.json"));
  const auto parsed = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(parsed["mode"] == "likelihood");
  CHECK(parsed["family"] == "power-survival");
  CHECK(parsed["M"] == 500);
}

TEST_CASE("cli failure prints machine-readable error JSON and exits nonzero") {
  const auto dir = temp_dir("fail");
  write_file(dir / "run.conf",
             "model = exponential\n"
             "dgp = exponential(0.5)\n"  // missing seed
             "n = 50\n"
             "family = power-survival\n"
             "M = 500\n");
  const auto r = run_cli("sensitivity --config " + (dir / "run.conf").string() + " --out " +
                         (dir / "out").string());
  CHECK(r.exit_code != 0);
  const auto parsed = nlohmann::json::parse(r.output);
  CHECK(parsed["error"] == "config-error");
  CHECK(parsed["message"].get<std::string>().find("seed") != std::string::npos);

  write_file(dir / "run2.conf",
             "dataset = /nonexistent/file.csv\n"
             "M = 500\nseed = 1\n");
  const auto r2 = run_cli("report --config " + (dir / "run2.conf").string() + " --out " +
                          (dir / "out").string());
  CHECK(r2.exit_code != 0);
  CHECK(nlohmann::json::parse(r2.output)["error"] == "ingest-error");
}

TEST_CASE("cli seed override and cross-process byte determinism") {
  const auto dir = temp_dir("determinism");
  write_file(dir / "conv.conf",
             "n_grid = 27, 64\n"
             "M = 400\n"
             "seed = 7\n");
  const auto a = run_cli("converge --config " + (dir / "conv.conf").string() + " --out " +
                         (dir / "a").string());
  const auto b = run_cli("converge --config " + (dir / "conv.conf").string() + " --out " +
                         (dir / "b").string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(dir / "a" / "converge.csv") == slurp(dir / "b" / "converge.csv"));
  CHECK(slurp(dir / "a" / "converge.json") == slurp(dir / "b" / "converge.json"));

  // a different seed changes the outputs
  const auto c = run_cli("converge --config " + (dir / "conv.conf").string() + " --seed 8 --out " +
                         (dir / "c").string());
  CHECK(c.exit_code == 0);
  CHECK(slurp(dir / "a" / "converge.csv") != slurp(dir / "c" / "converge.csv"));
}

TEST_CASE("cli model-select prints the reference table") {
  const auto dir = temp_dir("table");
  write_file(dir / "ms.conf",
             "n = 50\n"
             "M = 120\n"
             "seed = 3\n"
             "burn_in = 200\n"
             "dgps = exponential(1)\n"
             "fits = exponential\n");
  const auto r = run_cli("model-select --config " + (dir / "ms.conf").string() + " --out " +
                         (dir / "out").string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("reference, not oracle") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "model_select.csv"));
}
