// Command-line driver for the local-robustness diagnostics: seeded experiment
// runners plus a single-estimate mode.  Outputs are CSV/JSON files with
// stable ordering; failures print one machine-readable JSON line and exit
// nonzero.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "distsense/errors.hpp"
#include "distsense/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file (key = value lines)")
      ->required();
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--out", args.out, "override the output directory");
}

distsense::ExperimentConfig load(const CommonArgs& args, distsense::ExperimentKind kind) {
  auto cfg = distsense::KeyValueConfig::parse_file(args.config_path);
  if (args.seed) cfg.set("seed", std::to_string(*args.seed));
  if (args.out) cfg.set("out", *args.out);
  auto ec = distsense::ExperimentConfig::from_config(cfg, kind);
  if (ec.out_dir.empty()) {
    throw distsense::ConfigError("output directory must be set (config key 'out' or --out)");
  }
  return ec;
}

int run_converge_cmd(const CommonArgs& args) {
  const auto config = load(args, distsense::ExperimentKind::converge);
  const auto result = distsense::run_converge(config);
  distsense::write_converge_outputs(result, config.out_dir);
  std::cout << "converge: " << result.rows.size() << " grid points, reference value "
            << result.reference_value << ", outputs in " << config.out_dir << "\n";
  return 0;
}

int run_model_select_cmd(const CommonArgs& args) {
  const auto config = load(args, distsense::ExperimentKind::model_select);
  const auto results = distsense::run_model_select_replicated(config);
  distsense::write_model_select_outputs(results, config.out_dir);
  std::cout << distsense::format_model_select_table(results.front());
  if (results.size() > 1) {
    std::cout << "\n(" << results.size() << " replications written to " << config.out_dir << ")\n";
  }
  return 0;
}

int run_report_cmd(const CommonArgs& args) {
  const auto config = load(args, distsense::ExperimentKind::report);
  const auto result = distsense::run_report(config);
  distsense::write_report_outputs(result, config, config.out_dir);
  std::cout << "report: n = " << result.data.n() << " from " << result.data.source << "\n";
  for (const auto& mr : result.models) {
    std::cout << "  " << mr.model_name << ": delta = (";
    for (std::size_t j = 0; j < mr.report.delta.size(); ++j) {
      std::cout << (j ? ", " : "") << mr.report.delta[j];
    }
    std::cout << ")\n";
  }
  std::cout << "outputs in " << config.out_dir << "\n";
  return 0;
}

int run_sensitivity_cmd(const CommonArgs& args) {
  const auto config = load(args, distsense::ExperimentKind::sensitivity);
  const auto result = distsense::run_sensitivity(config);
  distsense::write_sensitivity_outputs(result, config, config.out_dir);
  std::cout << distsense::to_json(result.report) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian local-robustness diagnostics via distortion functions"};
  app.require_subcommand(1);

  CommonArgs converge_args, model_select_args, report_args, sensitivity_args;
  auto* converge =
      app.add_subcommand("converge", "sensitivity of the exponential model across sample sizes");
  add_common(converge, converge_args);
  auto* model_select =
      app.add_subcommand("model-select", "DGP x fitted-model sensitivity grid");
  add_common(model_select, model_select_args);
  auto* report = app.add_subcommand("report", "real-data sensitivity report with plot data");
  add_common(report, report_args);
  auto* sensitivity = app.add_subcommand("sensitivity", "single sensitivity estimate");
  add_common(sensitivity, sensitivity_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (converge->parsed()) return run_converge_cmd(converge_args);
    if (model_select->parsed()) return run_model_select_cmd(model_select_args);
    if (report->parsed()) return run_report_cmd(report_args);
    if (sensitivity->parsed()) return run_sensitivity_cmd(sensitivity_args);
  } catch (const distsense::Error& e) {
    nlohmann::ordered_json j;
    j["error"] = distsense::error_code(e);
    j["message"] = e.what();
    std::cout << j.dump() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"] = "error";
    j["message"] = e.what();
    std::cout << j.dump() << std::endl;
    return 1;
  }
  return 0;
}
