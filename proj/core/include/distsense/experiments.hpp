#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distsense/config.hpp"
#include "distsense/csv.hpp"
#include "distsense/dataset.hpp"
#include "distsense/distortion.hpp"
#include "distsense/models.hpp"
#include "distsense/posterior.hpp"
#include "distsense/sensitivity.hpp"

namespace distsense {

enum class ExperimentKind { converge, model_select, report, sensitivity };

/// Validated settings for one experiment run.  Every run is seeded
/// explicitly; derived per-cell seeds come from (seed, cell index).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::sensitivity;

  DistortionFamily family = DistortionFamily::make(DistortionKind::power_cdf);
  GFunction g = GFunction::identity();
  Mode mode = Mode::likelihood;
  int M = 0;
  std::uint64_t seed = 0;
  SamplerConfig sampler;
  std::string out_dir;

  // converge
  double theta0 = 0.5;
  std::vector<int> n_grid;
  double prior_a = 1.0;
  double prior_b = 1.0;
  double level = 0.95;

  // model-select
  int n = 0;
  int replications = 1;
  std::vector<Distribution> dgps;
  std::vector<Model> fits;

  // report
  std::string dataset_path;
  std::optional<std::string> column;
  std::optional<std::string> reference;  // "windshield" or "earthquake"
  int density_points = 200;

  // single sensitivity estimate
  std::optional<Model> model;
  std::optional<Prior> prior;
  std::optional<Distribution> dgp;
  int dgp_n = 0;
  bool export_draws = false;

  static ExperimentConfig from_config(const KeyValueConfig& cfg, ExperimentKind kind);
  void validate() const;
};

// ---------------------------------------------------------------- converge

struct ConvergeRow {
  int n;
  double delta;
  double ci_lo;
  double ci_hi;
};

struct ConvergeResult {
  std::vector<ConvergeRow> rows;
  double theta0 = 0.5;
  double reference_value = -0.5;  // -theta0, the large-sample limit
  double level = 0.95;
  int M = 0;
  std::uint64_t seed = 0;
};

/// Sensitivity of the exponential-rate posterior mean under the survival
/// power distortion across a grid of sample sizes, with asymptotic
/// confidence intervals.
ConvergeResult run_converge(const ExperimentConfig& config);
void write_converge_outputs(const ConvergeResult& result, const std::string& dir);

// ------------------------------------------------------------ model-select

struct TableCell {
  std::string dgp;
  std::string fitted_model;
  std::vector<double> delta_per_parameter;
  double avg_abs_delta = 0.0;
  std::vector<std::string> warnings;
};

struct ModelSelectResult {
  int n = 0;
  int M = 0;
  std::uint64_t seed = 0;
  int replication = 0;
  std::vector<std::string> dgp_names;
  std::vector<std::string> fit_names;
  std::vector<TableCell> cells;  // dgp-major

  const TableCell& cell(int dgp_index, int fit_index) const {
    return cells[static_cast<std::size_t>(dgp_index) * fit_names.size() + fit_index];
  }
};

/// One full DGP x fitted-model sensitivity grid at config.seed.
ModelSelectResult run_model_select(const ExperimentConfig& config);
/// config.replications independent grids with seeds derived per replication.
std::vector<ModelSelectResult> run_model_select_replicated(const ExperimentConfig& config);
std::string format_model_select_table(const ModelSelectResult& result);
void write_model_select_outputs(const std::vector<ModelSelectResult>& results,
                                const std::string& dir);

/// Published benchmark sensitivities for the model-selection grid at
/// n in {50, 200} (reference, not oracle: reported next to computed values).
std::optional<std::vector<double>> reference_delta_model_select(int n, Family dgp, Family fit);
/// Same for the named real-data reports ("windshield", "earthquake").
std::optional<std::vector<double>> reference_delta_report(const std::string& tag, Family fit);

// ----------------------------------------------------------------- report

struct ReportModelResult {
  std::string model_name;
  std::vector<double> posterior_mean;
  SensitivityReport report;
};

struct ReportResult {
  Dataset data;
  std::vector<ReportModelResult> models;
  std::vector<double> x_grid;
  std::vector<std::vector<double>> densities;  // one vector per model
  std::vector<double> bin_edges;
  std::vector<int> bin_counts;
};

/// Fits each configured model to the dataset and reports per-model
/// sensitivities plus histogram / fitted-density plot data.
ReportResult run_report(const ExperimentConfig& config);
void write_report_outputs(const ReportResult& result, const ExperimentConfig& config,
                          const std::string& dir);

// ------------------------------------------------------------- sensitivity

struct SensitivityRunResult {
  Dataset data;
  PosteriorDraws draws;
  SensitivityReport report;
};

/// Single estimate: dataset (or simulated DGP), one model, one prior.
SensitivityRunResult run_sensitivity(const ExperimentConfig& config);
void write_sensitivity_outputs(const SensitivityRunResult& result, const ExperimentConfig& config,
                               const std::string& dir);

}  // namespace distsense
