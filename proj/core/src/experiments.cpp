#include "distsense/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "distsense/errors.hpp"
#include "distsense/rng.hpp"

namespace distsense {

namespace {

Model model_from_fit_name(const std::string& name) {
  switch (family_from_name(name)) {
    case Family::exponential: return Model::exponential();
    case Family::gamma: return Model::gamma();
    case Family::log_normal: return Model::log_normal();
    case Family::normal: return Model::normal();
  }
  throw ConfigError("unknown fit name: " + name);
}

void check_support(const Model& model, const Dataset& data) {
  if (!model.positive_support()) return;
  std::vector<int> bad;
  for (int i = 0; i < data.n(); ++i) {
    if (!(data.values[i] > 0.0)) bad.push_back(i + 1);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "model " << model.name() << " needs positive observations; offending row";
    msg << (bad.size() > 1 ? "s: " : ": ");
    for (std::size_t i = 0; i < bad.size(); ++i) msg << (i ? ", " : "") << bad[i];
    throw IngestError(msg.str());
  }
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto path = fs::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

SamplerConfig sampler_from_config(const KeyValueConfig& cfg) {
  SamplerConfig s;
  s.burn_in = cfg.get_int_or("burn_in", s.burn_in);
  s.thinning = cfg.get_int_or("thinning", s.thinning);
  s.chain_count = cfg.get_int_or("chains", s.chain_count);
  s.target_acceptance = cfg.get_double_or("target_acceptance", s.target_acceptance);
  if (cfg.has("step")) {
    std::vector<double> step;
    for (const auto& tok : cfg.get_string_list("step")) step.push_back(std::stod(tok));
    s.initial_step = step;
  }
  const std::string force = cfg.get_string_or("sampler", "auto");
  if (force == "auto") {
    s.force = SamplerConfig::Force::automatic;
  } else if (force == "conjugate") {
    s.force = SamplerConfig::Force::conjugate;
  } else if (force == "metropolis") {
    s.force = SamplerConfig::Force::metropolis;
  } else {
    throw ConfigError("sampler must be auto, conjugate or metropolis, got " + force);
  }
  return s;
}

Prior prior_from_config(const KeyValueConfig& cfg, const Model& model) {
  if (cfg.has("prior")) {
    Prior p;
    for (const auto& tok : cfg.get_string_list("prior")) {
      p.components.push_back(parse_distribution(tok));
    }
    if (p.dim() != model.param_dim()) {
      throw ConfigError("prior has " + std::to_string(p.dim()) + " components, model " +
                        model.name() + " needs " + std::to_string(model.param_dim()));
    }
    return p;
  }
  return Prior::default_for(model);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& cfg, ExperimentKind kind) {
  ExperimentConfig ec;
  ec.kind = kind;

  if (!cfg.has("seed")) {
    throw ConfigError("seed must be set explicitly (config key or --seed)");
  }
  ec.seed = cfg.get_uint64("seed");
  ec.out_dir = cfg.get_string_or("out", "");
  ec.sampler = sampler_from_config(cfg);
  ec.mode = mode_from_name(cfg.get_string_or("mode", "likelihood"));
  if (cfg.has("g")) ec.g = parse_gfunction(cfg.get_string("g"));

  switch (kind) {
    case ExperimentKind::converge: {
      ec.family = DistortionFamily::make(
          distortion_from_name(cfg.get_string_or("family", "power-survival")));
      ec.M = cfg.get_int_or("M", 10000);
      ec.theta0 = cfg.get_double_or("theta0", 0.5);
      if (cfg.has("dgp")) {
        const auto d = parse_distribution(cfg.get_string("dgp"));
        if (d.model.family() != Family::exponential) {
          throw ConfigError("converge supports only an exponential data generating process");
        }
        ec.theta0 = d.params[0];
      }
      ec.n_grid = cfg.has("n_grid") ? cfg.get_int_list("n_grid")
                                    : std::vector<int>{27, 64, 125, 216, 343, 512, 729, 1000};
      ec.prior_a = cfg.get_double_or("prior_a", 1.0);
      ec.prior_b = cfg.get_double_or("prior_b", 1.0);
      ec.level = cfg.get_double_or("level", 0.95);
      break;
    }
    case ExperimentKind::model_select: {
      ec.family =
          DistortionFamily::make(distortion_from_name(cfg.get_string_or("family", "power-cdf")));
      ec.M = cfg.get_int_or("M", 2000);
      ec.n = cfg.get_int_or("n", 50);
      ec.replications = cfg.get_int_or("replications", 1);
      const auto dgp_specs = cfg.has("dgps")
                                 ? cfg.get_string_list("dgps")
                                 : std::vector<std::string>{"gamma(1,1)", "log-normal(0,1)",
                                                            "exponential(1)"};
      for (const auto& s : dgp_specs) ec.dgps.push_back(parse_distribution(s));
      const auto fit_names = cfg.has("fits")
                                 ? cfg.get_string_list("fits")
                                 : std::vector<std::string>{"gamma", "log-normal", "exponential"};
      for (const auto& s : fit_names) ec.fits.push_back(model_from_fit_name(s));
      break;
    }
    case ExperimentKind::report: {
      ec.family =
          DistortionFamily::make(distortion_from_name(cfg.get_string_or("family", "power-cdf")));
      ec.M = cfg.get_int_or("M", 2000);
      ec.dataset_path = cfg.get_string("dataset");
      if (cfg.has("column")) ec.column = cfg.get_string("column");
      if (cfg.has("reference")) ec.reference = cfg.get_string("reference");
      ec.density_points = cfg.get_int_or("density_points", 200);
      const auto fit_names = cfg.has("fits")
                                 ? cfg.get_string_list("fits")
                                 : std::vector<std::string>{"gamma", "log-normal", "exponential"};
      for (const auto& s : fit_names) ec.fits.push_back(model_from_fit_name(s));
      break;
    }
    case ExperimentKind::sensitivity: {
      ec.family = DistortionFamily::make(distortion_from_name(cfg.get_string("family")));
      ec.M = cfg.get_int_or("M", 2000);
      Model model = model_from_fit_name(cfg.get_string("model"));
      if (model.family() == Family::normal && cfg.has("known_mean")) {
        model = Model::normal_known_mean(cfg.get_double("known_mean"));
      }
      ec.model = model;
      ec.prior = prior_from_config(cfg, model);
      if (cfg.has("dataset")) {
        ec.dataset_path = cfg.get_string("dataset");
        if (cfg.has("column")) ec.column = cfg.get_string("column");
      } else if (cfg.has("dgp")) {
        ec.dgp = parse_distribution(cfg.get_string("dgp"));
        ec.dgp_n = cfg.get_int("n");
      } else {
        throw ConfigError("sensitivity needs either a dataset path or a dgp spec");
      }
      ec.export_draws = cfg.get_string_or("export_draws", "false") == "true";
      break;
    }
  }
  ec.validate();
  return ec;
}

void ExperimentConfig::validate() const {
  if (M < 100) throw ConfigError("M must be >= 100 for any experiment");
  if (kind == ExperimentKind::converge) {
    if (family.kind != DistortionKind::power_survival) {
      throw ConfigError("converge requires the power-survival distortion");
    }
    if (n_grid.empty()) throw ConfigError("converge needs a non-empty n grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
      if (n_grid[i] <= n_grid[i - 1]) {
        throw ConfigError("n grid must be strictly increasing");
      }
    }
    if (!(theta0 > 0.0)) throw ConfigError("theta0 must be positive");
    if (!(prior_a > 0.0 && prior_b > 0.0)) throw ConfigError("prior hyperparameters must be positive");
  }
  if (kind == ExperimentKind::model_select) {
    if (dgps.empty()) throw ConfigError("model-select needs a non-empty dgp list");
    if (fits.empty()) throw ConfigError("model-select needs a non-empty fitted-model list");
    if (n < 2) throw ConfigError("model-select needs n >= 2");
    if (replications < 1) throw ConfigError("replications must be >= 1");
  }
  if (kind == ExperimentKind::report && fits.empty()) {
    throw ConfigError("report needs a non-empty fitted-model list");
  }
}

// ---------------------------------------------------------------- converge

ConvergeResult run_converge(const ExperimentConfig& config) {
  ConvergeResult result;
  result.theta0 = config.theta0;
  result.reference_value = -config.theta0;
  result.level = config.level;
  result.M = config.M;
  result.seed = config.seed;

  const Model dgp = Model::exponential();
  const std::vector<double> theta0{config.theta0};
  const Prior prior{{Distribution{Model::gamma(), {config.prior_a, config.prior_b}}}};

  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    const int n = config.n_grid[i];
    const Dataset data = simulate(dgp, theta0, n, derive_seed(config.seed, 2 * i));
    const PosteriorDraws draws =
        sample_posterior(dgp, prior, data, config.M, derive_seed(config.seed, 2 * i + 1));
    const SensitivityReport rep = estimate_delta(draws, dgp, prior, data, config.family,
                                                 GFunction::identity(), Mode::likelihood);
    const Interval ci =
        clt_interval(rep.delta[0], draws.component_mean(0), n, config.level);
    result.rows.push_back({n, rep.delta[0], ci.lo, ci.hi});
  }
  return result;
}

void write_converge_outputs(const ConvergeResult& result, const std::string& dir) {
  auto csv = open_output(dir, "converge.csv");
  csv << "n,delta,ci_lo,ci_hi\n";
  for (const auto& row : result.rows) {
    csv << row.n << ',' << format_double(row.delta) << ',' << format_double(row.ci_lo) << ','
        << format_double(row.ci_hi) << '\n';
  }

  nlohmann::ordered_json j;
  j["experiment"] = "converge";
  j["theta0"] = result.theta0;
  j["reference_value"] = result.reference_value;
  j["level"] = result.level;
  j["M"] = result.M;
  j["seed"] = result.seed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"n", row.n}, {"delta", row.delta}, {"ci_lo", row.ci_lo}, {"ci_hi", row.ci_hi}});
  }
  j["rows"] = rows;
  open_output(dir, "converge.json") << j.dump(2) << '\n';
}

// ------------------------------------------------------------ model-select

namespace {

ModelSelectResult run_model_select_once(const ExperimentConfig& config, std::uint64_t seed,
                                        int replication) {
  ModelSelectResult result;
  result.n = config.n;
  result.M = config.M;
  result.seed = seed;
  result.replication = replication;

  const int F = static_cast<int>(config.fits.size());
  for (const auto& d : config.dgps) result.dgp_names.push_back(d.spec_string());
  for (const auto& f : config.fits) result.fit_names.push_back(f.name());

  for (std::size_t d = 0; d < config.dgps.size(); ++d) {
    const auto& dgp = config.dgps[d];
    const Dataset data =
        simulate(dgp.model, dgp.params, config.n, derive_seed(seed, d));
    for (int f = 0; f < F; ++f) {
      const Model& fit = config.fits[f];
      TableCell cell;
      cell.dgp = result.dgp_names[d];
      cell.fitted_model = result.fit_names[f];
      check_support(fit, data);
      const Prior prior = Prior::default_for(fit);
      const std::uint64_t cell_seed = derive_seed(seed, 100 + d * F + f);
      const PosteriorDraws draws =
          sample_posterior(fit, prior, data, config.M, cell_seed, config.sampler);
      const SensitivityReport rep = estimate_delta(draws, fit, prior, data, config.family,
                                                   GFunction::identity(), config.mode);
      cell.delta_per_parameter = rep.delta;
      double s = 0.0;
      for (double v : rep.delta) s += std::fabs(v);
      cell.avg_abs_delta = s / rep.delta.size();
      cell.warnings = rep.warnings;
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

}  // namespace

ModelSelectResult run_model_select(const ExperimentConfig& config) {
  return run_model_select_once(config, config.seed, 0);
}

std::vector<ModelSelectResult> run_model_select_replicated(const ExperimentConfig& config) {
  std::vector<ModelSelectResult> out;
  for (int r = 0; r < config.replications; ++r) {
    out.push_back(run_model_select_once(config, derive_seed(config.seed, 7000 + r), r));
  }
  return out;
}

std::string format_model_select_table(const ModelSelectResult& result) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out << std::setprecision(2);

  auto cell_text = [&](const std::vector<double>& delta) {
    std::ostringstream c;
    c.setf(std::ios::fixed);
    c << std::setprecision(2);
    if (delta.size() == 1) {
      c << delta[0];
    } else {
      c << '(';
      for (std::size_t j = 0; j < delta.size(); ++j) c << (j ? ", " : "") << delta[j];
      c << ')';
    }
    return c.str();
  };

  const int w = 18;
  out << "delta per parameter, n = " << result.n << ", M = " << result.M << "\n\n";
  out << std::left << std::setw(w) << "DGP \\ fitted";
  for (const auto& f : result.fit_names) out << std::setw(w) << f;
  out << '\n';
  for (std::size_t d = 0; d < result.dgp_names.size(); ++d) {
    out << std::setw(w) << result.dgp_names[d];
    for (std::size_t f = 0; f < result.fit_names.size(); ++f) {
      out << std::setw(w) << cell_text(result.cell(d, f).delta_per_parameter);
    }
    out << '\n';
  }

  // published values for the matching benchmark configuration, if any
  bool any_ref = false;
  std::ostringstream ref;
  ref << std::left << std::setw(w) << "DGP \\ fitted";
  for (const auto& f : result.fit_names) ref << std::setw(w) << f;
  ref << '\n';
  for (std::size_t d = 0; d < result.dgp_names.size(); ++d) {
    ref << std::setw(w) << result.dgp_names[d];
    for (std::size_t f = 0; f < result.fit_names.size(); ++f) {
      const auto& cell = result.cell(d, f);
      const auto dgp_fam = parse_distribution(cell.dgp).model.family();
      const auto r =
          reference_delta_model_select(result.n, dgp_fam, family_from_name(cell.fitted_model));
      if (r) {
        any_ref = true;
        ref << std::setw(w) << cell_text(*r);
      } else {
        ref << std::setw(w) << "-";
      }
    }
    ref << '\n';
  }
  if (any_ref) {
    out << "\npublished values for this configuration (reference, not oracle):\n" << ref.str();
  }
  return out.str();
}

void write_model_select_outputs(const std::vector<ModelSelectResult>& results,
                                const std::string& dir) {
  auto csv = open_output(dir, "model_select.csv");
  csv << "replication,n,dgp,fit,delta_1,delta_2,avg_abs_delta\n";
  for (const auto& result : results) {
    for (const auto& cell : result.cells) {
      csv << result.replication << ',' << result.n << ',' << cell.dgp << ',' << cell.fitted_model
          << ',' << format_double(cell.delta_per_parameter[0]) << ',';
      if (cell.delta_per_parameter.size() > 1) csv << format_double(cell.delta_per_parameter[1]);
      csv << ',' << format_double(cell.avg_abs_delta) << '\n';
    }
  }

  nlohmann::ordered_json j;
  j["experiment"] = "model-select";
  j["replications"] = results.size();
  nlohmann::ordered_json reps = nlohmann::ordered_json::array();
  for (const auto& result : results) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : result.cells) {
      nlohmann::ordered_json c;
      c["dgp"] = cell.dgp;
      c["fit"] = cell.fitted_model;
      c["delta"] = cell.delta_per_parameter;
      c["avg_abs_delta"] = cell.avg_abs_delta;
      const auto r = reference_delta_model_select(
          result.n, parse_distribution(cell.dgp).model.family(),
          family_from_name(cell.fitted_model));
      if (r) c["reference_delta"] = *r;
      c["warnings"] = cell.warnings;
      cells.push_back(c);
    }
    reps.push_back({{"replication", result.replication},
                    {"n", result.n},
                    {"M", result.M},
                    {"seed", result.seed},
                    {"cells", cells}});
  }
  j["results"] = reps;
  open_output(dir, "model_select.json") << j.dump(2) << '\n';
  open_output(dir, "table.txt") << format_model_select_table(results.front());
}

std::optional<std::vector<double>> reference_delta_model_select(int n, Family dgp, Family fit) {
  struct Row {
    int n;
    Family dgp;
    Family fit;
    std::vector<double> delta;
  };
  // reference values for the n=50 and n=200 benchmark grids
  static const std::vector<Row> table = {
      {50, Family::gamma, Family::gamma, {-0.99, -0.25}},
      {50, Family::gamma, Family::log_normal, {-1.17, 0.47}},
      {50, Family::gamma, Family::exponential, {0.56}},
      {50, Family::log_normal, Family::gamma, {-1.19, -0.30}},
      {50, Family::log_normal, Family::log_normal, {-0.80, 0.26}},
      {50, Family::log_normal, Family::exponential, {0.56}},
      {50, Family::exponential, Family::gamma, {-0.79, -0.22}},
      {50, Family::exponential, Family::log_normal, {-1.42, 0.52}},
      {50, Family::exponential, Family::exponential, {0.62}},
      {200, Family::gamma, Family::gamma, {-0.87, -0.21}},
      {200, Family::gamma, Family::log_normal, {-1.15, 0.50}},
      {200, Family::gamma, Family::exponential, {0.61}},
      {200, Family::log_normal, Family::gamma, {-1.13, -0.18}},
      {200, Family::log_normal, Family::log_normal, {-0.85, 0.29}},
      {200, Family::log_normal, Family::exponential, {0.39}},
      {200, Family::exponential, Family::gamma, {-0.99, -0.28}},
      {200, Family::exponential, Family::log_normal, {-1.07, 0.41}},
      {200, Family::exponential, Family::exponential, {0.66}},
  };
  for (const auto& row : table) {
    if (row.n == n && row.dgp == dgp && row.fit == fit) return row.delta;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> reference_delta_report(const std::string& tag, Family fit) {
  struct Row {
    std::string tag;
    Family fit;
    std::vector<double> delta;
  };
  static const std::vector<Row> table = {
      {"windshield", Family::gamma, {-3.80, -0.97}},
      {"windshield", Family::log_normal, {-0.58, 0.28}},
      {"windshield", Family::exponential, {0.25}},
      {"earthquake", Family::gamma, {-0.60, -0.21}},
      {"earthquake", Family::log_normal, {-1.66, 0.70}},
      {"earthquake", Family::exponential, {0.83}},
  };
  for (const auto& row : table) {
    if (row.tag == tag && row.fit == fit) return row.delta;
  }
  return std::nullopt;
}

// ----------------------------------------------------------------- report

ReportResult run_report(const ExperimentConfig& config) {
  ReportResult result;
  result.data = ingest_csv(config.dataset_path, config.column);
  if (result.data.n() < 2) {
    throw IngestError("report requires at least 2 observations, got " +
                      std::to_string(result.data.n()));
  }
  for (const auto& fit : config.fits) check_support(fit, result.data);

  const auto& x = result.data.values;
  const double xmax = *std::max_element(x.begin(), x.end());
  const double xmin = *std::min_element(x.begin(), x.end());
  const double lo = std::min(xmin, 0.0);
  const double hi = xmax * 1.05;

  for (std::size_t f = 0; f < config.fits.size(); ++f) {
    const Model& fit = config.fits[f];
    const Prior prior = Prior::default_for(fit);
    const PosteriorDraws draws = sample_posterior(fit, prior, result.data, config.M,
                                                  derive_seed(config.seed, f), config.sampler);
    ReportModelResult mr;
    mr.model_name = fit.name();
    for (int j = 0; j < draws.k; ++j) mr.posterior_mean.push_back(draws.component_mean(j));
    mr.report = estimate_delta(draws, fit, prior, result.data, config.family,
                               GFunction::identity(), config.mode);
    result.models.push_back(std::move(mr));
  }

  // fitted densities at the posterior-mean point estimate, on grid midpoints
  result.x_grid.resize(config.density_points);
  for (int i = 0; i < config.density_points; ++i) {
    result.x_grid[i] = lo + (i + 0.5) * (hi - lo) / config.density_points;
  }
  for (std::size_t f = 0; f < config.fits.size(); ++f) {
    std::vector<double> dens(result.x_grid.size());
    for (std::size_t i = 0; i < result.x_grid.size(); ++i) {
      dens[i] = config.fits[f].pdf(result.models[f].posterior_mean, result.x_grid[i]);
    }
    result.densities.push_back(std::move(dens));
  }

  const int nbins = std::max(8, static_cast<int>(std::ceil(std::log2(result.data.n()))) + 1);
  const double bin_hi = xmax + (hi - lo) * 1e-9;
  result.bin_edges.resize(nbins + 1);
  for (int b = 0; b <= nbins; ++b) result.bin_edges[b] = lo + b * (bin_hi - lo) / nbins;
  result.bin_counts.assign(nbins, 0);
  for (double v : x) {
    int b = static_cast<int>((v - lo) / (bin_hi - lo) * nbins);
    b = std::clamp(b, 0, nbins - 1);
    ++result.bin_counts[b];
  }
  return result;
}

void write_report_outputs(const ReportResult& result, const ExperimentConfig& config,
                          const std::string& dir) {
  for (const auto& mr : result.models) {
    open_output(dir, "report_" + mr.model_name + ".json") << to_json(mr.report) << '\n';
  }

  auto table = open_output(dir, "report_table.csv");
  table << "fit,delta_1,delta_2,avg_abs_delta,reference_delta_1,reference_delta_2\n";
  for (const auto& mr : result.models) {
    const auto& delta = mr.report.delta;
    double s = 0.0;
    for (double v : delta) s += std::fabs(v);
    table << mr.model_name << ',' << format_double(delta[0]) << ',';
    if (delta.size() > 1) table << format_double(delta[1]);
    table << ',' << format_double(s / delta.size()) << ',';
    const auto ref = config.reference
                         ? reference_delta_report(*config.reference, family_from_name(mr.model_name))
                         : std::nullopt;
    if (ref) {
      table << format_double((*ref)[0]) << ',';
      if (ref->size() > 1) table << format_double((*ref)[1]);
    } else {
      table << ',';
    }
    table << '\n';
  }

  auto dens = open_output(dir, "density.csv");
  dens << "x";
  for (const auto& mr : result.models) dens << ',' << mr.model_name;
  dens << '\n';
  for (std::size_t i = 0; i < result.x_grid.size(); ++i) {
    dens << format_double(result.x_grid[i]);
    for (const auto& d : result.densities) dens << ',' << format_double(d[i]);
    dens << '\n';
  }

  auto hist = open_output(dir, "histogram.csv");
  hist << "bin_lo,bin_hi,count,density\n";
  const double total = static_cast<double>(result.data.n());
  for (std::size_t b = 0; b + 1 < result.bin_edges.size(); ++b) {
    const double w = result.bin_edges[b + 1] - result.bin_edges[b];
    hist << format_double(result.bin_edges[b]) << ',' << format_double(result.bin_edges[b + 1])
         << ',' << result.bin_counts[b] << ',' << format_double(result.bin_counts[b] / (total * w))
         << '\n';
  }
}

// ------------------------------------------------------------- sensitivity

SensitivityRunResult run_sensitivity(const ExperimentConfig& config) {
  if (!config.model || !config.prior) throw ConfigError("sensitivity needs a model and a prior");
  SensitivityRunResult result;
  if (!config.dataset_path.empty()) {
    result.data = ingest_csv(config.dataset_path, config.column);
  } else if (config.dgp) {
    result.data = simulate(config.dgp->model, config.dgp->params, config.dgp_n,
                           derive_seed(config.seed, 1));
  } else {
    throw ConfigError("sensitivity needs either a dataset path or a dgp spec");
  }
  check_support(*config.model, result.data);
  result.draws = sample_posterior(*config.model, *config.prior, result.data, config.M,
                                  derive_seed(config.seed, 2), config.sampler);
  result.report = estimate_delta(result.draws, *config.model, *config.prior, result.data,
                                 config.family, config.g, config.mode);
  return result;
}

void write_sensitivity_outputs(const SensitivityRunResult& result, const ExperimentConfig& config,
                               const std::string& dir) {
  open_output(dir, "report.json") << to_json(result.report) << '\n';
  auto csv = open_output(dir, "report.csv");
  csv << report_csv_header() << '\n' << to_csv_rows(result.report);
  if (config.export_draws) {
    namespace fs = std::filesystem;
    write_draws_csv(result.draws, (fs::path(dir) / "draws.csv").string());
  }
}

}  // namespace distsense
