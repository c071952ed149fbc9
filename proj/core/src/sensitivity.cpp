#include "distsense/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "distsense/errors.hpp"
#include "distsense/special_functions.hpp"

namespace distsense {

namespace stats {

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (static_cast<double>(v.size()) - 1.0);
}

double sample_covariance(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a), mb = mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / (static_cast<double>(a.size()) - 1.0);
}

}  // namespace stats

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> g_column(const std::vector<double>& g_values, int M, int s, int j) {
  std::vector<double> col(M);
  for (int m = 0; m < M; ++m) col[m] = g_values[static_cast<std::size_t>(m) * s + j];
  return col;
}
}  // namespace

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::likelihood: return "likelihood";
    case Mode::prior: return "prior";
    case Mode::double_distortion: return "double";
  }
  return "?";
}

Mode mode_from_name(std::string_view name) {
  if (name == "likelihood") return Mode::likelihood;
  if (name == "prior") return Mode::prior;
  if (name == "double") return Mode::double_distortion;
  throw ConfigError("unknown mode: " + std::string(name));
}

std::vector<double> statistic_values(const PosteriorDraws& draws, const Model& model,
                                     const Prior& prior, const Dataset& data,
                                     const DistortionFamily& family, Mode mode) {
  std::vector<double> t(draws.M);
  for (int m = 0; m < draws.M; ++m) {
    const auto theta = draws.row(m);
    try {
      switch (mode) {
        case Mode::likelihood:
          t[m] = score_sum(family, model, theta, data);
          break;
        case Mode::prior:
          t[m] = prior_score(family, prior, theta);
          break;
        case Mode::double_distortion:
          t[m] = prior_score(family, prior, theta) + score_sum(family, model, theta, data);
          break;
      }
    } catch (const ScoreUndefinedError& e) {
      throw ScoreUndefinedError("draw " + std::to_string(m + 1) + ": " + e.what());
    }
  }
  return t;
}

bool clt_interval_available(const Model& model, const DistortionFamily& family, Mode mode,
                            const GFunction& g) {
  const bool g_is_theta =
      g.kind == GFunction::Kind::identity ||
      (g.kind == GFunction::Kind::component && g.component_index == 1);
  return model.family() == Family::exponential && model.param_dim() == 1 &&
         family.kind == DistortionKind::power_survival && mode == Mode::likelihood && g_is_theta;
}

Interval clt_interval(double delta_hat, double theta_hat, int n, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("clt_interval: level outside (0,1)");
  if (n < 1) throw DomainError("clt_interval: n must be >= 1");
  const double z = special::normal_quantile(0.5 * (1.0 + level));
  const double hw = z * theta_hat / std::sqrt(static_cast<double>(n));
  return {delta_hat - hw, delta_hat + hw};
}

double mc_standard_error(std::span<const double> g_values, std::span<const double> t_values,
                         int batches) {
  const int M = static_cast<int>(g_values.size());
  if (static_cast<int>(t_values.size()) != M) {
    throw ContractError("mc_standard_error: length mismatch");
  }
  if (M < 20) throw DomainError("mc_standard_error: need at least 20 draws");
  if (batches < 2) throw DomainError("mc_standard_error: need at least 2 batches");

  const double mg = stats::mean(g_values);
  const double mt = stats::mean(t_values);
  const int B = std::min(batches, M);
  const int len = M / B;

  // batch means of the centered cross products; their spread estimates the
  // Monte Carlo error of the covariance under autocorrelation
  double bm_sum = 0.0, bm_sq = 0.0;
  for (int b = 0; b < B; ++b) {
    double s = 0.0;
    for (int i = b * len; i < (b + 1) * len; ++i) {
      s += (g_values[i] - mg) * (t_values[i] - mt);
    }
    const double bm = s / len;
    bm_sum += bm;
    bm_sq += bm * bm;
  }
  const double var_bm = (bm_sq - bm_sum * bm_sum / B) / (B - 1.0);
  const double se_mean = std::sqrt(std::max(var_bm, 0.0) / B);
  return se_mean * static_cast<double>(M) / (static_cast<double>(M) - 1.0);
}

SensitivityReport estimate_delta(const PosteriorDraws& draws, const Model& model,
                                 const Prior& prior, const Dataset& data,
                                 const DistortionFamily& family, const GFunction& g, Mode mode) {
  if (draws.M < 2) throw DomainError("estimate_delta: need at least 2 draws");
  const int M = draws.M;
  const int s = g.output_dim(draws.k);

  const auto t = statistic_values(draws, model, prior, data, family, mode);
  const auto g_values = evaluate_g(g, draws);

  SensitivityReport rep;
  rep.mode = mode;
  rep.family = family;
  rep.M = M;
  rep.n = data.n();
  rep.seed = draws.seed;
  rep.warnings = draws.warnings;
  rep.delta.resize(s);
  rep.delta_normalized.resize(s);
  rep.normalized_defined.resize(s);
  rep.cs_bound.resize(s);
  rep.std_error.resize(s);
  rep.ci_95.resize(s);

  const double sd_t = std::sqrt(stats::sample_variance(t));
  const bool clt_ok = clt_interval_available(model, family, mode, g);
  double norm2 = 0.0;
  for (int j = 0; j < s; ++j) {
    const auto gj = g_column(g_values, M, s, j);
    rep.delta[j] = stats::sample_covariance(gj, t);
    const double sd_g = std::sqrt(stats::sample_variance(gj));
    rep.cs_bound[j] = sd_g * sd_t;
    if (sd_g > 0.0 && sd_t > 0.0) {
      rep.delta_normalized[j] = std::clamp(rep.delta[j] / rep.cs_bound[j], -1.0, 1.0);
      rep.normalized_defined[j] = 1;
    } else {
      rep.delta_normalized[j] = kNaN;
      rep.normalized_defined[j] = 0;
    }
    rep.std_error[j] = M >= 20 ? mc_standard_error(gj, t) : kNaN;
    if (clt_ok) {
      rep.ci_95[j] = clt_interval(rep.delta[j], draws.component_mean(0), data.n(), 0.95);
    }
    norm2 += rep.delta[j] * rep.delta[j];
  }
  rep.delta_euclidean_norm = std::sqrt(norm2);
  if (M < 20) {
    rep.warnings.push_back("fewer than 20 draws: no batch standard error");
  }
  if (sd_t == 0.0) {
    rep.warnings.push_back("sd(T) = 0 (constant distortion statistic): normalized sensitivity undefined");
  }
  return rep;
}

FiniteDifferenceCheck finite_difference_check(const PosteriorDraws& draws, const Model& model,
                                              const Dataset& data, const DistortionFamily& family,
                                              const GFunction& g, double epsilon) {
  if (!(epsilon >= 1e-6 && epsilon <= 1e-2)) {
    throw DomainError("finite_difference_check: epsilon outside [1e-6, 1e-2]");
  }
  const auto plus =
      distorted_expectation_reweighted(draws, model, data, family, family.alpha0 + epsilon, g);
  const auto minus =
      distorted_expectation_reweighted(draws, model, data, family, family.alpha0 - epsilon, g);

  FiniteDifferenceCheck out;
  const int s = g.output_dim(draws.k);
  out.delta_fd.resize(s);
  for (int j = 0; j < s; ++j) {
    out.delta_fd[j] = (plus.value[j] - minus.value[j]) / (2.0 * epsilon);
  }

  const auto t = statistic_values(draws, model, Prior{}, data, family, Mode::likelihood);
  const auto g_values = evaluate_g(g, draws);
  out.delta_cov.resize(s);
  for (int j = 0; j < s; ++j) {
    out.delta_cov[j] = stats::sample_covariance(g_column(g_values, draws.M, s, j), t);
  }
  return out;
}

namespace {

nlohmann::ordered_json vector_json(const std::vector<double>& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (double x : v) {
    if (std::isnan(x)) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(x);
    }
  }
  return arr;
}

}  // namespace

std::string to_json(const SensitivityReport& rep) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(mode_name(rep.mode));
  j["family"] = std::string(distortion_name(rep.family.kind));
  j["delta"] = vector_json(rep.delta);
  j["delta_normalized"] = vector_json(rep.delta_normalized);
  j["cs_bound"] = vector_json(rep.cs_bound);
  j["std_error"] = vector_json(rep.std_error);
  nlohmann::ordered_json cis = nlohmann::ordered_json::array();
  for (const auto& ci : rep.ci_95) {
    if (ci) {
      cis.push_back({ci->lo, ci->hi});
    } else {
      cis.push_back(nullptr);
    }
  }
  j["ci_95"] = cis;
  j["M"] = rep.M;
  j["n"] = rep.n;
  j["seed"] = rep.seed;
  j["delta_euclidean_norm"] = rep.delta_euclidean_norm;
  j["warnings"] = rep.warnings;
  return j.dump(2);
}

std::string report_csv_header() {
  return "mode,family,component,delta,delta_normalized,cs_bound,std_error,ci_lo,ci_hi,M,n,seed";
}

std::string to_csv_rows(const SensitivityReport& rep) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t j = 0; j < rep.delta.size(); ++j) {
    out << mode_name(rep.mode) << ',' << distortion_name(rep.family.kind) << ',' << (j + 1) << ','
        << rep.delta[j] << ',';
    if (rep.normalized_defined[j]) {
      out << rep.delta_normalized[j];
    }
    out << ',' << rep.cs_bound[j] << ',' << rep.std_error[j] << ',';
    if (rep.ci_95[j]) {
      out << rep.ci_95[j]->lo << ',' << rep.ci_95[j]->hi;
    } else {
      out << ',';
    }
    out << ',' << rep.M << ',' << rep.n << ',' << rep.seed << '\n';
  }
  return out.str();
}

}  // namespace distsense
