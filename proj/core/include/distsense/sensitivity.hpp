#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distsense/dataset.hpp"
#include "distsense/distortion.hpp"
#include "distsense/gfunction.hpp"
#include "distsense/models.hpp"
#include "distsense/posterior.hpp"

namespace distsense {

/// Which component of the Bayesian model the distortion is applied to.
enum class Mode { likelihood, prior, double_distortion };

std::string_view mode_name(Mode mode);
Mode mode_from_name(std::string_view name);

struct Interval {
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
};

/// Local-sensitivity estimate per component of g, with its normalization,
/// Cauchy-Schwarz bound, Monte Carlo standard error and (where the sampling
/// theory provides one) an asymptotic confidence interval.
struct SensitivityReport {
  Mode mode = Mode::likelihood;
  DistortionFamily family = DistortionFamily::make(DistortionKind::power_cdf);
  std::vector<double> delta;
  std::vector<double> delta_normalized;        // NaN where flagged undefined
  std::vector<std::uint8_t> normalized_defined;
  std::vector<double> cs_bound;
  std::vector<double> std_error;
  std::vector<std::optional<Interval>> ci_95;
  double delta_euclidean_norm = 0.0;
  int M = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

/// delta[j] = sample covariance over the draws between g_j(theta) and the
/// distortion statistic T(theta): the summed observation score for
/// Mode::likelihood, the prior score for Mode::prior, their sum for
/// Mode::double_distortion.
SensitivityReport estimate_delta(const PosteriorDraws& draws, const Model& model,
                                 const Prior& prior, const Dataset& data,
                                 const DistortionFamily& family, const GFunction& g, Mode mode);

struct FiniteDifferenceCheck {
  std::vector<double> delta_fd;
  std::vector<double> delta_cov;
};

/// Central finite difference of the reweighted distorted expectation at
/// alpha0 +- epsilon (same draws on both sides) next to the covariance
/// estimate; the two must agree for the derivative identity to hold.
FiniteDifferenceCheck finite_difference_check(const PosteriorDraws& draws, const Model& model,
                                              const Dataset& data, const DistortionFamily& family,
                                              const GFunction& g, double epsilon);

/// delta_hat +- z_(1+level)/2 * theta_hat / sqrt(n).  Valid for the
/// gamma-exponential survival-power case, where the asymptotic variance is
/// theta0^2 with theta_hat plugged in.
Interval clt_interval(double delta_hat, double theta_hat, int n, double level);

/// Whether clt_interval applies to this combination.
bool clt_interval_available(const Model& model, const DistortionFamily& family, Mode mode,
                            const GFunction& g);

/// Standard error of the sample covariance between g and t via
/// non-overlapping batch means; tolerates autocorrelated sampler output.
double mc_standard_error(std::span<const double> g_values, std::span<const double> t_values,
                         int batches = 20);

/// Distortion statistic T evaluated at every draw (one value per draw).
std::vector<double> statistic_values(const PosteriorDraws& draws, const Model& model,
                                     const Prior& prior, const Dataset& data,
                                     const DistortionFamily& family, Mode mode);

std::string to_json(const SensitivityReport& report);
std::string report_csv_header();
/// One CSV row per g component, matching report_csv_header().
std::string to_csv_rows(const SensitivityReport& report);

namespace stats {
double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);
double sample_covariance(std::span<const double> a, std::span<const double> b);
}  // namespace stats

}  // namespace distsense
