#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distsense/dataset.hpp"
#include "distsense/rng.hpp"

namespace distsense {

enum class Family { exponential, gamma, log_normal, normal };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

/// A univariate likelihood family with an explicit free-parameter vector
/// theta.  The normal family may pin its mean (a model symmetric about zero
/// has the mean pinned at 0 and theta = (sigma)).
///
/// Parameterizations: exponential(rate), gamma(shape, rate),
/// log_normal(mu, sigma), normal(mu, sigma).
class Model {
 public:
  static Model exponential();
  static Model gamma();
  static Model log_normal();
  static Model normal();
  static Model normal_known_mean(double mu);

  Family family() const { return family_; }
  int param_dim() const;
  bool has_known_mean() const { return known_mean_.has_value(); }
  double known_mean() const { return *known_mean_; }
  bool symmetric_about_zero() const;
  bool positive_support() const;
  std::string name() const;
  std::vector<std::string> param_names() const;
  /// True when parameter j lives on (0, inf) and samplers should walk log(theta_j).
  bool log_scale_param(int j) const;

  /// Throws DomainError when theta is outside the family's parameter domain.
  void check_theta(std::span<const double> theta) const;

  double log_pdf(std::span<const double> theta, double x) const;
  double pdf(std::span<const double> theta, double x) const;
  double cdf(std::span<const double> theta, double x) const;
  double survival(std::span<const double> theta, double x) const;
  double log_cdf(std::span<const double> theta, double x) const;
  double log_survival(std::span<const double> theta, double x) const;
  double quantile(std::span<const double> theta, double u) const;
  double sample_one(std::span<const double> theta, RngEngine& rng) const;

 private:
  explicit Model(Family f, std::optional<double> known_mean = std::nullopt)
      : family_(f), known_mean_(known_mean) {}
  // normal mean/sigma resolved from theta and the optional pinned mean
  void normal_params(std::span<const double> theta, double& mu, double& sigma) const;

  Family family_;
  std::optional<double> known_mean_;
};

/// Deterministic i.i.d. sample of size n from the model at theta.
Dataset simulate(const Model& model, std::span<const double> theta, int n, std::uint64_t seed);

/// A family with bound parameter values: prior components and data
/// generating processes.
struct Distribution {
  Model model;
  std::vector<double> params;

  double log_pdf(double x) const { return model.log_pdf(params, x); }
  double pdf(double x) const { return model.pdf(params, x); }
  double cdf(double x) const { return model.cdf(params, x); }
  double survival(double x) const { return model.survival(params, x); }
  double log_cdf(double x) const { return model.log_cdf(params, x); }
  double log_survival(double x) const { return model.log_survival(params, x); }
  double quantile(double u) const { return model.quantile(params, u); }
  bool symmetric_about_zero() const;
  std::string spec_string() const;  // "gamma(1,1)"
};

/// Parses "gamma(1,1)", "log-normal(0,1)", "exponential(0.5)", "normal(0,1)".
Distribution parse_distribution(std::string_view spec);

/// Independent product prior: one univariate component per free model
/// parameter.  The joint distribution function is the product of the
/// component distribution functions.
struct Prior {
  std::vector<Distribution> components;

  int dim() const { return static_cast<int>(components.size()); }
  double log_pdf(std::span<const double> theta) const;
  double log_cdf_joint(std::span<const double> theta) const;
  double log_survival_joint(std::span<const double> theta) const;

  /// Documented default priors per fitted family (weakly informative,
  /// respecting parameter support).
  static Prior default_for(const Model& model);
};

/// Componentwise prior distribution function values at theta.
std::vector<double> prior_cdf(const Prior& prior, std::span<const double> theta);

}  // namespace distsense
