#pragma once

#include <span>
#include <string>
#include <string_view>

#include "distsense/dataset.hpp"
#include "distsense/models.hpp"

namespace distsense {

/// The distortion families driving the sensitivity diagnostics.
///
///   power_cdf       h_a(y) = y^a                      (a > 1, identity at 1)
///   power_survival  h_a(y) = 1 - (1-y)^a              (a > 1, identity at 1)
///   censor_lower    h_a(y) = max((y-a)/(1-a), 0)      (a in (0,1), identity at 0)
///   censor_upper    h_a(y) = min(y/a, 1)              (a in (0,1), identity at 1)
///   skewing         model-dependent map inducing Azzalini-type skewness
///                   (identity at 0)
enum class DistortionKind { power_cdf, power_survival, censor_lower, censor_upper, skewing };

std::string_view distortion_name(DistortionKind kind);
DistortionKind distortion_from_name(std::string_view name);

/// A parameterized distortion h_alpha with its identity point alpha0.
struct DistortionFamily {
  DistortionKind kind;
  double alpha0;
  std::string description;

  static DistortionFamily make(DistortionKind kind);
};

/// h_alpha(u) for the model-free families.  Exactly u at alpha == alpha0.
/// The skewing map depends on the model and is rejected here.
double distort_cdf(const DistortionFamily& family, double alpha, double u);

/// Inputs for one per-observation score term.
struct ScoreContext {
  const Model& model;
  std::span<const double> theta;
  double observation;
};

/// Per-observation score d/dalpha log h'_alpha at alpha0:
///   power_cdf       1 + log F_X(x|theta)
///   power_survival  1 + log S_X(x|theta)
///   censor_lower    +1   (constant; the covariance annihilates it)
///   censor_upper    -1
///   skewing         2 f_X(0|theta) x   (model must be symmetric about 0)
double score(const DistortionFamily& family, const ScoreContext& ctx);

/// Sum of per-observation scores over the dataset.
double score_sum(const DistortionFamily& family, const Model& model,
                 std::span<const double> theta, const Dataset& data);

/// Single score term built from the joint prior distribution function,
/// e.g. power_cdf -> 1 + log F_prior(theta).
double prior_score(const DistortionFamily& family, const Prior& prior,
                   std::span<const double> theta);

/// log h'_alpha(F_X(x|theta)): the per-observation reweighting term for
/// distorted-posterior expectations.  Intended for alpha near alpha0;
/// exactly 0 at alpha == alpha0.
double log_distortion_weight(const DistortionFamily& family, double alpha,
                             const Model& model, std::span<const double> theta, double x);

}  // namespace distsense
