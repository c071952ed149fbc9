#pragma once

#include <string>
#include <vector>

namespace distsense {

struct PosteriorDraws;

/// The posterior functional g(theta) whose sensitivity is measured.
struct GFunction {
  enum class Kind { identity, component, credible_set };

  Kind kind = Kind::identity;
  int component_index = 1;      // 1-based, Kind::component only
  double credible_gamma = 0.05; // Kind::credible_set only

  static GFunction identity() { return {}; }
  static GFunction component(int j) { return {Kind::component, j, 0.05}; }
  static GFunction credible_set(double gamma) { return {Kind::credible_set, 1, gamma}; }

  int output_dim(int param_dim) const;
  std::string name() const;  // "identity", "component:2", "credible-set:0.05"
};

GFunction parse_gfunction(const std::string& spec);

/// M x s row-major matrix of g evaluated at every draw.  The credible-set
/// indicator uses the equal-tailed (1-gamma) region computed from these
/// same draws (componentwise empirical quantiles).
std::vector<double> evaluate_g(const GFunction& g, const PosteriorDraws& draws);

}  // namespace distsense
