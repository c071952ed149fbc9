#include "distsense/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "distsense/errors.hpp"
#include "distsense/posterior.hpp"

namespace distsense {

namespace {
// type-7 quantile (linear interpolation between order statistics)
double empirical_quantile(std::vector<double> sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = (static_cast<double>(n) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}
}  // namespace

int GFunction::output_dim(int param_dim) const {
  switch (kind) {
    case Kind::identity: return param_dim;
    case Kind::component: return 1;
    case Kind::credible_set: return 1;
  }
  return 0;
}

std::string GFunction::name() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::component: {
      std::ostringstream s;
      s << "component:" << component_index;
      return s.str();
    }
    case Kind::credible_set: {
      std::ostringstream s;
      s << "credible-set:" << credible_gamma;
      return s.str();
    }
  }
  return "?";
}

GFunction parse_gfunction(const std::string& spec) {
  if (spec == "identity") return GFunction::identity();
  if (spec.rfind("component:", 0) == 0) {
    try {
      return GFunction::component(std::stoi(spec.substr(10)));
    } catch (const std::exception&) {
      throw ConfigError("bad g spec: " + spec);
    }
  }
  if (spec.rfind("credible-set:", 0) == 0) {
    try {
      return GFunction::credible_set(std::stod(spec.substr(13)));
    } catch (const std::exception&) {
      throw ConfigError("bad g spec: " + spec);
    }
  }
  throw ConfigError("unknown g spec: " + spec + " (expected identity, component:<j>, credible-set:<gamma>)");
}

std::vector<double> evaluate_g(const GFunction& g, const PosteriorDraws& draws) {
  const int M = draws.M;
  const int k = draws.k;
  switch (g.kind) {
    case GFunction::Kind::identity:
      return draws.draws;
    case GFunction::Kind::component: {
      const int j = g.component_index;
      if (j < 1 || j > k) {
        throw ContractError("g component index " + std::to_string(j) + " outside 1.." +
                            std::to_string(k));
      }
      std::vector<double> out(M);
      for (int m = 0; m < M; ++m) out[m] = draws.draws[static_cast<std::size_t>(m) * k + j - 1];
      return out;
    }
    case GFunction::Kind::credible_set: {
      const double gamma = g.credible_gamma;
      if (!(gamma > 0.0 && gamma < 1.0)) {
        throw DomainError("credible-set gamma must lie in (0,1)");
      }
      std::vector<double> lo(k), hi(k);
      std::vector<double> col(M);
      for (int j = 0; j < k; ++j) {
        for (int m = 0; m < M; ++m) col[m] = draws.draws[static_cast<std::size_t>(m) * k + j];
        std::sort(col.begin(), col.end());
        lo[j] = empirical_quantile(col, gamma / 2.0);
        hi[j] = empirical_quantile(col, 1.0 - gamma / 2.0);
      }
      std::vector<double> out(M);
      for (int m = 0; m < M; ++m) {
        bool inside = true;
        for (int j = 0; j < k; ++j) {
          const double v = draws.draws[static_cast<std::size_t>(m) * k + j];
          if (v < lo[j] || v > hi[j]) {
            inside = false;
            break;
          }
        }
        out[m] = inside ? 1.0 : 0.0;
      }
      return out;
    }
  }
  throw DomainError("unknown g kind");
}

}  // namespace distsense
