#include "distsense/rng.hpp"

#include <cmath>

#include "distsense/errors.hpp"
#include "distsense/special_functions.hpp"

namespace distsense {

double normal_draw(RngEngine& rng) {
  return special::normal_quantile(uniform01(rng));
}

double gamma_draw(RngEngine& rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw DomainError("gamma_draw: shape and rate must be positive");
  }
  if (shape < 1.0) {
    const double u = uniform01(rng);
    return gamma_draw(rng, shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal_draw(rng);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01(rng);
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
      return d * v / rate;
    }
  }
}

}  // namespace distsense
