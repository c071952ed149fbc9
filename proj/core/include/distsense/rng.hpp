#pragma once

#include <cstdint>
#include <random>

namespace distsense {

using RngEngine = std::mt19937_64;

/// Derives an independent child seed from (seed, stream index) via a
/// splitmix64 round, so concurrent chains / experiment cells get
/// decorrelated generators without sharing state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform draw strictly inside (0,1). Built from the top 53 bits of the
/// engine output so the stream does not depend on library internals.
inline double uniform01(RngEngine& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

/// Standard normal draw by quantile inversion (one uniform per draw).
double normal_draw(RngEngine& rng);

/// Gamma(shape, rate) draw; Marsaglia-Tsang for shape >= 1 with the usual
/// boost for shape < 1. Exact sampler, deterministic given the engine state.
double gamma_draw(RngEngine& rng, double shape, double rate);

}  // namespace distsense
