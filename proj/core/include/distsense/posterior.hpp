#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distsense/dataset.hpp"
#include "distsense/distortion.hpp"
#include "distsense/gfunction.hpp"
#include "distsense/models.hpp"

namespace distsense {

enum class SamplerKind { conjugate_gamma_exponential, random_walk_metropolis };

std::string_view sampler_name(SamplerKind kind);

/// Gamma(a_post, b_post) posterior of the exponential rate under a Gamma(a,b)
/// prior, with the likelihood optionally distorted through the survival power
/// map (alpha = 1 gives the ordinary posterior).
struct ConjugatePosterior {
  double a_post;
  double b_post;

  double mean() const { return a_post / b_post; }
  double variance() const { return a_post / (b_post * b_post); }
};

ConjugatePosterior conjugate_gamma_exponential(double a, double b, const Dataset& data,
                                               double alpha);

struct SamplerConfig {
  enum class Force { automatic, conjugate, metropolis };

  int burn_in = 5000;
  int thinning = 1;
  int chain_count = 1;
  double target_acceptance = 0.35;
  // per-component initial proposal sd on the transformed (log) scale
  std::optional<std::vector<double>> initial_step;
  Force force = Force::automatic;
};

/// Ordered draws from the non-distorted posterior with provenance metadata.
/// Immutable after construction; safe to share read-only across threads.
struct PosteriorDraws {
  std::vector<double> draws;  // M x k, row-major
  int M = 0;
  int k = 0;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::conjugate_gamma_exponential;
  int chain_count = 1;
  std::optional<double> acceptance_rate;  // Metropolis only
  int burn_in = 0;
  int thinning = 1;
  std::vector<std::string> warnings;

  std::span<const double> row(int m) const {
    return std::span<const double>(draws.data() + static_cast<std::size_t>(m) * k, k);
  }
  double component_mean(int j) const;
};

/// Draws M samples from the posterior of model parameters given the prior and
/// data.  Uses the exact conjugate sampler for an exponential likelihood with
/// a Gamma prior, random-walk Metropolis otherwise (componentwise Gaussian
/// proposals on log-transformed positive parameters, step sizes adapted
/// during burn-in and frozen afterwards).
PosteriorDraws sample_posterior(const Model& model, const Prior& prior, const Dataset& data,
                                int M, std::uint64_t seed, const SamplerConfig& config = {});

struct ReweightedExpectation {
  std::vector<double> value;  // one entry per g component
  double effective_sample_size = 0.0;
  std::vector<std::string> warnings;
};

/// Self-normalized estimate of the distorted-posterior expectation of g at
/// the given alpha, from ordinary posterior draws.  Per-draw log weights are
/// accumulated in log space and max-shifted before exponentiation.
ReweightedExpectation distorted_expectation_reweighted(const PosteriorDraws& draws,
                                                       const Model& model, const Dataset& data,
                                                       const DistortionFamily& family,
                                                       double alpha, const GFunction& g);

}  // namespace distsense
