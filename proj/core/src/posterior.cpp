#include "distsense/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "distsense/errors.hpp"
#include "distsense/rng.hpp"

namespace distsense {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool conjugate_available(const Model& model, const Prior& prior) {
  return model.family() == Family::exponential && prior.dim() == 1 &&
         prior.components[0].model.family() == Family::gamma;
}

// Moment-based starting point; robust enough for the 1-2 dimensional
// posteriors handled here.
std::vector<double> initial_theta(const Model& model, const Dataset& data) {
  const auto& x = data.values;
  const int n = data.n();
  double mean = data.sum() / n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var = n > 1 ? var / (n - 1) : 0.0;

  switch (model.family()) {
    case Family::exponential: {
      if (!(mean > 0.0)) throw InitError("exponential fit needs positive sample mean");
      return {1.0 / mean};
    }
    case Family::gamma: {
      if (!(mean > 0.0)) throw InitError("gamma fit needs positive sample mean");
      if (!(var > 0.0)) return {1.0, 1.0 / mean};
      const double shape = std::clamp(mean * mean / var, 0.05, 1e4);
      return {shape, shape / mean};
    }
    case Family::log_normal: {
      double lm = 0.0, lv = 0.0;
      for (double v : x) {
        if (!(v > 0.0)) throw InitError("log-normal fit needs positive observations");
        lm += std::log(v);
      }
      lm /= n;
      for (double v : x) lv += (std::log(v) - lm) * (std::log(v) - lm);
      lv = n > 1 ? lv / (n - 1) : 1.0;
      return {lm, std::max(std::sqrt(lv), 0.05)};
    }
    case Family::normal: {
      if (model.has_known_mean()) {
        double s2 = 0.0;
        for (double v : x) s2 += (v - model.known_mean()) * (v - model.known_mean());
        return {std::max(std::sqrt(s2 / n), 1e-8)};
      }
      return {mean, std::max(std::sqrt(var), 1e-8)};
    }
  }
  throw InitError("no initializer for model");
}

struct TransformedTarget {
  const Model& model;
  const Prior& prior;
  const Dataset& data;

  // z_j = log theta_j for positive components, identity otherwise
  std::vector<double> to_theta(std::span<const double> z) const {
    std::vector<double> theta(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
      theta[j] = model.log_scale_param(static_cast<int>(j)) ? std::exp(z[j]) : z[j];
    }
    return theta;
  }
  std::vector<double> to_z(std::span<const double> theta) const {
    std::vector<double> z(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
      z[j] = model.log_scale_param(static_cast<int>(j)) ? std::log(theta[j]) : theta[j];
    }
    return z;
  }

  // log posterior density in z, including the log Jacobian of the transform
  double log_density(std::span<const double> z) const {
    const auto theta = to_theta(z);
    for (double v : theta) {
      if (!std::isfinite(v)) return -kInf;
    }
    double lp = prior.log_pdf(theta);
    if (lp == -kInf) return -kInf;
    for (double x : data.values) {
      lp += model.log_pdf(theta, x);
      if (lp == -kInf) return -kInf;
    }
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (model.log_scale_param(static_cast<int>(j))) lp += z[j];
    }
    return lp;
  }
};

PosteriorDraws sample_conjugate(const Prior& prior, const Dataset& data, int M,
                                std::uint64_t seed) {
  const double a = prior.components[0].params[0];
  const double b = prior.components[0].params[1];
  const ConjugatePosterior post = conjugate_gamma_exponential(a, b, data, 1.0);
  PosteriorDraws out;
  out.M = M;
  out.k = 1;
  out.seed = seed;
  out.sampler = SamplerKind::conjugate_gamma_exponential;
  out.chain_count = 1;
  out.burn_in = 0;
  out.thinning = 1;
  out.draws.resize(M);
  RngEngine rng(derive_seed(seed, 0));
  for (int m = 0; m < M; ++m) out.draws[m] = gamma_draw(rng, post.a_post, post.b_post);
  return out;
}

void run_metropolis_chain(const TransformedTarget& target, std::span<const double> z0,
                          std::vector<double> step, int burn_in, int thinning, int keep,
                          double target_acceptance, RngEngine& rng,
                          std::vector<double>& out_rows, double& post_acceptance) {
  const int k = static_cast<int>(z0.size());
  std::vector<double> z(z0.begin(), z0.end());
  double lp = target.log_density(z);
  if (!std::isfinite(lp)) throw InitError("non-finite log posterior at initialization");

  std::vector<int> acc(k, 0), tries(k, 0);
  long post_acc = 0, post_tries = 0;
  const int sweeps = burn_in + keep * thinning;
  int kept = 0;
  for (int it = 0; it < sweeps; ++it) {
    for (int j = 0; j < k; ++j) {
      const double old = z[j];
      z[j] = old + step[j] * normal_draw(rng);
      const double lpp = target.log_density(z);
      const bool accept = std::log(uniform01(rng)) < lpp - lp;
      if (accept) {
        lp = lpp;
        ++acc[j];
      } else {
        z[j] = old;
      }
      ++tries[j];
      if (it >= burn_in) {
        post_acc += accept;
        ++post_tries;
      }
    }
    // step-size adaptation during burn-in only; frozen afterwards
    if (it < burn_in && (it + 1) % 50 == 0) {
      for (int j = 0; j < k; ++j) {
        const double rate = tries[j] > 0 ? static_cast<double>(acc[j]) / tries[j] : 0.0;
        step[j] *= std::exp(rate - target_acceptance);
        acc[j] = 0;
        tries[j] = 0;
      }
    }
    if (it >= burn_in && (it - burn_in + 1) % thinning == 0 && kept < keep) {
      const auto theta = target.to_theta(z);
      out_rows.insert(out_rows.end(), theta.begin(), theta.end());
      ++kept;
    }
  }
  post_acceptance = post_tries > 0 ? static_cast<double>(post_acc) / post_tries : 0.0;
}

PosteriorDraws sample_metropolis(const Model& model, const Prior& prior, const Dataset& data,
                                 int M, std::uint64_t seed, const SamplerConfig& config) {
  const int k = model.param_dim();
  if (prior.dim() != k) throw ContractError("prior dimension does not match model");
  const TransformedTarget target{model, prior, data};
  const auto theta0 = initial_theta(model, data);
  const auto z0 = target.to_z(theta0);

  std::vector<double> step = config.initial_step.value_or(std::vector<double>(k, 0.5));
  if (static_cast<int>(step.size()) != k) {
    throw ConfigError("initial_step has wrong dimension");
  }

  const int chains = std::max(config.chain_count, 1);
  PosteriorDraws out;
  out.M = M;
  out.k = k;
  out.seed = seed;
  out.sampler = SamplerKind::random_walk_metropolis;
  out.chain_count = chains;
  out.burn_in = config.burn_in;
  out.thinning = std::max(config.thinning, 1);
  out.draws.reserve(static_cast<std::size_t>(M) * k);

  double acc_sum = 0.0;
  for (int c = 0; c < chains; ++c) {
    const int keep = M / chains + (c < M % chains ? 1 : 0);
    if (keep == 0) continue;
    RngEngine rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    double acc = 0.0;
    run_metropolis_chain(target, z0, step, config.burn_in, out.thinning, keep,
                         config.target_acceptance, rng, out.draws, acc);
    acc_sum += acc * keep;
  }
  out.acceptance_rate = acc_sum / M;
  if (*out.acceptance_rate < 0.05 || *out.acceptance_rate > 0.95) {
    std::ostringstream w;
    w << "metropolis acceptance rate " << *out.acceptance_rate
      << " outside [0.05, 0.95] after adaptation";
    out.warnings.push_back(w.str());
  }
  return out;
}

}  // namespace

std::string_view sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::conjugate_gamma_exponential: return "conjugate-gamma-exponential";
    case SamplerKind::random_walk_metropolis: return "random-walk-metropolis";
  }
  return "?";
}

ConjugatePosterior conjugate_gamma_exponential(double a, double b, const Dataset& data,
                                               double alpha) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("conjugate_gamma_exponential: hyperparameters must be positive");
  }
  if (!(alpha >= 1.0)) {
    throw DomainError("conjugate_gamma_exponential: alpha must be >= 1");
  }
  for (double x : data.values) {
    if (!(x >= 0.0)) throw DomainError("exponential data must be non-negative");
  }
  return {a + data.n(), b + alpha * data.sum()};
}

double PosteriorDraws::component_mean(int j) const {
  double s = 0.0;
  for (int m = 0; m < M; ++m) s += draws[static_cast<std::size_t>(m) * k + j];
  return s / M;
}

PosteriorDraws sample_posterior(const Model& model, const Prior& prior, const Dataset& data,
                                int M, std::uint64_t seed, const SamplerConfig& config) {
  if (M < 2) throw DomainError("sample_posterior: M must be >= 2");
  if (data.n() < 1) throw DomainError("sample_posterior: data must be non-empty");
  if (prior.dim() != model.param_dim()) {
    throw ContractError("prior dimension does not match model parameter dimension");
  }

  const bool conjugate = conjugate_available(model, prior);
  switch (config.force) {
    case SamplerConfig::Force::conjugate:
      if (!conjugate) throw ConfigError("conjugate sampler requested but not available");
      return sample_conjugate(prior, data, M, seed);
    case SamplerConfig::Force::metropolis:
      return sample_metropolis(model, prior, data, M, seed, config);
    case SamplerConfig::Force::automatic:
      break;
  }
  return conjugate ? sample_conjugate(prior, data, M, seed)
                   : sample_metropolis(model, prior, data, M, seed, config);
}

ReweightedExpectation distorted_expectation_reweighted(const PosteriorDraws& draws,
                                                       const Model& model, const Dataset& data,
                                                       const DistortionFamily& family,
                                                       double alpha, const GFunction& g) {
  const int M = draws.M;
  const int s = g.output_dim(draws.k);
  const auto g_values = evaluate_g(g, draws);

  std::vector<double> log_w(M);
  double max_lw = -kInf;
  for (int m = 0; m < M; ++m) {
    double lw = 0.0;
    const auto theta = draws.row(m);
    for (double x : data.values) {
      lw += log_distortion_weight(family, alpha, model, theta, x);
      if (lw == -kInf) break;
    }
    if (std::isnan(lw)) {
      throw DegenerateWeightsError("non-finite reweighting term at draw " + std::to_string(m + 1));
    }
    log_w[m] = lw;
    max_lw = std::max(max_lw, lw);
  }
  if (!std::isfinite(max_lw)) {
    throw DegenerateWeightsError("all reweighting weights are zero");
  }

  ReweightedExpectation out;
  out.value.assign(s, 0.0);
  double wsum = 0.0, w2sum = 0.0;
  for (int m = 0; m < M; ++m) {
    const double w = std::exp(log_w[m] - max_lw);
    wsum += w;
    w2sum += w * w;
    for (int j = 0; j < s; ++j) out.value[j] += w * g_values[static_cast<std::size_t>(m) * s + j];
  }
  if (!(wsum > 0.0)) throw DegenerateWeightsError("reweighting weights sum to zero");
  for (int j = 0; j < s; ++j) out.value[j] /= wsum;
  out.effective_sample_size = wsum * wsum / w2sum;
  if (out.effective_sample_size < 10.0) {
    std::ostringstream w;
    w << "effective sample size " << out.effective_sample_size << " below 10";
    out.warnings.push_back(w.str());
  }
  return out;
}

}  // namespace distsense
