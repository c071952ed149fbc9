#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "distsense/errors.hpp"
#include "distsense/posterior.hpp"
#include "distsense/special_functions.hpp"

using namespace distsense;

namespace {
const Prior kGamma11{{Distribution{Model::gamma(), {1.0, 1.0}}}};
const Dataset kTwoOnes{{1.0, 1.0}, "test", ""};
}  // namespace

TEST_CASE("conjugate posterior closed form") {
  const auto post = conjugate_gamma_exponential(1.0, 1.0, kTwoOnes, 1.0);
  CHECK(post.a_post == 3.0);
  CHECK(post.b_post == 3.0);
  CHECK(post.mean() == doctest::Approx(1.0));

  const auto distorted = conjugate_gamma_exponential(1.0, 1.0, kTwoOnes, 2.0);
  CHECK(distorted.a_post == 3.0);
  CHECK(distorted.b_post == 5.0);
  CHECK(distorted.mean() == doctest::Approx(0.6));

  const Dataset empty{{}, "test", ""};
  const auto prior_only = conjugate_gamma_exponential(2.0, 3.0, empty, 1.0);
  CHECK(prior_only.a_post == 2.0);
  CHECK(prior_only.b_post == 3.0);

  CHECK_THROWS_AS(conjugate_gamma_exponential(0.0, 1.0, kTwoOnes, 1.0), DomainError);
  CHECK_THROWS_AS(conjugate_gamma_exponential(1.0, -1.0, kTwoOnes, 1.0), DomainError);
  CHECK_THROWS_AS(conjugate_gamma_exponential(1.0, 1.0, kTwoOnes, 0.5), DomainError);
}

TEST_CASE("conjugate sampler: exact moments and determinism") {
  const int M = 100000;
  const auto draws = sample_posterior(Model::exponential(), kGamma11, kTwoOnes, M, 42);
  CHECK(draws.M == M);
  CHECK(draws.k == 1);
  CHECK(draws.sampler == SamplerKind::conjugate_gamma_exponential);

  // posterior is Gamma(3,3): mean 1, sd sqrt(3)/3
  const double sd = std::sqrt(3.0) / 3.0;
  const double mean = draws.component_mean(0);
  CHECK(std::fabs(mean - 1.0) <= 3.0 * sd / std::sqrt(static_cast<double>(M)));

  double var = 0.0;
  for (int m = 0; m < M; ++m) {
    var += (draws.draws[m] - mean) * (draws.draws[m] - mean);
  }
  var /= (M - 1);
  // Var(s^2) ~ (mu4 - sigma^4)/M with mu4 = 3 a (a+2) / b^4 for Gamma(a,b)
  const double mu4 = 3.0 * 3.0 * 5.0 / 81.0;
  const double se_var = std::sqrt((mu4 - sd * sd * sd * sd) / M);
  CHECK(std::fabs(var - sd * sd) <= 4.0 * se_var);

  const auto again = sample_posterior(Model::exponential(), kGamma11, kTwoOnes, M, 42);
  CHECK(draws.draws == again.draws);

  CHECK_THROWS_AS(sample_posterior(Model::exponential(), kGamma11, kTwoOnes, 1, 42), DomainError);
  const Dataset empty{{}, "test", ""};
  CHECK_THROWS_AS(sample_posterior(Model::exponential(), kGamma11, empty, 100, 42), DomainError);
}

TEST_CASE("metropolis agrees with the conjugate posterior") {
  SamplerConfig config;
  config.force = SamplerConfig::Force::metropolis;
  const auto data = simulate(Model::exponential(), std::vector<double>{1.0}, 20, 11);
  const auto analytic = conjugate_gamma_exponential(1.0, 1.0, data, 1.0);

  const auto draws = sample_posterior(Model::exponential(), kGamma11, data, 10000, 17, config);
  CHECK(draws.sampler == SamplerKind::random_walk_metropolis);
  REQUIRE(draws.acceptance_rate.has_value());
  CHECK(*draws.acceptance_rate > 0.15);
  CHECK(*draws.acceptance_rate < 0.60);
  CHECK(std::fabs(draws.component_mean(0) - analytic.mean()) <= 0.02 * analytic.mean());

  const auto again = sample_posterior(Model::exponential(), kGamma11, data, 10000, 17, config);
  CHECK(draws.draws == again.draws);
}

TEST_CASE("metropolis draws pass a KS test against the analytic posterior") {
  SamplerConfig config;
  config.force = SamplerConfig::Force::metropolis;
  config.thinning = 10;  // near-independent draws
  const auto data = simulate(Model::exponential(), std::vector<double>{1.0}, 20, 3);
  const auto analytic = conjugate_gamma_exponential(1.0, 1.0, data, 1.0);

  const int M = 10000;
  auto draws = sample_posterior(Model::exponential(), kGamma11, data, M, 29, config);
  std::sort(draws.draws.begin(), draws.draws.end());
  double ks = 0.0;
  for (int i = 0; i < M; ++i) {
    const double c = special::gamma_p(analytic.a_post, analytic.b_post * draws.draws[i]);
    ks = std::max(ks, std::max(c - static_cast<double>(i) / M,
                               static_cast<double>(i + 1) / M - c));
  }
  CHECK(ks < 1.9495 / std::sqrt(static_cast<double>(M)));
}

TEST_CASE("metropolis handles two-parameter models and multiple chains") {
  const auto data = simulate(Model::gamma(), std::vector<double>{2.0, 1.0}, 60, 8);
  SamplerConfig config;
  config.chain_count = 2;
  const auto prior = Prior::default_for(Model::gamma());
  const auto draws = sample_posterior(Model::gamma(), prior, data, 4000, 5, config);
  CHECK(draws.M == 4000);
  CHECK(draws.k == 2);
  CHECK(draws.chain_count == 2);
  // rough location check: posterior concentrates near the truth at n=60
  CHECK(draws.component_mean(0) > 1.0);
  CHECK(draws.component_mean(0) < 3.5);
  CHECK(draws.component_mean(1) > 0.3);
  CHECK(draws.component_mean(1) < 2.5);
}

TEST_CASE("metropolis initialization failure") {
  const Dataset negatives{{-1.0, 2.0, 3.0}, "test", ""};
  SamplerConfig config;
  config.force = SamplerConfig::Force::metropolis;
  const auto prior = Prior::default_for(Model::log_normal());
  CHECK_THROWS_AS(
      sample_posterior(Model::log_normal(), prior, negatives, 500, 1, config), InitError);
}

TEST_CASE("reweighted expectation: unit weights at alpha0 are bit exact") {
  const auto draws = sample_posterior(Model::exponential(), kGamma11, kTwoOnes, 5000, 99);
  const auto family = DistortionFamily::make(DistortionKind::power_survival);
  const auto r = distorted_expectation_reweighted(draws, Model::exponential(), kTwoOnes, family,
                                                  family.alpha0, GFunction::identity());
  double plain = 0.0;
  for (int m = 0; m < draws.M; ++m) plain += draws.draws[m];
  plain /= draws.M;
  CHECK(r.value[0] == plain);
  CHECK(r.effective_sample_size == doctest::Approx(draws.M));
}

TEST_CASE("reweighted expectation matches the distorted conjugate closed form") {
  const int M = 20000;
  const auto draws = sample_posterior(Model::exponential(), kGamma11, kTwoOnes, M, 123);
  const auto family = DistortionFamily::make(DistortionKind::power_survival);
  const double alpha = 1.5;
  const auto r = distorted_expectation_reweighted(draws, Model::exponential(), kTwoOnes, family,
                                                  alpha, GFunction::identity());
  // exact distorted posterior is Gamma(3, 1 + 1.5 * 2): mean 0.75
  const double expected = 3.0 / 4.0;

  // batch-mean standard error of the self-normalized estimator
  const int B = 20, len = M / B;
  std::vector<double> batch(B);
  for (int b = 0; b < B; ++b) {
    double num = 0.0, den = 0.0;
    for (int i = b * len; i < (b + 1) * len; ++i) {
      const double theta = draws.draws[i];
      const double w = std::exp(std::log(alpha) * 2 + (alpha - 1.0) * (-theta * 2.0));
      num += w * theta;
      den += w;
    }
    batch[b] = num / den;
  }
  double bm = 0.0, bs = 0.0;
  for (double v : batch) bm += v;
  bm /= B;
  for (double v : batch) bs += (v - bm) * (v - bm);
  const double se = std::sqrt(bs / (B - 1) / B);

  CHECK(std::fabs(r.value[0] - expected) <= 3.0 * se);
}

TEST_CASE("reweighted expectation of a constant is exactly one") {
  const auto draws = sample_posterior(Model::exponential(), kGamma11, kTwoOnes, 2000, 7);
  const auto family = DistortionFamily::make(DistortionKind::power_survival);
  // a credible set with negligible gamma covers every draw, so g == 1
  const auto r = distorted_expectation_reweighted(draws, Model::exponential(), kTwoOnes, family,
                                                  1.2, GFunction::credible_set(1e-9));
  CHECK(r.value[0] == 1.0);
}

TEST_CASE("reweighted expectation degenerate weights") {
  const auto draws = sample_posterior(Model::exponential(), kGamma11, kTwoOnes, 500, 21);
  const auto censor = DistortionFamily::make(DistortionKind::censor_upper);
  // alpha so small that F(x|theta) > alpha for every draw: all weights vanish
  CHECK_THROWS_AS(distorted_expectation_reweighted(draws, Model::exponential(), kTwoOnes, censor,
                                                   1e-9, GFunction::identity()),
                  DegenerateWeightsError);
}

TEST_CASE("reweighted expectation warns on tiny effective sample size") {
  const auto data = simulate(Model::exponential(), std::vector<double>{1.0}, 200, 31);
  const auto draws = sample_posterior(Model::exponential(), kGamma11, data, 4000, 32);
  const auto family = DistortionFamily::make(DistortionKind::power_cdf);
  // far from alpha0 the weights collapse onto a handful of draws
  const auto r = distorted_expectation_reweighted(draws, Model::exponential(), data, family, 3.0,
                                                  GFunction::identity());
  CHECK(r.effective_sample_size < 10.0);
  REQUIRE_FALSE(r.warnings.empty());
  CHECK(r.warnings[0].find("effective sample size") != std::string::npos);
}
