#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "distsense/distortion.hpp"
#include "distsense/errors.hpp"

using namespace distsense;

namespace {
const auto kPowerCdf = DistortionFamily::make(DistortionKind::power_cdf);
const auto kPowerSurv = DistortionFamily::make(DistortionKind::power_survival);
const auto kCensorLo = DistortionFamily::make(DistortionKind::censor_lower);
const auto kCensorHi = DistortionFamily::make(DistortionKind::censor_upper);
const auto kSkewing = DistortionFamily::make(DistortionKind::skewing);
}  // namespace

TEST_CASE("distortion name round trip") {
  for (auto kind : {DistortionKind::power_cdf, DistortionKind::power_survival,
                    DistortionKind::censor_lower, DistortionKind::censor_upper,
                    DistortionKind::skewing}) {
    CHECK(distortion_from_name(distortion_name(kind)) == kind);
  }
  CHECK_THROWS_AS(distortion_from_name("power"), ConfigError);
}

TEST_CASE("distort_cdf point values") {
  CHECK(distort_cdf(kPowerCdf, 2.0, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(distort_cdf(kPowerSurv, 3.0, 0.0) == 0.0);
  CHECK(distort_cdf(kCensorHi, 0.5, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(distort_cdf(kCensorLo, 0.5, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(distort_cdf(kCensorLo, 0.5, 0.25) == 0.0);
  CHECK(distort_cdf(kCensorHi, 0.25, 0.5) == 1.0);
}

TEST_CASE("identity at alpha0 is exact on a fine grid") {
  for (const auto& family : {kPowerCdf, kPowerSurv, kCensorLo, kCensorHi}) {
    for (int i = 0; i <= 1000; ++i) {
      const double u = i / 1000.0;
      CHECK(distort_cdf(family, family.alpha0, u) == u);
    }
  }
}

TEST_CASE("distort_cdf is monotone in u") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    double u1 = unif(rng), u2 = unif(rng);
    if (u1 > u2) std::swap(u1, u2);
    const double a_pow = 1.0 + 4.0 * unif(rng);
    const double a_cens = 0.01 + 0.98 * unif(rng);
    CHECK(distort_cdf(kPowerCdf, a_pow, u1) <= distort_cdf(kPowerCdf, a_pow, u2));
    CHECK(distort_cdf(kPowerSurv, a_pow, u1) <= distort_cdf(kPowerSurv, a_pow, u2));
    CHECK(distort_cdf(kCensorLo, a_cens, u1) <= distort_cdf(kCensorLo, a_cens, u2));
    CHECK(distort_cdf(kCensorHi, a_cens, u1) <= distort_cdf(kCensorHi, a_cens, u2));
  }
}

TEST_CASE("distort_cdf boundary conditions h(0)=0, h(1)=1") {
  for (const auto& family : {kPowerCdf, kPowerSurv}) {
    for (double alpha : {1.0, 1.5, 2.0, 7.0}) {
      CHECK(distort_cdf(family, alpha, 0.0) == 0.0);
      CHECK(distort_cdf(family, alpha, 1.0) == 1.0);
    }
  }
  for (double alpha : {0.2, 0.5, 0.9}) {
    CHECK(distort_cdf(kCensorLo, alpha, 0.0) == 0.0);
    CHECK(distort_cdf(kCensorLo, alpha, 1.0) == 1.0);
    CHECK(distort_cdf(kCensorHi, alpha, 0.0) == 0.0);
    CHECK(distort_cdf(kCensorHi, alpha, 1.0) == 1.0);
  }
}

TEST_CASE("distort_cdf rejects bad arguments") {
  CHECK_THROWS_AS(distort_cdf(kPowerCdf, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(distort_cdf(kCensorLo, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(distort_cdf(kCensorHi, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(distort_cdf(kPowerCdf, 2.0, -0.1), DomainError);
  CHECK_THROWS_AS(distort_cdf(kPowerCdf, 2.0, 1.1), DomainError);
  CHECK_THROWS_AS(distort_cdf(kSkewing, 0.1, 0.5), ContractError);
}

TEST_CASE("score closed-form values") {
  const auto expo = Model::exponential();
  const std::vector<double> theta{1.0};

  // F = 1 - e^{-x}: x large makes F = 1, x = -log(1 - 1/e) makes F = 1/e
  CHECK(score(kPowerCdf, {expo, theta, 1000.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(score(kPowerCdf, {expo, theta, 0.45867514538708189}) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // S = e^{-x}
  CHECK(score(kPowerSurv, {expo, theta, 1.0}) == doctest::Approx(0.0).epsilon(1e-14));

  const auto std_normal = Model::normal_known_mean(0.0);
  CHECK(score(kSkewing, {std_normal, std::vector<double>{1.0}, 1.0}) ==
        doctest::Approx(0.79788456080286536).epsilon(1e-13));
}

TEST_CASE("score matches a numerical derivative of log h' for power families") {
  const auto expo = Model::exponential();
  const std::vector<double> theta{1.0};
  const double eps = 1e-5;
  for (int i = 1; i <= 99; ++i) {
    const double u = i / 100.0;
    const double x = expo.quantile(theta, u);
    const double F = expo.cdf(theta, x);
    const double S = expo.survival(theta, x);

    auto log_hp_cdf = [&](double a) { return std::log(a) + (a - 1.0) * std::log(F); };
    auto log_hp_surv = [&](double a) { return std::log(a) + (a - 1.0) * std::log(S); };
    const double fd_cdf = (log_hp_cdf(1.0 + eps) - log_hp_cdf(1.0 - eps)) / (2.0 * eps);
    const double fd_surv = (log_hp_surv(1.0 + eps) - log_hp_surv(1.0 - eps)) / (2.0 * eps);

    CAPTURE(u);
    CHECK(std::fabs(score(kPowerCdf, {expo, theta, x}) - fd_cdf) <= 1e-6);
    CHECK(std::fabs(score(kPowerSurv, {expo, theta, x}) - fd_surv) <= 1e-6);
  }
}

TEST_CASE("censoring scores are constant across observations and models") {
  const auto expo = Model::exponential();
  const auto gam = Model::gamma();
  const std::vector<double> te{0.7};
  const std::vector<double> tg{2.0, 1.5};
  for (double x : {0.1, 0.5, 1.0, 3.0, 20.0}) {
    CHECK(score(kCensorLo, {expo, te, x}) == 1.0);
    CHECK(score(kCensorLo, {gam, tg, x}) == 1.0);
    CHECK(score(kCensorHi, {expo, te, x}) == -1.0);
    CHECK(score(kCensorHi, {gam, tg, x}) == -1.0);
  }
}

TEST_CASE("score error paths") {
  const auto expo = Model::exponential();
  const std::vector<double> theta{1.0};
  // F = 0 at the support boundary
  CHECK_THROWS_AS(score(kPowerCdf, {expo, theta, 0.0}), ScoreUndefinedError);
  CHECK_THROWS_AS(score(kCensorLo, {expo, theta, 0.0}), ScoreUndefinedError);
  // skewing needs the symmetry capability
  CHECK_THROWS_AS(score(kSkewing, {expo, theta, 1.0}), ContractError);
  const auto shifted = Model::normal_known_mean(0.5);
  CHECK_THROWS_AS(score(kSkewing, {shifted, theta, 1.0}), ContractError);
}

TEST_CASE("score_sum closed forms and error indexing") {
  const auto expo = Model::exponential();
  const std::vector<double> theta{1.0};
  Dataset two{{1.0, 1.0}, "test", ""};
  CHECK(score_sum(kPowerSurv, expo, theta, two) == 0.0);

  Dataset five{{0.3, 0.6, 1.0, 2.0, 4.0}, "test", ""};
  CHECK(score_sum(kCensorLo, expo, theta, five) == 5.0);
  CHECK(score_sum(kCensorHi, expo, theta, five) == -5.0);

  Dataset empty{{}, "test", ""};
  CHECK(score_sum(kPowerCdf, expo, theta, empty) == 0.0);

  Dataset bad{{1.0, 0.0, 2.0}, "test", ""};
  try {
    score_sum(kPowerCdf, expo, theta, bad);
    FAIL("expected ScoreUndefinedError");
  } catch (const ScoreUndefinedError& e) {
    CHECK(std::string(e.what()).find("observation 2") != std::string::npos);
  }
}

TEST_CASE("prior_score closed forms") {
  const Prior gamma11{{Distribution{Model::gamma(), {1.0, 1.0}}}};

  // prior cdf ~ 1 far in the right tail
  CHECK(prior_score(kPowerCdf, gamma11, std::vector<double>{1e300}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // prior cdf = e^{-2} at -log(1 - e^{-2})
  CHECK(prior_score(kPowerCdf, gamma11, std::vector<double>{0.14541345786885906}) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  // Gamma(1,1) survival at 1 is e^{-1}
  CHECK(prior_score(kPowerSurv, gamma11, std::vector<double>{1.0}) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // joint cdf of a product prior multiplies the components
  const Prior product{{Distribution{Model::gamma(), {1.0, 1.0}},
                       Distribution{Model::gamma(), {1.0, 1.0}}}};
  CHECK(prior_score(kPowerCdf, product, std::vector<double>{1.0, 1.0}) ==
        doctest::Approx(1.0 - 2.0 * 0.45867514538708189).epsilon(1e-10));

  CHECK(prior_score(kCensorLo, gamma11, std::vector<double>{2.0}) == 1.0);
  CHECK(prior_score(kCensorHi, gamma11, std::vector<double>{2.0}) == -1.0);

  const Prior sym{{Distribution{Model::normal(), {0.0, 10.0}}}};
  CHECK(prior_score(kSkewing, sym, std::vector<double>{2.0}) ==
        doctest::Approx(2.0 * 0.039894228040143268 * 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(prior_score(kSkewing, gamma11, std::vector<double>{2.0}), ContractError);
  CHECK_THROWS_AS(prior_score(kPowerCdf, gamma11, std::vector<double>{1.0, 2.0}), ContractError);
  CHECK_THROWS_AS(prior_score(kPowerCdf, gamma11, std::vector<double>{0.0}), ScoreUndefinedError);
}

TEST_CASE("log distortion weight is zero at alpha0 and matches closed forms") {
  const auto expo = Model::exponential();
  const std::vector<double> theta{1.0};
  for (const auto& family : {kPowerCdf, kPowerSurv, kCensorLo, kCensorHi}) {
    CHECK(log_distortion_weight(family, family.alpha0, expo, theta, 0.7) == 0.0);
  }
  const auto std_normal = Model::normal_known_mean(0.0);
  CHECK(log_distortion_weight(kSkewing, 0.0, std_normal, std::vector<double>{1.0}, 0.9) == 0.0);

  // power-cdf: log alpha + (alpha-1) log F
  const double x = 1.0;
  const double lf = expo.log_cdf(theta, x);
  CHECK(log_distortion_weight(kPowerCdf, 2.0, expo, theta, x) ==
        doctest::Approx(std::log(2.0) + lf).epsilon(1e-14));
  // censor-upper: -log alpha below the kink, -inf above
  CHECK(log_distortion_weight(kCensorHi, 0.9, expo, theta, 0.1) ==
        doctest::Approx(-std::log(0.9)).epsilon(1e-14));
  CHECK(log_distortion_weight(kCensorHi, 0.5, expo, theta, 10.0) ==
        -std::numeric_limits<double>::infinity());
}
