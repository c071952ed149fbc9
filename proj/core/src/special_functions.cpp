#include "distsense/special_functions.hpp"

#include <cmath>
#include <limits>

#include "distsense/errors.hpp"

namespace distsense::special {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIter = 100000;

// log of the prefactor x^a e^{-x} / Gamma(a) shared by both expansions.
double log_prefactor(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

// Lower series: P(a,x) = prefac / a * sum, converges for x < a + 1.
// Returns log P.
double log_gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) {
      return log_prefactor(a, x) + std::log(sum);
    }
  }
  throw DomainError("incomplete gamma series did not converge");
}

// Lentz continued fraction for Q(a,x), converges for x >= a + 1.
// Returns log Q.
double log_gamma_q_cf(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() / 1e-16;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      return log_prefactor(a, x) + std::log(h);
    }
  }
  throw DomainError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: shape must be positive");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be non-negative");
}

}  // namespace

double gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return std::exp(log_gamma_p_series(a, x));
  return -std::expm1(log_gamma_q_cf(a, x));
}

double gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return -std::expm1(log_gamma_p_series(a, x));
  return std::exp(log_gamma_q_cf(a, x));
}

double log_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return -kInf;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return log_gamma_p_series(a, x);
  const double lq = log_gamma_q_cf(a, x);
  // Q can round to >= 1 only if x barely exceeds a+1 and P is ~0.5; safe.
  return std::log1p(-std::exp(lq));
}

double log_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -kInf;
  if (x < a + 1.0) return std::log1p(-std::exp(log_gamma_p_series(a, x)));
  return log_gamma_q_cf(a, x);
}

double gamma_p_inverse(double a, double p) {
  if (!(a > 0.0)) throw DomainError("gamma_p_inverse: shape must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("gamma_p_inverse: p outside [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return kInf;

  const double gln = std::lgamma(a);
  const double a1 = a - 1.0;
  const double lna1 = a > 1.0 ? std::log(a1) : 0.0;
  const double afac = a > 1.0 ? std::exp(a1 * (lna1 - 1.0) - gln) : 0.0;

  double x;
  if (a > 1.0) {
    // Wilson-Hilferty start.
    const double z = normal_quantile(p);
    const double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    x = a * t * t * t;
    if (x <= 0.0) x = 1e-3;
  } else {
    const double t = 1.0 - a * (0.253 + a * 0.12);
    if (p < t) {
      x = std::pow(p / t, 1.0 / a);
    } else {
      x = 1.0 - std::log(1.0 - (p - t) / (1.0 - t));
    }
  }

  // Halley iterations on P(a,x) - p.
  for (int it = 0; it < 20; ++it) {
    if (x <= 0.0) return 0.0;
    const double err = gamma_p(a, x) - p;
    double t;
    if (a > 1.0) {
      t = afac * std::exp(-(x - a1) + a1 * (std::log(x) - lna1));
    } else {
      t = std::exp(-x + a1 * std::log(x) - gln);
    }
    if (t == 0.0) break;
    const double u = err / t;
    const double step = u / (1.0 - 0.5 * std::fmin(1.0, u * (a1 / x - 1.0)));
    x -= step;
    if (x <= 0.0) x = 0.5 * (x + step);
    if (std::fabs(step) < 1e-13 * x) break;
  }
  return x;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double log_normal_cdf(double z) {
  if (std::isnan(z)) throw DomainError("log_normal_cdf: nan argument");
  if (z > 0.0) {
    return std::log1p(-normal_cdf(-z));
  }
  if (z >= -35.0) {
    return std::log(normal_cdf(z));
  }
  // Mills-ratio asymptotic: Phi(z) = phi(z)/|z| (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...)
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * M_PI) + std::log(series);
}

double normal_quantile(double p) {
  // Wichura (1988), algorithm AS 241, PPND16.
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    throw DomainError("normal_quantile: p outside (0,1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -z : z;
}

}  // namespace distsense::special
