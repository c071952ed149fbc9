#pragma once

namespace distsense::special {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series/continued-fraction evaluation, relative accuracy ~1e-14 for
/// moderate a; at least 1e-10 across the supported range.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// log P(a, x), stable in the far left tail where P underflows.
double log_gamma_p(double a, double x);

/// log Q(a, x), stable in the far right tail.
double log_gamma_q(double a, double x);

/// Inverse of P(a, .): the x with P(a, x) = p. p in [0, 1].
double gamma_p_inverse(double a, double p);

/// Standard normal distribution function.
double normal_cdf(double z);

/// log of the standard normal distribution function; asymptotic expansion
/// in the far left tail where erfc underflows.
double log_normal_cdf(double z);

/// Standard normal quantile (Wichura's AS 241, double precision).
double normal_quantile(double p);

}  // namespace distsense::special
