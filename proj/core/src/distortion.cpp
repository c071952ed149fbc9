#include "distsense/distortion.hpp"

#include <cmath>
#include <limits>

#include "distsense/errors.hpp"

namespace distsense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha_admissible(const DistortionFamily& family, double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  switch (family.kind) {
    case DistortionKind::power_cdf:
    case DistortionKind::power_survival:
      // admissible alpha > 1; alpha == 1 is the identity limit
      if (alpha < 1.0) throw DomainError("power distortion requires alpha >= 1");
      return;
    case DistortionKind::censor_lower:
      if (alpha < 0.0 || alpha >= 1.0) {
        throw DomainError("lower censoring requires alpha in [0,1)");
      }
      return;
    case DistortionKind::censor_upper:
      if (alpha <= 0.0 || alpha > 1.0) {
        throw DomainError("upper censoring requires alpha in (0,1]");
      }
      return;
    case DistortionKind::skewing:
      return;
  }
}
}  // namespace

std::string_view distortion_name(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::power_cdf: return "power-cdf";
    case DistortionKind::power_survival: return "power-survival";
    case DistortionKind::censor_lower: return "censor-lower";
    case DistortionKind::censor_upper: return "censor-upper";
    case DistortionKind::skewing: return "skewing";
  }
  return "?";
}

DistortionKind distortion_from_name(std::string_view name) {
  if (name == "power-cdf") return DistortionKind::power_cdf;
  if (name == "power-survival") return DistortionKind::power_survival;
  if (name == "censor-lower") return DistortionKind::censor_lower;
  if (name == "censor-upper") return DistortionKind::censor_upper;
  if (name == "skewing") return DistortionKind::skewing;
  throw ConfigError("unknown distortion family: " + std::string(name));
}

DistortionFamily DistortionFamily::make(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::power_cdf:
      return {kind, 1.0, "power distortion of the distribution function"};
    case DistortionKind::power_survival:
      return {kind, 1.0, "power distortion of the survival function"};
    case DistortionKind::censor_lower:
      return {kind, 0.0, "lower-tail censoring distortion"};
    case DistortionKind::censor_upper:
      return {kind, 1.0, "upper-tail censoring distortion"};
    case DistortionKind::skewing:
      return {kind, 0.0, "skewing distortion"};
  }
  throw DomainError("unknown distortion kind");
}

double distort_cdf(const DistortionFamily& family, double alpha, double u) {
  if (family.kind == DistortionKind::skewing) {
    throw ContractError("skewing distortion has no model-free cdf map");
  }
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("distort_cdf: u outside [0,1]");
  check_alpha_admissible(family, alpha);
  if (alpha == family.alpha0) return u;
  switch (family.kind) {
    case DistortionKind::power_cdf:
      return std::pow(u, alpha);
    case DistortionKind::power_survival:
      return 1.0 - std::pow(1.0 - u, alpha);
    case DistortionKind::censor_lower:
      return std::fmax((u - alpha) / (1.0 - alpha), 0.0);
    case DistortionKind::censor_upper:
      return std::fmin(u / alpha, 1.0);
    case DistortionKind::skewing:
      break;
  }
  throw DomainError("unknown distortion kind");
}

double score(const DistortionFamily& family, const ScoreContext& ctx) {
  switch (family.kind) {
    case DistortionKind::power_cdf: {
      const double lf = ctx.model.log_cdf(ctx.theta, ctx.observation);
      if (lf == -kInf) {
        throw ScoreUndefinedError("power-cdf score undefined: F_X(x|theta) = 0");
      }
      return 1.0 + lf;
    }
    case DistortionKind::power_survival: {
      const double ls = ctx.model.log_survival(ctx.theta, ctx.observation);
      if (ls == -kInf) {
        throw ScoreUndefinedError("power-survival score undefined: S_X(x|theta) = 0");
      }
      return 1.0 + ls;
    }
    case DistortionKind::censor_lower:
      if (ctx.model.cdf(ctx.theta, ctx.observation) <= 0.0) {
        throw ScoreUndefinedError("censor-lower score undefined: F_X(x|theta) = 0");
      }
      return 1.0;
    case DistortionKind::censor_upper:
      if (ctx.model.survival(ctx.theta, ctx.observation) <= 0.0) {
        throw ScoreUndefinedError("censor-upper score undefined: S_X(x|theta) = 0");
      }
      return -1.0;
    case DistortionKind::skewing: {
      if (!ctx.model.symmetric_about_zero()) {
        throw ContractError("skewing score requires a model symmetric about zero");
      }
      return 2.0 * ctx.model.pdf(ctx.theta, 0.0) * ctx.observation;
    }
  }
  throw DomainError("unknown distortion kind");
}

double score_sum(const DistortionFamily& family, const Model& model,
                 std::span<const double> theta, const Dataset& data) {
  double total = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    try {
      total += score(family, ScoreContext{model, theta, data.values[i]});
    } catch (const ScoreUndefinedError& e) {
      throw ScoreUndefinedError("observation " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return total;
}

double prior_score(const DistortionFamily& family, const Prior& prior,
                   std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != prior.dim()) {
    throw ContractError("prior_score: theta dimension does not match prior");
  }
  switch (family.kind) {
    case DistortionKind::power_cdf: {
      const double lc = prior.log_cdf_joint(theta);
      if (lc == -kInf) {
        throw ScoreUndefinedError("power-cdf prior score undefined: F_prior(theta) = 0");
      }
      return 1.0 + lc;
    }
    case DistortionKind::power_survival: {
      const double ls = prior.log_survival_joint(theta);
      if (ls == -kInf) {
        throw ScoreUndefinedError("power-survival prior score undefined: S_prior(theta) = 0");
      }
      return 1.0 + ls;
    }
    case DistortionKind::censor_lower:
      if (prior.log_cdf_joint(theta) == -kInf) {
        throw ScoreUndefinedError("censor-lower prior score undefined: F_prior(theta) = 0");
      }
      return 1.0;
    case DistortionKind::censor_upper:
      if (prior.log_survival_joint(theta) == -kInf) {
        throw ScoreUndefinedError("censor-upper prior score undefined: S_prior(theta) = 0");
      }
      return -1.0;
    case DistortionKind::skewing: {
      if (prior.dim() != 1 || !prior.components[0].symmetric_about_zero()) {
        throw ContractError("skewing prior score requires a scalar prior symmetric about zero");
      }
      return 2.0 * prior.components[0].pdf(0.0) * theta[0];
    }
  }
  throw DomainError("unknown distortion kind");
}

double log_distortion_weight(const DistortionFamily& family, double alpha,
                             const Model& model, std::span<const double> theta, double x) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  if (alpha == family.alpha0) return 0.0;  // h'_{alpha0} == 1
  switch (family.kind) {
    case DistortionKind::power_cdf: {
      if (alpha <= 0.0) throw DomainError("power-cdf weight requires alpha > 0");
      return std::log(alpha) + (alpha - 1.0) * model.log_cdf(theta, x);
    }
    case DistortionKind::power_survival: {
      if (alpha <= 0.0) throw DomainError("power-survival weight requires alpha > 0");
      return std::log(alpha) + (alpha - 1.0) * model.log_survival(theta, x);
    }
    case DistortionKind::censor_lower: {
      if (alpha >= 1.0) throw DomainError("censor-lower weight requires alpha < 1");
      return model.cdf(theta, x) > alpha ? -std::log1p(-alpha) : -kInf;
    }
    case DistortionKind::censor_upper: {
      if (alpha <= 0.0) throw DomainError("censor-upper weight requires alpha > 0");
      return model.cdf(theta, x) < alpha ? -std::log(alpha) : -kInf;
    }
    case DistortionKind::skewing: {
      if (!model.symmetric_about_zero()) {
        throw ContractError("skewing weight requires a model symmetric about zero");
      }
      const double c = model.cdf(theta, alpha * x);
      return c > 0.0 ? std::log(2.0 * c) : -kInf;
    }
  }
  throw DomainError("unknown distortion kind");
}

}  // namespace distsense
