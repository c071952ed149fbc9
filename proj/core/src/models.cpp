#include "distsense/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "distsense/errors.hpp"
#include "distsense/special_functions.hpp"

namespace distsense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log sqrt(2 pi)
}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::exponential: return "exponential";
    case Family::gamma: return "gamma";
    case Family::log_normal: return "log-normal";
    case Family::normal: return "normal";
  }
  return "?";
}

Family family_from_name(std::string_view name) {
  if (name == "exponential") return Family::exponential;
  if (name == "gamma") return Family::gamma;
  if (name == "log-normal" || name == "lognormal") return Family::log_normal;
  if (name == "normal") return Family::normal;
  throw ConfigError("unknown family name: " + std::string(name));
}

Model Model::exponential() { return Model(Family::exponential); }
Model Model::gamma() { return Model(Family::gamma); }
Model Model::log_normal() { return Model(Family::log_normal); }
Model Model::normal() { return Model(Family::normal); }
Model Model::normal_known_mean(double mu) { return Model(Family::normal, mu); }

int Model::param_dim() const {
  switch (family_) {
    case Family::exponential: return 1;
    case Family::gamma: return 2;
    case Family::log_normal: return 2;
    case Family::normal: return known_mean_ ? 1 : 2;
  }
  return 0;
}

bool Model::symmetric_about_zero() const {
  return family_ == Family::normal && known_mean_ && *known_mean_ == 0.0;
}

bool Model::positive_support() const {
  return family_ != Family::normal;
}

std::string Model::name() const { return std::string(family_name(family_)); }

std::vector<std::string> Model::param_names() const {
  switch (family_) {
    case Family::exponential: return {"rate"};
    case Family::gamma: return {"shape", "rate"};
    case Family::log_normal: return {"mu", "sigma"};
    case Family::normal:
      if (known_mean_) return {"sigma"};
      return {"mu", "sigma"};
  }
  return {};
}

bool Model::log_scale_param(int j) const {
  switch (family_) {
    case Family::exponential: return true;           // rate
    case Family::gamma: return true;                 // shape, rate
    case Family::log_normal: return j == 1;          // mu free, sigma positive
    case Family::normal: return known_mean_ ? true : j == 1;
  }
  return false;
}

void Model::check_theta(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != param_dim()) {
    throw ContractError("theta has dimension " + std::to_string(theta.size()) +
                        ", model " + name() + " expects " + std::to_string(param_dim()));
  }
  for (double v : theta) {
    if (!std::isfinite(v)) throw DomainError("theta contains a non-finite value");
  }
  const auto names = param_names();
  for (int j = 0; j < param_dim(); ++j) {
    if (log_scale_param(j) && !(theta[j] > 0.0)) {
      throw DomainError("parameter " + names[j] + " must be positive, got " +
                        std::to_string(theta[j]));
    }
  }
}

void Model::normal_params(std::span<const double> theta, double& mu, double& sigma) const {
  if (known_mean_) {
    mu = *known_mean_;
    sigma = theta[0];
  } else {
    mu = theta[0];
    sigma = theta[1];
  }
}

double Model::log_pdf(std::span<const double> theta, double x) const {
  check_theta(theta);
  switch (family_) {
    case Family::exponential: {
      const double lam = theta[0];
      if (x < 0.0) return -kInf;
      return std::log(lam) - lam * x;
    }
    case Family::gamma: {
      const double k = theta[0], b = theta[1];
      if (x < 0.0) return -kInf;
      if (x == 0.0) {
        if (k > 1.0) return -kInf;
        if (k == 1.0) return std::log(b);
        return kInf;  // density diverges at the origin for shape < 1
      }
      return k * std::log(b) + (k - 1.0) * std::log(x) - b * x - std::lgamma(k);
    }
    case Family::log_normal: {
      const double mu = theta[0], sg = theta[1];
      if (x <= 0.0) return -kInf;
      const double z = (std::log(x) - mu) / sg;
      return -std::log(x) - std::log(sg) - kLogSqrt2Pi - 0.5 * z * z;
    }
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      const double z = (x - mu) / sg;
      return -std::log(sg) - kLogSqrt2Pi - 0.5 * z * z;
    }
  }
  return -kInf;
}

double Model::pdf(std::span<const double> theta, double x) const {
  return std::exp(log_pdf(theta, x));
}

double Model::cdf(std::span<const double> theta, double x) const {
  check_theta(theta);
  switch (family_) {
    case Family::exponential:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-theta[0] * x);
    case Family::gamma:
      if (x <= 0.0) return 0.0;
      return special::gamma_p(theta[0], theta[1] * x);
    case Family::log_normal:
      if (x <= 0.0) return 0.0;
      return special::normal_cdf((std::log(x) - theta[0]) / theta[1]);
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      return special::normal_cdf((x - mu) / sg);
    }
  }
  return 0.0;
}

double Model::survival(std::span<const double> theta, double x) const {
  check_theta(theta);
  switch (family_) {
    case Family::exponential:
      if (x <= 0.0) return 1.0;
      return std::exp(-theta[0] * x);
    case Family::gamma:
      if (x <= 0.0) return 1.0;
      return special::gamma_q(theta[0], theta[1] * x);
    case Family::log_normal:
      if (x <= 0.0) return 1.0;
      return special::normal_cdf(-(std::log(x) - theta[0]) / theta[1]);
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      return special::normal_cdf(-(x - mu) / sg);
    }
  }
  return 1.0;
}

double Model::log_cdf(std::span<const double> theta, double x) const {
  check_theta(theta);
  switch (family_) {
    case Family::exponential: {
      if (x <= 0.0) return -kInf;
      const double t = theta[0] * x;
      return std::log(-std::expm1(-t));
    }
    case Family::gamma:
      if (x <= 0.0) return -kInf;
      return special::log_gamma_p(theta[0], theta[1] * x);
    case Family::log_normal:
      if (x <= 0.0) return -kInf;
      return special::log_normal_cdf((std::log(x) - theta[0]) / theta[1]);
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      return special::log_normal_cdf((x - mu) / sg);
    }
  }
  return -kInf;
}

double Model::log_survival(std::span<const double> theta, double x) const {
  check_theta(theta);
  switch (family_) {
    case Family::exponential:
      if (x <= 0.0) return 0.0;
      return -theta[0] * x;
    case Family::gamma:
      if (x <= 0.0) return 0.0;
      return special::log_gamma_q(theta[0], theta[1] * x);
    case Family::log_normal:
      if (x <= 0.0) return 0.0;
      return special::log_normal_cdf(-(std::log(x) - theta[0]) / theta[1]);
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      return special::log_normal_cdf(-(x - mu) / sg);
    }
  }
  return 0.0;
}

double Model::quantile(std::span<const double> theta, double u) const {
  check_theta(theta);
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u outside [0,1]");
  switch (family_) {
    case Family::exponential:
      return -std::log1p(-u) / theta[0];
    case Family::gamma:
      return special::gamma_p_inverse(theta[0], u) / theta[1];
    case Family::log_normal:
      if (u == 0.0) return 0.0;
      return std::exp(theta[0] + theta[1] * special::normal_quantile(u));
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      return mu + sg * special::normal_quantile(u);
    }
  }
  return 0.0;
}

double Model::sample_one(std::span<const double> theta, RngEngine& rng) const {
  switch (family_) {
    case Family::exponential:
      return -std::log(uniform01(rng)) / theta[0];
    case Family::gamma:
      return gamma_draw(rng, theta[0], theta[1]);
    case Family::log_normal:
      return std::exp(theta[0] + theta[1] * normal_draw(rng));
    case Family::normal: {
      double mu, sg;
      normal_params(theta, mu, sg);
      return mu + sg * normal_draw(rng);
    }
  }
  return 0.0;
}

Dataset simulate(const Model& model, std::span<const double> theta, int n, std::uint64_t seed) {
  model.check_theta(theta);
  if (n < 1) throw DomainError("simulate: n must be >= 1");
  RngEngine rng(seed);
  Dataset out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = model.sample_one(theta, rng);
  std::ostringstream tag;
  tag << "simulated:" << model.name() << "(";
  for (std::size_t j = 0; j < theta.size(); ++j) tag << (j ? "," : "") << theta[j];
  tag << "):seed=" << seed;
  out.source = tag.str();
  return out;
}

bool Distribution::symmetric_about_zero() const {
  if (model.symmetric_about_zero()) return true;
  return model.family() == Family::normal && !model.has_known_mean() && params.at(0) == 0.0;
}

std::string Distribution::spec_string() const {
  std::ostringstream s;
  s << model.name() << "(";
  for (std::size_t j = 0; j < params.size(); ++j) s << (j ? "," : "") << params[j];
  s << ")";
  return s.str();
}

Distribution parse_distribution(std::string_view spec) {
  const auto open = spec.find('(');
  const auto close = spec.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ConfigError("malformed distribution spec: " + std::string(spec));
  }
  const Family fam = family_from_name(std::string(spec.substr(0, open)));
  Model model = [&] {
    switch (fam) {
      case Family::exponential: return Model::exponential();
      case Family::gamma: return Model::gamma();
      case Family::log_normal: return Model::log_normal();
      case Family::normal: return Model::normal();
    }
    return Model::exponential();
  }();
  std::vector<double> params;
  std::string args(spec.substr(open + 1, close - open - 1));
  std::istringstream in(args);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      params.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad numeric parameter '" + tok + "' in " + std::string(spec));
    }
  }
  if (static_cast<int>(params.size()) != model.param_dim()) {
    throw ConfigError("distribution " + std::string(spec) + " needs " +
                      std::to_string(model.param_dim()) + " parameters");
  }
  model.check_theta(params);
  return Distribution{model, std::move(params)};
}

double Prior::log_pdf(std::span<const double> theta) const {
  if (theta.size() != components.size()) {
    throw ContractError("prior log_pdf: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < components.size(); ++j) s += components[j].log_pdf(theta[j]);
  return s;
}

double Prior::log_cdf_joint(std::span<const double> theta) const {
  if (theta.size() != components.size()) {
    throw ContractError("prior log_cdf: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < components.size(); ++j) s += components[j].log_cdf(theta[j]);
  return s;
}

double Prior::log_survival_joint(std::span<const double> theta) const {
  if (theta.size() != components.size()) {
    throw ContractError("prior log_survival: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < components.size(); ++j) s += components[j].log_survival(theta[j]);
  return s;
}

Prior Prior::default_for(const Model& model) {
  const auto gamma21 = Distribution{Model::gamma(), {2.0, 1.0}};
  switch (model.family()) {
    case Family::exponential:
      return Prior{{Distribution{Model::gamma(), {1.0, 1.0}}}};
    case Family::gamma:
      return Prior{{gamma21, gamma21}};
    case Family::log_normal:
      return Prior{{Distribution{Model::normal(), {0.0, 10.0}}, gamma21}};
    case Family::normal:
      if (model.has_known_mean()) return Prior{{gamma21}};
      return Prior{{Distribution{Model::normal(), {0.0, 10.0}}, gamma21}};
  }
  throw ContractError("no default prior for model");
}

std::vector<double> prior_cdf(const Prior& prior, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != prior.dim()) {
    throw ContractError("prior_cdf: theta dimension " + std::to_string(theta.size()) +
                        " does not match prior dimension " + std::to_string(prior.dim()));
  }
  std::vector<double> out(prior.dim());
  for (int j = 0; j < prior.dim(); ++j) out[j] = prior.components[j].cdf(theta[j]);
  return out;
}

}  // namespace distsense
