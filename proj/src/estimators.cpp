#include "msfou/estimators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "msfou/errors.hpp"
#include "msfou/numerics.hpp"

namespace msfou {

std::string_view to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::kMle: return "mle";
    case EstimatorMethod::kLseSkorohod: return "lse";
    case EstimatorMethod::kPractical: return "practical";
    case EstimatorMethod::kNonergodic: return "nonergodic";
  }
  return "unknown";
}

EstimatorMethod parse_estimator(std::string_view name) {
  if (name == "mle") return EstimatorMethod::kMle;
  if (name == "lse" || name == "lse_skorohod") return EstimatorMethod::kLseSkorohod;
  if (name == "practical") return EstimatorMethod::kPractical;
  if (name == "nonergodic") return EstimatorMethod::kNonergodic;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

double integral_X2(const SamplePath& x) {
  if (x.size() < 1) throw std::invalid_argument("integral_X2: need at least two points");
  const auto v = x.values();
  double sum = 0.5 * x.initial_value() * x.initial_value();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) sum += v[i] * v[i];
  sum += 0.5 * v.back() * v.back();
  return sum * x.spacing();
}

namespace {

double checked_denominator(const SamplePath& x) {
  const double denom = integral_X2(x);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw EstimationError("int X^2 dt is zero or not finite");
  }
  return denom;
}

void require_clt_range(HurstParam h, const char* who) {
  if (!(h.value() > 0.5 && h.value() < 0.75)) {
    throw std::invalid_argument(std::string(who) + ": requires 1/2 < H < 3/4");
  }
}

}  // namespace

LseCorrection lse_correction(double theta_ref, HurstParam h, double horizon) {
  if (!(h.value() > 0.5)) throw std::invalid_argument("lse_skorohod: requires H > 1/2");
  if (!(theta_ref > 0.0)) throw std::invalid_argument("lse_skorohod: theta_ref must be positive");
  const auto r = correction_integral_detailed(theta_ref, h, horizon, quadrature_for(h));
  return LseCorrection{theta_ref, horizon, h.alpha() * r.value, h.alpha() * r.error_estimate};
}

EstimateResult lse_skorohod(const SamplePath& x, HurstParam h, double theta_ref) {
  return lse_skorohod(x, h, lse_correction(theta_ref, h, x.horizon()));
}

EstimateResult lse_skorohod(const SamplePath& x, HurstParam h, const LseCorrection& correction) {
  if (!(h.value() > 0.5)) throw std::invalid_argument("lse_skorohod: requires H > 1/2");
  if (std::fabs(correction.horizon - x.horizon()) > 1e-9 * x.horizon()) {
    throw std::invalid_argument("lse_skorohod: correction computed for a different horizon");
  }
  const double denom = checked_denominator(x);
  const double xt = x.final_value();
  EstimateResult r;
  r.method = EstimatorMethod::kLseSkorohod;
  r.denominator = denom;
  r.theta_hat = (-xt * xt + 2.0 * correction.value + x.horizon()) / (2.0 * denom);
  r.diagnostics["correction"] = correction.value;
  r.diagnostics["quadrature_error"] = correction.error_estimate;
  r.diagnostics["theta_ref"] = correction.theta_ref;
  return r;
}

EstimateResult practical_estimator(std::span<const double> samples, HurstParam h) {
  if (samples.empty()) throw std::invalid_argument("practical_estimator: no samples");
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  const double moment = sum / static_cast<double>(samples.size());
  if (!(moment > 0.0) || !std::isfinite(moment)) {
    throw EstimationError("empirical second moment is zero or not finite");
  }
  const PInverse inv = invert_p(moment, h);
  EstimateResult r;
  r.method = EstimatorMethod::kPractical;
  r.theta_hat = inv.theta;
  r.denominator = moment;
  r.diagnostics["second_moment"] = moment;
  r.diagnostics["iterations"] = inv.iterations;
  return r;
}

EstimateResult practical_estimator(const SamplePath& x, HurstParam h) {
  return practical_estimator(x.values(), h);
}

EstimateResult nonergodic_estimator(const SamplePath& x) {
  const double denom = checked_denominator(x);
  const double xt = x.final_value();
  EstimateResult r;
  r.method = EstimatorMethod::kNonergodic;
  r.denominator = denom;
  r.theta_hat = -xt * xt / (2.0 * denom);
  return r;
}

double sigma_H(double theta, HurstParam h) {
  require_clt_range(h, "sigma_H");
  if (!(theta > 0.0)) throw std::invalid_argument("sigma_H: theta must be positive");
  const double H = h.value();
  const double g2h = gamma_fn(2.0 * H);
  const double bracket =
      g2h * g2h + g2h * gamma_fn(3.0 - 4.0 * H) * gamma_fn(4.0 * H - 1.0) / gamma_fn(2.0 - 2.0 * H);
  const double numerator =
      std::pow(theta, 1.0 - 4.0 * H) * H * H * (4.0 * H - 1.0) * bracket + 1.0 / (2.0 * theta);
  const double denominator = std::pow(theta, -2.0 * H) * H * g2h + 1.0 / (2.0 * theta);
  return std::sqrt(numerator) / denominator;
}

double boundary_variance(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("boundary_variance: theta must be positive");
  const double inner = 3.0 * std::sqrt(std::numbers::pi) * std::pow(theta, -1.5) / 4.0 + 0.5;
  return 9.0 / (4.0 * theta * theta * inner * inner);
}

double phi_statistic(double theta_tilde, double theta, HurstParam h, std::size_t n,
                     double spacing) {
  require_clt_range(h, "phi_statistic");
  if (!(theta > 0.0)) throw std::invalid_argument("phi_statistic: theta must be positive");
  if (n == 0 || !(spacing > 0.0)) throw std::invalid_argument("phi_statistic: need N >= 1, d > 0");
  const double H = h.value();
  const double scale = sigma_H(theta, h) * (H * gamma_fn(2.0 * H) * std::pow(theta, 1.0 - 2.0 * H) + 0.5);
  return theta * std::sqrt(static_cast<double>(n) * spacing) * (theta_tilde - theta) / scale;
}

}  // namespace msfou
