#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "msfou/hurst.hpp"
#include "msfou/process_paths.hpp"

namespace msfou {

enum class EstimatorMethod { kMle, kLseSkorohod, kPractical, kNonergodic };

std::string_view to_string(EstimatorMethod m);
/// Accepts mle, lse, practical, nonergodic.
EstimatorMethod parse_estimator(std::string_view name);

struct EstimateResult {
  double theta_hat = 0.0;
  EstimatorMethod method = EstimatorMethod::kPractical;
  double denominator = 0.0;
  std::map<std::string, double> diagnostics;
};

/// Trapezoid rule for int_0^T X_t^2 dt over t_0..t_N.
double integral_X2(const SamplePath& x);

/// alpha_H I(theta_ref, H, T), the Skorohod correction of the LSE numerator.
/// Depends only on (theta_ref, H, T), so experiments compute it once.
struct LseCorrection {
  double theta_ref = 0.0;
  double horizon = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
};

LseCorrection lse_correction(double theta_ref, HurstParam h, double horizon);

/// (-X_T^2 + 2 alpha_H I + T) / (2 int X^2). theta_ref must be the true
/// drift; this estimator is only computable in simulation.
EstimateResult lse_skorohod(const SamplePath& x, HurstParam h, double theta_ref);
EstimateResult lse_skorohod(const SamplePath& x, HurstParam h, const LseCorrection& correction);

/// p^{-1} of the plain mean of X_{id}^2, i = 1..N.
EstimateResult practical_estimator(std::span<const double> samples, HurstParam h);
EstimateResult practical_estimator(const SamplePath& x, HurstParam h);

/// -X_T^2 / (2 int X^2).
EstimateResult nonergodic_estimator(const SamplePath& x);

/// Asymptotic standard deviation of sqrt(T)(LSE - theta), 1/2 < H < 3/4.
double sigma_H(double theta, HurstParam h);

/// Asymptotic variance of sqrt(T / log T)(LSE - theta) at H = 3/4.
double boundary_variance(double theta);

/// theta sqrt(N d) (theta_tilde - theta) / (sigma_H (H Gamma(2H) theta^(1-2H) + 1/2)).
double phi_statistic(double theta_tilde, double theta, HurstParam h, std::size_t n, double spacing);

}  // namespace msfou
