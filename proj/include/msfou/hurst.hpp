#pragma once

#include <string_view>

namespace msfou {

/// Asymptotic regime of the drift estimators as a function of H.
enum class HurstRegime {
  kBrownian,    // H = 1/2
  kErgodicClt,  // 1/2 < H < 3/4, sqrt(T) Gaussian limit
  kBoundary,    // H = 3/4, sqrt(T / log T) Gaussian limit
  kRosenblatt,  // 3/4 < H < 1, T^(2-2H) non-Gaussian limit
  kRough,       // 0 < H < 1/2, no estimator theory here
};

std::string_view to_string(HurstRegime regime);

/// Hurst index validated to lie in the open interval (0, 1).
class HurstParam {
 public:
  explicit HurstParam(double h);

  double value() const { return h_; }
  HurstRegime regime() const { return regime_; }

  /// 2H - 2, the exponent of the covariance-kernel singularity.
  double singular_exponent() const { return 2.0 * h_ - 2.0; }
  /// H(2H - 1).
  double alpha() const { return h_ * (2.0 * h_ - 1.0); }

  bool is_brownian() const { return regime_ == HurstRegime::kBrownian; }

 private:
  double h_;
  HurstRegime regime_;
};

}  // namespace msfou
