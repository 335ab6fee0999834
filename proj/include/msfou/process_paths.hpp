#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msfou/gaussian_noise.hpp"
#include "msfou/hurst.hpp"

namespace msfou {

/// Uniformly sampled realization on t_i = i * d, i = 0..N. `values` holds
/// t_1..t_N; the value at t_0 is kept separately.
class SamplePath {
 public:
  SamplePath(double spacing, std::vector<double> values,
             double initial_value = 0.0);

  double spacing() const { return spacing_; }
  std::size_t size() const { return values_.size(); }
  double horizon() const { return spacing_ * static_cast<double>(size()); }
  double initial_value() const { return initial_value_; }
  double final_value() const { return values_.back(); }
  std::span<const double> values() const { return values_; }

  /// Value at t_i for i in [0, N].
  double at(std::size_t i) const {
    return i == 0 ? initial_value_ : values_[i - 1];
  }
  double time(std::size_t i) const {
    return spacing_ * static_cast<double>(i);
  }

  SamplePath scaled(double factor) const;

 private:
  double spacing_;
  std::vector<double> values_;
  double initial_value_;
};

/// fBm on the two-sided grid {-t_N..-t_1} and {t_1..t_N}, B_0 = 0.
struct TwoSidedFbm {
  std::vector<double> pos;  // B(t_1) .. B(t_N)
  std::vector<double> neg;  // B(-t_1) .. B(-t_N)
  double spacing = 1.0;
};

/// Splits one stationary fGn vector of length 2N, ordered in time over
/// [-t_N, t_N], into the two half-line fBm paths. Increments are scaled by
/// d^H so that the result has the covariance of fBm sampled at spacing d.
TwoSidedFbm two_sided_fbm(std::span<const double> fgn2n, double spacing,
                          HurstParam h);

/// S_{t_i} = (B(t_i) + B(-t_i)) / sqrt(2).
SamplePath sfbm_path(const TwoSidedFbm& fbm);

/// R_H(s, t) = t^2H + s^2H - (|t-s|^2H + (t+s)^2H) / 2, for s, t >= 0.
double sfbm_covariance(double s, double t, HurstParam h);

/// Standard Brownian motion at spacing d, W_0 = 0.
SamplePath brownian_path(double spacing, std::size_t steps, std::uint64_t seed);

/// xi = W + S^H pointwise.
SamplePath msfbm_path(const SamplePath& brownian, const SamplePath& sfbm);

/// Euler recursion X_{i+1} = X_i - theta d X_i + (xi_{i+1} - xi_i) driven by a
/// given noise path.
SamplePath euler_msfou(double theta, const SamplePath& noise, double x0 = 0.0);

/// Samples sfBm, msfBm and msfOU paths on a fixed grid. Holds the fGn
/// spectral factors for 2N points so repeated replications reuse them. All
/// sampling methods are const and reentrant.
class MsfouSimulator {
 public:
  MsfouSimulator(HurstParam h, double spacing, std::size_t steps,
                 NoiseMethod method = NoiseMethod::kCirculantExact);

  HurstParam hurst() const { return h_; }
  double spacing() const { return spacing_; }
  std::size_t steps() const { return steps_; }

  /// `seed` is a per-path seed; the fractional and Brownian components draw
  /// from disjoint sub-streams of it.
  SamplePath sfbm(std::uint64_t seed) const;
  SamplePath brownian(std::uint64_t seed) const;
  SamplePath msfbm(std::uint64_t seed) const;
  SamplePath simulate(double theta, std::uint64_t seed, double x0 = 0.0) const;

 private:
  HurstParam h_;
  double spacing_;
  std::size_t steps_;
  FgnGenerator fgn_;
};

/// One-shot msfOU path; equivalent to MsfouSimulator(...).simulate(...).
SamplePath euler_msfou(double theta, HurstParam h, double spacing,
                       std::size_t steps, std::uint64_t seed, double x0 = 0.0,
                       NoiseMethod method = NoiseMethod::kCirculantExact);

}  // namespace msfou
