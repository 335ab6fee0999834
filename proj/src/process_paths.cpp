#include "msfou/process_paths.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "msfou/rng.hpp"

namespace msfou {

SamplePath::SamplePath(double spacing, std::vector<double> values,
                       double initial_value)
    : spacing_(spacing), values_(std::move(values)), initial_value_(initial_value) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("SamplePath: spacing must be positive");
  }
  if (values_.empty()) {
    throw std::invalid_argument("SamplePath: at least one sample required");
  }
  if (!std::isfinite(initial_value_)) {
    throw std::invalid_argument("SamplePath: non-finite initial value");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("SamplePath: non-finite value at index " +
                                  std::to_string(i + 1));
    }
  }
}

SamplePath SamplePath::scaled(double factor) const {
  std::vector<double> v(values_);
  for (auto& x : v) x *= factor;
  return SamplePath(spacing_, std::move(v), initial_value_ * factor);
}

TwoSidedFbm two_sided_fbm(std::span<const double> fgn2n, double spacing,
                          HurstParam h) {
  if (fgn2n.size() < 2 || fgn2n.size() % 2 != 0) {
    throw std::invalid_argument(
        "two_sided_fbm: need an even number (>= 2) of increments, got " +
        std::to_string(fgn2n.size()));
  }
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("two_sided_fbm: spacing must be positive");
  }
  const std::size_t n = fgn2n.size() / 2;
  const double scale = std::pow(spacing, h.value());

  TwoSidedFbm out;
  out.spacing = spacing;
  out.pos.resize(n);
  out.neg.resize(n);
  double up = 0.0;
  double down = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    up += fgn2n[n + i];        // Y_{N+1}, Y_{N+2}, ...
    down += fgn2n[n - 1 - i];  // Y_N, Y_{N-1}, ...
    out.pos[i] = scale * up;
    out.neg[i] = -scale * down;
  }
  return out;
}

SamplePath sfbm_path(const TwoSidedFbm& fbm) {
  if (fbm.pos.size() != fbm.neg.size() || fbm.pos.empty()) {
    throw std::invalid_argument("sfbm_path: malformed two-sided fBm");
  }
  std::vector<double> values(fbm.pos.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = (fbm.pos[i] + fbm.neg[i]) * (1.0 / std::numbers::sqrt2);
  }
  return SamplePath(fbm.spacing, std::move(values), 0.0);
}

double sfbm_covariance(double s, double t, HurstParam h) {
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("sfbm_covariance: times must be nonnegative");
  }
  const double two_h = 2.0 * h.value();
  return std::pow(t, two_h) + std::pow(s, two_h) -
         0.5 * (std::pow(std::fabs(t - s), two_h) + std::pow(t + s, two_h));
}

SamplePath brownian_path(double spacing, std::size_t steps,
                         std::uint64_t seed) {
  if (!(spacing > 0.0) || steps == 0) {
    throw std::invalid_argument("brownian_path: need spacing > 0 and steps >= 1");
  }
  GaussianStream rng(seed);
  const double sd = std::sqrt(spacing);
  std::vector<double> values(steps);
  double w = 0.0;
  for (auto& v : values) {
    w += sd * rng.normal();
    v = w;
  }
  return SamplePath(spacing, std::move(values), 0.0);
}

SamplePath msfbm_path(const SamplePath& brownian, const SamplePath& sfbm) {
  const double tol = 1e-12 * std::max(brownian.spacing(), sfbm.spacing());
  if (brownian.size() != sfbm.size() ||
      std::fabs(brownian.spacing() - sfbm.spacing()) > tol) {
    throw std::invalid_argument("msfbm_path: grid mismatch between W and S^H");
  }
  std::vector<double> values(brownian.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = brownian.values()[i] + sfbm.values()[i];
  }
  return SamplePath(brownian.spacing(), std::move(values),
                    brownian.initial_value() + sfbm.initial_value());
}

SamplePath euler_msfou(double theta, const SamplePath& noise, double x0) {
  const double d = noise.spacing();
  const double decay = 1.0 - theta * d;
  std::vector<double> values(noise.size());
  double x = x0;
  double previous = noise.initial_value();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double current = noise.values()[i];
    x = decay * x + (current - previous);
    previous = current;
    values[i] = x;
  }
  return SamplePath(d, std::move(values), x0);
}

MsfouSimulator::MsfouSimulator(HurstParam h, double spacing, std::size_t steps,
                               NoiseMethod method)
    : h_(h), spacing_(spacing), steps_(steps), fgn_(2 * steps, h, method) {
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("MsfouSimulator: spacing must be positive");
  }
  if (steps == 0) {
    throw std::invalid_argument("MsfouSimulator: steps must be >= 1");
  }
}

SamplePath MsfouSimulator::sfbm(std::uint64_t seed) const {
  const auto increments =
      fgn_.sample(derive_stream_seed(seed, NoiseStream::kFractional));
  return sfbm_path(two_sided_fbm(increments, spacing_, h_));
}

SamplePath MsfouSimulator::brownian(std::uint64_t seed) const {
  return brownian_path(spacing_, steps_,
                       derive_stream_seed(seed, NoiseStream::kBrownian));
}

SamplePath MsfouSimulator::msfbm(std::uint64_t seed) const {
  return msfbm_path(brownian(seed), sfbm(seed));
}

SamplePath MsfouSimulator::simulate(double theta, std::uint64_t seed,
                                    double x0) const {
  return euler_msfou(theta, msfbm(seed), x0);
}

SamplePath euler_msfou(double theta, HurstParam h, double spacing,
                       std::size_t steps, std::uint64_t seed, double x0,
                       NoiseMethod method) {
  if (!(spacing > 0.0) || steps == 0) {
    throw std::invalid_argument("euler_msfou: need d > 0 and N >= 1");
  }
  return MsfouSimulator(h, spacing, steps, method).simulate(theta, seed, x0);
}

}  // namespace msfou
