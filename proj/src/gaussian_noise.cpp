#include "msfou/gaussian_noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/FFT>

#include "msfou/errors.hpp"
#include "msfou/rng.hpp"
#include "msfou/special_functions.hpp"

namespace msfou {

namespace {

using Complex = std::complex<double>;

// Relative floor below which a negative circulant eigenvalue is treated as
// rounding noise and clamped to zero.
constexpr double kEigenvalueRoundoff = 1e-10;

std::vector<double> real_part_of_dft(const std::vector<Complex>& spectrum,
                                     std::size_t keep) {
  Eigen::FFT<double> fft;
  std::vector<Complex> time_domain;
  fft.fwd(time_domain, spectrum);
  std::vector<double> out(keep);
  for (std::size_t j = 0; j < keep; ++j) out[j] = time_domain[j].real();
  return out;
}

}  // namespace

double fgn_autocovariance(long long k, HurstParam h) {
  const double two_h = 2.0 * h.value();
  const double lag = std::fabs(static_cast<double>(k));
  if (lag == 0.0) return 1.0;
  return 0.5 * (std::pow(lag + 1.0, two_h) - 2.0 * std::pow(lag, two_h) +
                std::pow(lag - 1.0, two_h));
}

double fgn_spectral_density_paxson(double lambda, HurstParam h) {
  const double hv = h.value();
  const double pi = std::numbers::pi;
  const double d = -2.0 * hv - 1.0;
  const double d_prime = -2.0 * hv;
  auto a = [&](int k) { return 2.0 * k * pi + lambda; };
  auto b = [&](int k) { return 2.0 * k * pi - lambda; };

  double b3 = 0.0;
  for (int k = 1; k <= 3; ++k) b3 += std::pow(a(k), d) + std::pow(b(k), d);
  b3 += (std::pow(a(3), d_prime) + std::pow(b(3), d_prime) +
         std::pow(a(4), d_prime) + std::pow(b(4), d_prime)) /
        (8.0 * hv * pi);
  const double b3_corrected =
      (1.0002 - 0.000134 * lambda) * (b3 - std::pow(2.0, -7.65 * hv - 7.4));

  const double a_factor =
      2.0 * std::sin(pi * hv) * gamma_fn(2.0 * hv + 1.0) * (1.0 - std::cos(lambda));
  return a_factor * (std::pow(std::fabs(lambda), d) + b3_corrected);
}

FgnGenerator::FgnGenerator(std::size_t n, HurstParam h, NoiseMethod method)
    : n_(n), h_(h), method_(method) {
  if (n < 2) {
    throw std::invalid_argument("fGn length must be at least 2, got " +
                                std::to_string(n));
  }

  if (method == NoiseMethod::kCirculantExact) {
    fft_size_ = 2 * n;
    const std::size_t m = fft_size_;
    std::vector<Complex> first_row(m, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      first_row[k] = fgn_autocovariance(static_cast<long long>(k), h);
    }
    for (std::size_t k = 1; k < n; ++k) first_row[m - k] = first_row[k];

    Eigen::FFT<double> fft;
    std::vector<Complex> eig;
    fft.fwd(eig, first_row);

    double largest = 0.0;
    for (const auto& e : eig) largest = std::max(largest, e.real());
    amplitude_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      double lambda = eig[k].real();
      if (lambda < 0.0) {
        if (lambda < -kEigenvalueRoundoff * largest) {
          throw NumericalError("negative circulant eigenvalue " +
                               std::to_string(lambda) + " at index " +
                               std::to_string(k));
        }
        lambda = 0.0;
      }
      amplitude_[k] = std::sqrt(lambda / static_cast<double>(m));
    }
  } else {
    fft_size_ = n + (n % 2);
    const std::size_t m = fft_size_;
    amplitude_.assign(m / 2 + 1, 0.0);
    for (std::size_t k = 1; k <= m / 2; ++k) {
      const double lambda =
          2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
      amplitude_[k] = std::sqrt(fgn_spectral_density_paxson(lambda, h) /
                                static_cast<double>(m));
    }
  }
}

std::vector<double> FgnGenerator::sample(std::uint64_t seed) const {
  return method_ == NoiseMethod::kCirculantExact ? sample_circulant(seed)
                                                 : sample_spectral(seed);
}

std::vector<double> FgnGenerator::sample_circulant(std::uint64_t seed) const {
  const std::size_t m = fft_size_;
  const std::size_t half = m / 2;
  GaussianStream rng(seed);

  std::vector<Complex> w(m);
  w[0] = amplitude_[0] * rng.normal();
  w[half] = amplitude_[half] * rng.normal();
  for (std::size_t k = 1; k < half; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    const Complex z = amplitude_[k] * (1.0 / std::numbers::sqrt2) * Complex(re, im);
    w[k] = z;
    w[m - k] = std::conj(z);
  }
  return real_part_of_dft(w, n_);
}

std::vector<double> FgnGenerator::sample_spectral(std::uint64_t seed) const {
  const std::size_t m = fft_size_;
  const std::size_t half = m / 2;
  GaussianStream rng(seed);

  // Periodogram ordinates f_k * E_k with E_k ~ Exp(1) and uniform phases;
  // the zero frequency is dropped and the Nyquist term kept real.
  std::vector<Complex> w(m, 0.0);
  for (std::size_t k = 1; k < half; ++k) {
    const double magnitude = amplitude_[k] * std::sqrt(rng.exponential());
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const Complex z = std::polar(magnitude, phase);
    w[k] = z;
    w[m - k] = std::conj(z);
  }
  w[half] = amplitude_[half] * rng.normal();
  return real_part_of_dft(w, n_);
}

std::vector<double> sample_fgn(const NoiseSpec& spec, HurstParam h) {
  return FgnGenerator(spec.n, h, spec.method).sample(spec.seed);
}

std::vector<double> fbm_from_fgn(std::span<const double> increments) {
  if (increments.empty()) {
    throw std::invalid_argument("fbm_from_fgn: empty increment vector");
  }
  std::vector<double> out(increments.size());
  std::partial_sum(increments.begin(), increments.end(), out.begin());
  return out;
}

}  // namespace msfou
