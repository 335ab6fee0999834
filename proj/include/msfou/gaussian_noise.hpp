#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "msfou/hurst.hpp"

namespace msfou {

enum class NoiseMethod {
  kCirculantExact,  // Davies-Harte circulant embedding, distributionally exact
  kSpectralApprox,  // Paxson's approximate spectral synthesis
};

struct NoiseSpec {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  NoiseMethod method = NoiseMethod::kCirculantExact;
};

/// Autocovariance of unit fractional Gaussian noise at lag |k|.
double fgn_autocovariance(long long k, HurstParam h);

/// Spectral density of unit fGn, normalized so that
/// rho(k) = (1/2pi) * int_{-pi}^{pi} f(lambda) e^{ik lambda} d lambda.
/// Uses Paxson's truncated-sum approximation of the aliasing series.
double fgn_spectral_density_paxson(double lambda, HurstParam h);

/// Precomputed sampler for fGn of fixed length and Hurst index. The spectral
/// factors are computed once; `sample` is const and safe to call
/// concurrently with distinct seeds.
class FgnGenerator {
 public:
  FgnGenerator(std::size_t n, HurstParam h,
               NoiseMethod method = NoiseMethod::kCirculantExact);

  std::size_t size() const { return n_; }
  HurstParam hurst() const { return h_; }
  NoiseMethod method() const { return method_; }

  std::vector<double> sample(std::uint64_t seed) const;

 private:
  std::vector<double> sample_circulant(std::uint64_t seed) const;
  std::vector<double> sample_spectral(std::uint64_t seed) const;

  std::size_t n_;
  HurstParam h_;
  NoiseMethod method_;
  std::size_t fft_size_ = 0;
  // Circulant: sqrt(lambda_k / m). Spectral: sqrt(f(lambda_k) / m).
  std::vector<double> amplitude_;
};

std::vector<double> sample_fgn(const NoiseSpec& spec, HurstParam h);

/// Running sums of the increments, B_0 excluded.
std::vector<double> fbm_from_fgn(std::span<const double> increments);

}  // namespace msfou
