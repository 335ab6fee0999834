#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace msfou {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sub-stream `stream` of `seed`. Distinct stream indices give
/// statistically independent generators, and the mapping does not depend
/// on the order in which streams are requested.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Sub-stream roles inside one simulated path.
enum class NoiseStream : std::uint64_t {
  kFractional = 0,  // fGn feeding the sub-fractional component
  kBrownian = 1,    // independent Brownian component
};

std::uint64_t derive_stream_seed(std::uint64_t seed, NoiseStream role);

/// Call-local Gaussian source. Not shared across threads.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double exponential() { return exponential_(engine_); }

  std::vector<double> normals(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace msfou
