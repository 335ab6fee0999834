#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "msfou/gaussian_noise.hpp"
#include "msfou/rng.hpp"

namespace testing_support {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

// Per-replication sample autocovariances at lags 0..max_lag, averaged over
// replications; the SE is the spread across replications.
inline std::vector<MeanSe> pooled_autocovariance(const msfou::FgnGenerator& gen, std::size_t reps,
                                                 int max_lag, std::uint64_t seed) {
  std::vector<std::vector<double>> per_lag(max_lag + 1);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto y = gen.sample(msfou::derive_stream_seed(seed, r));
    for (int k = 0; k <= max_lag; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i + k < y.size(); ++i) s += y[i] * y[i + k];
      per_lag[k].push_back(s / static_cast<double>(y.size() - k));
    }
  }
  std::vector<MeanSe> out;
  for (const auto& v : per_lag) out.push_back(mean_se(v));
  return out;
}

}  // namespace testing_support
