#pragma once

#include <cstddef>
#include <span>

namespace msfou {

/// Moments over the successful replications. kurtosis is m4 / m2^2 (3 for a
/// normal sample); skewness is m3 / m2^1.5. Both are 0 for a constant sample.
struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double sdev = 0.0;  // n - 1 denominator
  double skewness = 0.0;
  double kurtosis = 0.0;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
};

/// Median is the lower middle element for even counts. Requires a nonempty
/// sample.
SummaryStats summarize(std::span<const double> values, std::size_t n_failed = 0);

}  // namespace msfou
