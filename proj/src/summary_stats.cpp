#include "msfou/summary_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace msfou {

SummaryStats summarize(std::span<const double> values, std::size_t n_failed) {
  if (values.empty()) throw std::invalid_argument("summarize: empty sample");
  const auto n = static_cast<double>(values.size());

  SummaryStats s;
  s.n_ok = values.size();
  s.n_failed = n_failed;

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double e = v - s.mean;
    const double e2 = e * e;
    m2 += e2;
    m3 += e2 * e;
    m4 += e2 * e2;
  }
  s.sdev = values.size() > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }

  std::vector<double> sorted(values.begin(), values.end());
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  s.median = *mid;
  return s;
}

}  // namespace msfou
