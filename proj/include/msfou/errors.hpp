#pragma once

#include <stdexcept>

namespace msfou {

/// A numerical kernel failed: non-PSD embedding, singular system,
/// nonconvergent refinement, root not bracketed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An estimator cannot produce a value for this path (zero denominator,
/// non-finite moment).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msfou
