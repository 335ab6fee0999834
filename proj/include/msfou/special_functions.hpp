#pragma once

namespace msfou {

/// Gamma function for x > 0; throws std::domain_error otherwise.
double gamma_fn(double x);

}  // namespace msfou
