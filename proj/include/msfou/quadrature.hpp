#pragma once

#include <functional>
#include <vector>

namespace msfou {

/// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Gauss rule for the weight (1 - x)^alpha (1 + x)^beta on [-1, 1],
/// alpha, beta > -1 (Golub-Welsch).
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Refinement control for integrals with an algebraic endpoint singularity
/// u^singular_exponent at u = 0.
struct QuadratureSpec {
  int panels = 8;
  double tol = 1e-10;
  double singular_exponent = -0.5;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int refinements = 0;
};

/// int_lo^hi u^a f(u) du for 0 <= lo < hi and smooth f, a = q.singular_exponent.
/// Panels are graded geometrically toward u = 0 up to `scale`, uniform beyond
/// it; the panel touching the origin uses the Gauss-Jacobi rule that is exact
/// for u^a times polynomials. The panel count doubles until successive
/// estimates agree within q.tol; throws NumericalError otherwise.
QuadratureResult integrate_power_weighted(const std::function<double(double)>& f,
                                          double lo, double hi, double scale,
                                          const QuadratureSpec& q);

}  // namespace msfou
