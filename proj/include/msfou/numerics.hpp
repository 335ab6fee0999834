#pragma once

#include "msfou/hurst.hpp"
#include "msfou/quadrature.hpp"
#include "msfou/special_functions.hpp"

namespace msfou {

/// kappa(s, t) = H(2H-1) (|t-s|^(2H-2) - (t+s)^(2H-2)), s != t, s, t > 0.
double kappa(double s, double t, HurstParam h);

/// Quadrature settings whose singular exponent matches H.
QuadratureSpec quadrature_for(HurstParam h, double tol = 1e-10, int panels = 8);

/// I(theta, H, T) = int_0^T int_0^t e^{-theta(t-s)} ((t-s)^(2H-2) + (t+s)^(2H-2)) ds dt.
///
/// The double integral is reduced to one-dimensional integrals with a u^(2H-2)
/// endpoint weight: the difference term becomes int_0^T (T-u) e^{-theta u} u^a du,
/// and the sum term, after integrating out t over v/2 <= t <= min(v, T) with
/// v = t + s, becomes (1/2theta) int_0^{2T} v^a (1 - e^{theta(v - 2 min(v, T))}) dv.
/// Requires H > 1/2, theta > 0, T >= 0.
QuadratureResult correction_integral_detailed(double theta, HurstParam h, double horizon,
                                              const QuadratureSpec& q);
double correction_integral(double theta, HurstParam h, double horizon,
                           const QuadratureSpec& q);

/// Ergodic limit of (1/T) int X^2: p(theta) = 1/(2 theta) + H Gamma(2H) theta^(-2H).
double p_function(double theta, HurstParam h);

struct PInverse {
  double theta = 0.0;
  int iterations = 0;
};

/// Unique theta > 0 with |p(theta) - y| <= 1e-10 max(1, y), for H >= 1/2.
/// Bracket [1e-6, 1e6] widened geometrically in log(theta), bisection down to
/// a relative width of 1e-3, then safeguarded secant.
PInverse invert_p(double y, HurstParam h);

}  // namespace msfou
