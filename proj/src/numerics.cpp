#include "msfou/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "msfou/errors.hpp"
#include "msfou/parallel.hpp"

#include <omp.h>

namespace msfou {

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("gamma_fn: argument must be positive and finite");
  }
  return std::tgamma(x);
}

int resolve_workers(Parallelism p) {
  if (p.workers >= 1) return p.workers;
  return omp_get_max_threads();
}

double kappa(double s, double t, HurstParam h) {
  if (s == t) throw std::domain_error("kappa: singular at s == t");
  if (!(s > 0.0) || !(t > 0.0)) throw std::domain_error("kappa: need s, t > 0");
  const double a = h.singular_exponent();
  return h.alpha() * (std::pow(std::fabs(t - s), a) - std::pow(t + s, a));
}

QuadratureSpec quadrature_for(HurstParam h, double tol, int panels) {
  return QuadratureSpec{panels, tol, h.singular_exponent()};
}

QuadratureResult correction_integral_detailed(double theta, HurstParam h, double horizon,
                                              const QuadratureSpec& q) {
  if (!(h.value() > 0.5)) {
    throw std::invalid_argument("correction_integral: requires H > 1/2");
  }
  if (!(theta > 0.0)) throw std::invalid_argument("correction_integral: requires theta > 0");
  if (!(horizon >= 0.0)) throw std::invalid_argument("correction_integral: requires T >= 0");
  if (std::fabs(q.singular_exponent - h.singular_exponent()) > 1e-12) {
    throw std::invalid_argument("correction_integral: quadrature exponent must equal 2H-2");
  }
  q.validate();
  if (horizon == 0.0) return {};

  const double T = horizon;
  const double scale = 1.0 / theta;

  const auto difference = integrate_power_weighted(
      [&](double u) { return (T - u) * std::exp(-theta * u); }, 0.0, T, scale, q);
  const auto sum_near = integrate_power_weighted(
      [&](double v) { return -std::expm1(-theta * v); }, 0.0, T, scale, q);
  const auto sum_far = integrate_power_weighted(
      [&](double v) { return -std::expm1(theta * (v - 2.0 * T)); }, T, 2.0 * T, scale, q);

  QuadratureResult out;
  out.value = difference.value + (sum_near.value + sum_far.value) / (2.0 * theta);
  out.error_estimate = difference.error_estimate +
                       (sum_near.error_estimate + sum_far.error_estimate) / (2.0 * theta);
  out.refinements = std::max({difference.refinements, sum_near.refinements, sum_far.refinements});
  return out;
}

double correction_integral(double theta, HurstParam h, double horizon,
                           const QuadratureSpec& q) {
  return correction_integral_detailed(theta, h, horizon, q).value;
}

double p_function(double theta, HurstParam h) {
  if (!(theta > 0.0)) throw std::domain_error("p_function: theta must be positive");
  const double hv = h.value();
  return 0.5 / theta + hv * gamma_fn(2.0 * hv) * std::pow(theta, -2.0 * hv);
}

PInverse invert_p(double y, HurstParam h) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw std::invalid_argument("invert_p: target must be positive and finite");
  }
  if (h.value() < 0.5) throw std::invalid_argument("invert_p: requires H >= 1/2");
  if (h.is_brownian()) return {1.0 / y, 0};

  const double hv = h.value();
  const double c = hv * gamma_fn(2.0 * hv);
  // Work in u = log(theta); p is decreasing so residual(u) is decreasing.
  auto p_of = [&](double u) { return 0.5 * std::exp(-u) + c * std::exp(-2.0 * hv * u); };
  auto residual = [&](double u) { return p_of(u) - y; };
  const double tol = 1e-10 * std::max(1.0, y);
  constexpr double kLogLimit = 700.0;

  double lo = std::log(1e-6);
  double hi = std::log(1e6);
  double width = hi - lo;
  int iterations = 0;
  while (residual(lo) < 0.0) {
    lo -= width;
    width *= 2.0;
    ++iterations;
    if (lo < -kLogLimit) throw NumericalError("invert_p: target too large to bracket");
  }
  width = hi - lo;
  while (residual(hi) > 0.0) {
    hi += width;
    width *= 2.0;
    ++iterations;
    if (hi > kLogLimit) throw NumericalError("invert_p: target too small to bracket");
  }

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    ++iterations;
    if (std::fabs(r) <= tol) return {std::exp(mid), iterations};
    (r > 0.0 ? lo : hi) = mid;
  }

  // Safeguarded secant between the two latest iterates, falling back to
  // bisection whenever the step leaves the bracket.
  double u0 = lo;
  double u1 = hi;
  double r0 = residual(u0);
  double r1 = residual(u1);
  for (int k = 0; k < 200; ++k) {
    ++iterations;
    double next = (r1 != r0) ? u1 - r1 * (u1 - u0) / (r1 - r0) : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double r = residual(next);
    if (std::fabs(r) <= tol) return {std::exp(next), iterations};
    (r > 0.0 ? lo : hi) = next;
    u0 = u1;
    r0 = r1;
    u1 = next;
    r1 = r;
  }
  throw NumericalError("invert_p: root finder did not converge");
}

}  // namespace msfou
