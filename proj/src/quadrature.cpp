#include "msfou/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "msfou/errors.hpp"
#include "msfou/special_functions.hpp"

namespace msfou {

namespace {

constexpr int kPanelOrder = 16;
constexpr int kMaxRefinements = 10;

GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                       double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) jacobi(i, i) = diag(i);
  for (int i = 1; i < n; ++i) {
    jacobi(i, i - 1) = offdiag(i);
    jacobi(i - 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

struct Panel {
  double lo;
  double hi;
};

std::vector<Panel> panel_layout(double lo, double hi, double scale, int panels) {
  const double graded_end = std::min(hi, scale);
  const int levels = panels / 2 + 2;
  std::vector<double> cuts{0.0};
  for (int k = levels; k >= 0; --k) cuts.push_back(graded_end * std::ldexp(1.0, -k));
  if (hi > graded_end) {
    const double width = 2.0 * scale / panels;
    const auto count = static_cast<long>(std::ceil((hi - graded_end) / width));
    for (long k = 1; k <= count; ++k) {
      cuts.push_back(std::min(hi, graded_end + width * static_cast<double>(k)));
    }
  }

  std::vector<Panel> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], lo);
    const double b = std::min(cuts[i + 1], hi);
    if (b > a) out.push_back({a, b});
  }
  return out;
}

double integrate_layout(const std::function<double(double)>& f, double a,
                        const std::vector<Panel>& layout, const GaussRule& legendre,
                        const GaussRule& jacobi) {
  double total = 0.0;
  for (const auto& p : layout) {
    const double half = 0.5 * (p.hi - p.lo);
    double sum = 0.0;
    if (p.lo == 0.0) {
      for (std::size_t i = 0; i < jacobi.nodes.size(); ++i) {
        sum += jacobi.weights[i] * f(half * (jacobi.nodes[i] + 1.0));
      }
      total += std::pow(half, a + 1.0) * sum;
    } else {
      for (std::size_t i = 0; i < legendre.nodes.size(); ++i) {
        const double u = p.lo + half * (legendre.nodes[i] + 1.0);
        sum += legendre.weights[i] * std::pow(u, a) * f(u);
      }
      total += half * sum;
    }
  }
  return total;
}

}  // namespace

GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  }
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd offdiag = Eigen::VectorXd::Zero(n);
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (two_k_ab * (two_k_ab + 2.0));
  }
  if (n > 1) {
    offdiag(1) = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) /
                           ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
  }
  for (int k = 2; k < n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    offdiag(k) = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                           (two_k_ab * two_k_ab * (two_k_ab + 1.0) * (two_k_ab - 1.0)));
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * gamma_fn(alpha + 1.0) *
                     gamma_fn(beta + 1.0) / gamma_fn(ab + 2.0);
  return golub_welsch(diag, offdiag, mu0);
}

void QuadratureSpec::validate() const {
  if (panels < 4) throw std::invalid_argument("QuadratureSpec: panels must be >= 4");
  if (!(tol > 0.0)) throw std::invalid_argument("QuadratureSpec: tol must be positive");
  if (!(singular_exponent > -1.0 && singular_exponent < 0.0)) {
    throw std::invalid_argument(
        "QuadratureSpec: singular exponent must lie in (-1, 0), got " +
        std::to_string(singular_exponent));
  }
}

QuadratureResult integrate_power_weighted(const std::function<double(double)>& f,
                                          double lo, double hi, double scale,
                                          const QuadratureSpec& q) {
  q.validate();
  if (!(lo >= 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("integrate_power_weighted: need 0 <= lo <= hi");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_power_weighted: scale must be positive");
  if (hi == lo) return {};

  const double a = q.singular_exponent;
  const GaussRule legendre = gauss_legendre(kPanelOrder);
  const GaussRule jacobi = gauss_jacobi(kPanelOrder, 0.0, a);

  int panels = q.panels;
  double previous = integrate_layout(f, a, panel_layout(lo, hi, scale, panels), legendre, jacobi);
  for (int r = 1; r <= kMaxRefinements; ++r) {
    panels *= 2;
    const double current =
        integrate_layout(f, a, panel_layout(lo, hi, scale, panels), legendre, jacobi);
    const double diff = std::fabs(current - previous);
    if (diff <= q.tol) return {current, diff, r};
    previous = current;
  }
  throw NumericalError("integrate_power_weighted: no convergence to tol " +
                       std::to_string(q.tol));
}

}  // namespace msfou
