#include "msfou/kernel_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "msfou/errors.hpp"
#include "msfou/quadrature.hpp"

namespace msfou {

GradedMesh::GradedMesh(std::size_t cells, double grading) : grading_(grading) {
  if (cells < 1) throw std::invalid_argument("GradedMesh: need at least one cell");
  if (!(grading >= 1.0)) throw std::invalid_argument("GradedMesh: grading must be >= 1");
  from_left_.resize(cells + 1);
  from_right_.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(cells);
    if (2 * i <= cells) {
      from_left_[i] = 0.5 * std::pow(2.0 * x, grading);
      from_right_[i] = 1.0 - from_left_[i];
    } else {
      from_right_[i] =
          0.5 * std::pow(2.0 * static_cast<double>(cells - i) / static_cast<double>(cells),
                         grading);
      from_left_[i] = 1.0 - from_right_[i];
    }
  }
}

double GradedMesh::difference(std::size_t k, std::size_t i) const {
  const bool k_right = from_left_[k] > 0.5;
  const bool i_right = from_left_[i] > 0.5;
  if (k_right && i_right) return from_right_[i] - from_right_[k];
  return from_left_[k] - from_left_[i];
}

double GradedMesh::default_grading(HurstParam h) {
  const double gamma = 2.0 * h.value() - 1.0;
  if (!(gamma > 0.0)) return 1.0;
  return std::clamp(2.0 / gamma, 1.0, 8.0);
}

namespace detail {

namespace {

const GaussRule& far_cell_rule() {
  static const GaussRule rule = gauss_legendre(8);
  return rule;
}

double signed_power(double y, double p) { return std::copysign(std::pow(std::fabs(y), p), y); }

// Integral of the hat function at node j against |y - pole|^a, where
// offset(k) is the signed distance of cell k's left end from the pole in
// units of the cell width.
template <typename Offset>
double hat_moment(const GradedMesh& mesh, std::size_t j, double a, Offset offset) {
  const std::size_t n = mesh.cells();
  double w = 0.0;
  if (j >= 1) {
    const std::size_t k = j - 1;
    w += std::pow(mesh.width(k), a + 1.0) * unit_cell_moments(offset(k), a).m1;
  }
  if (j < n) {
    const CellMoments right = unit_cell_moments(offset(j), a);
    w += std::pow(mesh.width(j), a + 1.0) * (right.m0 - right.m1);
  }
  return w;
}

void fill_row(HurstParam h, const GradedMesh& mesh, std::size_t i, Eigen::MatrixXd& out) {
  const double a = h.singular_exponent();
  const double alpha = h.alpha();
  const std::size_t n = mesh.cells();
  for (std::size_t j = 0; j <= n; ++j) {
    const double near = hat_moment(mesh, j, a, [&](std::size_t k) {
      return mesh.difference(k, i) / mesh.width(k);
    });
    const double mirror = hat_moment(mesh, j, a, [&](std::size_t k) {
      return (mesh.node(k) + mesh.node(i)) / mesh.width(k);
    });
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = alpha * (near - mirror);
  }
}

}  // namespace

CellMoments unit_cell_moments(double offset, double a) {
  const double lo = offset;
  const double hi = offset + 1.0;
  const double distance = lo > 0.0 ? lo : (hi < 0.0 ? -hi : 0.0);

  CellMoments out;
  if (distance < 2.0) {
    const double p0 = a + 1.0;
    const double p1 = a + 2.0;
    out.m0 = (signed_power(hi, p0) - signed_power(lo, p0)) / p0;
    out.m1 = (std::pow(std::fabs(hi), p1) - std::pow(std::fabs(lo), p1)) / p1 - lo * out.m0;
    return out;
  }
  const auto& rule = far_cell_rule();
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = 0.5 * (rule.nodes[q] + 1.0);
    const double w = 0.5 * rule.weights[q] * std::pow(std::fabs(lo + x), a);
    out.m0 += w;
    out.m1 += w * x;
  }
  return out;
}

Eigen::MatrixXd assemble_kernel_serial(HurstParam h, const GradedMesh& mesh) {
  const auto size = static_cast<Eigen::Index>(mesh.cells() + 1);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(size, size);
  if (h.is_brownian()) return k;
  for (std::size_t i = 0; i <= mesh.cells(); ++i) fill_row(h, mesh, i, k);
  return k;
}

Eigen::MatrixXd assemble_kernel(HurstParam h, const GradedMesh& mesh, Parallelism parallel) {
  const auto size = static_cast<Eigen::Index>(mesh.cells() + 1);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(size, size);
  if (h.is_brownian()) return k;
  const int workers = resolve_workers(parallel);
  const long long rows = static_cast<long long>(size);
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers) if (workers > 1)
  for (long long i = 0; i < rows; ++i) fill_row(h, mesh, static_cast<std::size_t>(i), k);
  return k;
}

}  // namespace detail

KernelOperator::KernelOperator(HurstParam h, std::size_t cells, Parallelism parallel)
    : KernelOperator(h, GradedMesh(cells, GradedMesh::default_grading(h)), parallel) {}

KernelOperator::KernelOperator(HurstParam h, GradedMesh mesh, Parallelism parallel)
    : h_(h), mesh_(std::move(mesh)) {
  if (h.value() < 0.5) throw std::invalid_argument("KernelOperator: requires H >= 1/2");
  matrix_ = detail::assemble_kernel(h_, mesh_, parallel);
}

Eigen::VectorXd KernelOperator::weights_at(double x, double one_minus_x) const {
  const std::size_t n = mesh_.cells();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 1));
  if (h_.is_brownian()) return w;
  const double a = h_.singular_exponent();
  for (std::size_t j = 0; j <= n; ++j) {
    const double near = detail::hat_moment(mesh_, j, a, [&](std::size_t k) {
      const double diff = mesh_.node(k) > 0.5 ? one_minus_x - mesh_.from_right(k)
                                              : mesh_.node(k) - x;
      return diff / mesh_.width(k);
    });
    const double mirror = detail::hat_moment(mesh_, j, a, [&](std::size_t k) {
      return (mesh_.node(k) + x) / mesh_.width(k);
    });
    w(static_cast<Eigen::Index>(j)) = h_.alpha() * (near - mirror);
  }
  return w;
}

GKernel GKernel::solve(std::shared_ptr<const KernelOperator> op, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("GKernel: horizon must be positive");
  const auto size = op->matrix().rows();
  if (op->hurst().is_brownian()) {
    return GKernel(std::move(op), horizon, std::vector<double>(size, 1.0), 0.0);
  }

  const double coupling = std::pow(horizon, 2.0 * op->hurst().value() - 1.0);
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(size, size) + coupling * op->matrix();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(size);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-13)) {
    throw NumericalError("Nystrom system is numerically singular (rcond " +
                         std::to_string(lu.rcond()) + ")");
  }
  Eigen::VectorXd g = lu.solve(ones);
  g += lu.solve(ones - a * g);  // one step of iterative refinement
  const double residual = (a * g - ones).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual)) throw NumericalError("Nystrom solve produced non-finite values");
  return GKernel(std::move(op), horizon, std::vector<double>(g.data(), g.data() + g.size()),
                 residual);
}

GKernel GKernel::solve(double horizon, HurstParam h, std::size_t cells, Parallelism parallel) {
  return solve(std::make_shared<const KernelOperator>(h, cells, parallel), horizon);
}

double GKernel::value_at(double s) const {
  if (s < 0.0) throw std::domain_error("GKernel::value_at: s must be nonnegative");
  if (s > horizon_) return extend(s);
  const auto nodes = op_->mesh().nodes();
  const double x = s / horizon_;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  std::size_t k = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  k = std::min(k, cells() - 1);
  const double frac = (x - nodes[k]) / op_->mesh().width(k);
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double GKernel::extend(double s) const {
  if (s < 0.0) throw std::domain_error("GKernel::extend: s must be nonnegative");
  if (hurst().is_brownian()) return 1.0;
  const Eigen::VectorXd w = op_->weights_at(s / horizon_, (horizon_ - s) / horizon_);
  const double coupling = std::pow(horizon_, 2.0 * hurst().value() - 1.0);
  const Eigen::Map<const Eigen::VectorXd> g(values_.data(), static_cast<Eigen::Index>(values_.size()));
  return 1.0 - coupling * w.dot(g);
}

double GKernel::integral() const {
  const auto& mesh = op_->mesh();
  double sum = 0.0;
  for (std::size_t k = 0; k < cells(); ++k) {
    sum += 0.5 * mesh.width(k) * (values_[k] + values_[k + 1]);
  }
  return horizon_ * sum;
}

KernelSolution solve_g_kernel(double t, HurstParam h, std::size_t m, Parallelism parallel) {
  if (!(t > 0.0)) throw std::invalid_argument("solve_g_kernel: t must be positive");
  if (m < 8 || m > 4096) {
    throw std::invalid_argument("solve_g_kernel: mesh size must lie in [8, 4096], got " +
                                std::to_string(m));
  }

  const auto op = std::make_shared<const KernelOperator>(h, m, parallel);
  const GKernel full = GKernel::solve(op, t);

  KernelSolution out;
  out.t = t;
  out.mesh.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.mesh[j] = full.node(j + 1);
  out.mesh.back() = t;
  out.g_values.assign(full.node_values().begin() + 1, full.node_values().end());
  out.g_diag.resize(m);
  out.bracket_M.resize(m);
  out.integral_g = full.integral();

  // g(s_j, s_j) solves the same scaled equation with horizon s_j.
  std::vector<double> residuals(m, 0.0);
  const long long count = static_cast<long long>(m);
  const int workers = resolve_workers(parallel);
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
  for (long long j = 0; j < count; ++j) {
    const GKernel diag = GKernel::solve(op, out.mesh[static_cast<std::size_t>(j)]);
    out.g_diag[j] = diag.diagonal();
    residuals[j] = diag.residual();
  }

  double bracket = 0.0;
  double previous_s = 0.0;
  double previous_g = 1.0;  // g(0, 0)
  for (std::size_t j = 0; j < m; ++j) {
    const double ds = out.mesh[j] - previous_s;
    bracket += 0.5 * ds * (previous_g * previous_g + out.g_diag[j] * out.g_diag[j]);
    out.bracket_M[j] = bracket;
    previous_s = out.mesh[j];
    previous_g = out.g_diag[j];
  }
  out.residual = std::max(full.residual(), *std::max_element(residuals.begin(), residuals.end()));
  return out;
}

}  // namespace msfou
