#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "msfou/hurst.hpp"
#include "msfou/parallel.hpp"

namespace msfou {

/// Mesh on [0, 1] graded algebraically toward both endpoints, where the
/// solution behaves like s^(2H-1) and (1-s)^(2H-1). Nodes are stored both as
/// distance from 0 and distance from 1 so that differences of nearby nodes
/// close to either end keep full relative precision.
class GradedMesh {
 public:
  GradedMesh(std::size_t cells, double grading);

  std::size_t cells() const { return from_left_.size() - 1; }
  double grading() const { return grading_; }
  double node(std::size_t i) const { return from_left_[i]; }
  double from_right(std::size_t i) const { return from_right_[i]; }
  /// node(k) - node(i) without cancellation.
  double difference(std::size_t k, std::size_t i) const;
  double width(std::size_t k) const { return difference(k + 1, k); }
  std::span<const double> nodes() const { return from_left_; }

  /// Grading exponent 2 / (2H - 1), clamped to [1, 8].
  static double default_grading(HurstParam h);

 private:
  std::vector<double> from_left_;
  std::vector<double> from_right_;
  double grading_;
};

class GKernel;

/// Nystrom discretization of the fundamental-martingale equation
///
///   g(s, t) + int_0^t g(r, t) kappa(r, s) dr = 1.
///
/// With r = t y and s = t x the equation on [0, t] becomes
/// g + t^(2H-1) K g = 1 on [0, 1], so one assembled operator K serves every
/// horizon t. g is represented by its piecewise-linear interpolant on a
/// GradedMesh; |y - x|^(2H-2) and (y + x)^(2H-2) are integrated exactly
/// against each hat function, so the singular diagonal is never evaluated.
class KernelOperator {
 public:
  KernelOperator(HurstParam h, std::size_t cells, Parallelism parallel = {});
  KernelOperator(HurstParam h, GradedMesh mesh, Parallelism parallel = {});

  HurstParam hurst() const { return h_; }
  const GradedMesh& mesh() const { return mesh_; }
  /// K: row i holds the weights of the collocation equation at node i.
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// Weights of int_0^1 g(y) kappa(y, x) dy for an arbitrary x >= 0, given
  /// as x and 1 - x (the latter exact for x near 1).
  Eigen::VectorXd weights_at(double x, double one_minus_x) const;

 private:
  HurstParam h_;
  GradedMesh mesh_;
  Eigen::MatrixXd matrix_;
};

/// g(., t) on [0, t] for one horizon t.
class GKernel {
 public:
  static GKernel solve(std::shared_ptr<const KernelOperator> op, double horizon);
  static GKernel solve(double horizon, HurstParam h, std::size_t cells,
                       Parallelism parallel = {});

  double horizon() const { return horizon_; }
  std::size_t cells() const { return values_.size() - 1; }
  HurstParam hurst() const { return op_->hurst(); }

  /// Collocation nodes scaled to [0, t].
  double node(std::size_t j) const { return horizon_ * op_->mesh().node(j); }
  /// g(node_j, t); g(0, t) = 1 since kappa(r, 0) = 0.
  std::span<const double> node_values() const { return values_; }

  /// Piecewise-linear value for s in [0, t]; beyond t the Nystrom
  /// interpolant is used, since the equation also defines g(s, t) for s > t.
  double value_at(double s) const;
  /// 1 - int_0^t g(r, t) kappa(r, s) dr with the discrete g, for any s >= 0.
  double extend(double s) const;

  /// int_0^t g(s, t) ds for the piecewise-linear representation.
  double integral() const;
  /// g(t, t).
  double diagonal() const { return values_.back(); }
  /// max_i |(I + K) g - 1| at the collocation nodes.
  double residual() const { return residual_; }

 private:
  GKernel(std::shared_ptr<const KernelOperator> op, double horizon,
          std::vector<double> values, double residual)
      : op_(std::move(op)), horizon_(horizon), values_(std::move(values)),
        residual_(residual) {}

  std::shared_ptr<const KernelOperator> op_;
  double horizon_;
  std::vector<double> values_;
  double residual_;
};

/// g on the mesh s_1 < ... < s_m = t together with the diagonal g(s_j, s_j)
/// (one solve per mesh point) and <M>_{s_j} = int_0^{s_j} g(s, s)^2 ds.
struct KernelSolution {
  double t = 0.0;
  std::vector<double> mesh;
  std::vector<double> g_values;   // g(s_j, t)
  std::vector<double> g_diag;     // g(s_j, s_j)
  std::vector<double> bracket_M;  // <M>_{s_j}
  double integral_g = 0.0;        // int_0^t g(s, t) ds
  double residual = 0.0;          // worst discrete residual over all solves
};

/// Requires t > 0, H >= 1/2 and 8 <= m <= 4096.
KernelSolution solve_g_kernel(double t, HurstParam h, std::size_t m = 256,
                              Parallelism parallel = {});

namespace detail {

struct CellMoments {
  double m0 = 0.0;  // int_o^{o+1} |y|^a dy
  double m1 = 0.0;  // int_o^{o+1} (y - o) |y|^a dy
};

/// Moments over a unit cell at signed offset `offset` from the pole. Closed
/// form within two widths of the pole, 8-point Gauss-Legendre elsewhere.
CellMoments unit_cell_moments(double offset, double a);

/// K assembled row-parallel with OpenMP.
Eigen::MatrixXd assemble_kernel(HurstParam h, const GradedMesh& mesh, Parallelism parallel);
/// Serial reference for assemble_kernel; kept for testing and benchmarks.
Eigen::MatrixXd assemble_kernel_serial(HurstParam h, const GradedMesh& mesh);

}  // namespace detail

}  // namespace msfou
