#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "msfou/estimators.hpp"
#include "msfou/hurst.hpp"
#include "msfou/kernel_solver.hpp"
#include "msfou/parallel.hpp"
#include "msfou/process_paths.hpp"

namespace msfou {

/// Z, Q and <M> at the mesh times t_0 = 0 < t_1 < ... < t_m = T.
struct MartingaleDecomposition {
  std::vector<double> mesh;
  std::vector<double> Z;
  std::vector<double> Q;
  std::vector<double> bracket_M;
};

/// Everything in the decomposition that does not depend on the path: for a
/// fixed (H, d, N, m) the kernels g(., t_k) and their time derivatives are
/// tabulated once on the observation grid and reused for every path.
///
/// Mesh time t_k sits on observation index round(k N / m). With
/// F(t) = int_0^t g(s, t) X_s ds and d<M>_t = g(t, t)^2 dt,
///
///   Q_t = (g(t, t) X_t + int_0^t d/dt g(s, t) X_s ds) / g(t, t)^2,
///
/// where d/dt g is a centered difference between neighbouring mesh times
/// (one-sided at t_m), using the equation's own extension of g(., t_{k-1})
/// past t_{k-1}. Z_t is the left-point sum of g(s_i, t) (X_{i+1} - X_i) and
/// <M>_t = int_0^t g(s, t) ds.
class MartingaleKernelFamily {
 public:
  MartingaleKernelFamily(HurstParam h, double spacing, std::size_t steps, std::size_t m = 128,
                         std::size_t kernel_cells = 128, Parallelism parallel = {});

  HurstParam hurst() const { return h_; }
  double spacing() const { return spacing_; }
  std::size_t steps() const { return steps_; }
  std::size_t mesh_size() const { return index_.size() - 1; }
  std::size_t mesh_index(std::size_t k) const { return index_[k]; }
  double mesh_time(std::size_t k) const { return spacing_ * static_cast<double>(index_[k]); }
  double bracket(std::size_t k) const { return bracket_[k]; }
  /// Largest Nystrom residual over the mesh solves.
  double residual() const { return residual_; }

  MartingaleDecomposition decompose(const SamplePath& x) const;

 private:
  HurstParam h_;
  double spacing_;
  std::size_t steps_;
  std::vector<std::size_t> index_;
  std::vector<double> diag_;     // g(t_k, t_k)
  std::vector<double> bracket_;  // <M>_{t_k}
  // Row k holds g(s_i, t_k) (resp. d/dt g(s_i, t_k)) for i = 0..index_[k].
  std::vector<std::vector<double>> g_rows_;
  std::vector<std::vector<double>> dg_rows_;
  double residual_ = 0.0;
};

/// Requires N >= m >= 8 and H >= 1/2.
MartingaleDecomposition decompose(const SamplePath& x, HurstParam h, std::size_t m = 128);

/// -sum Q_k (Z_{k+1} - Z_k) / sum Q_k^2 (<M>_{k+1} - <M>_k), k = 0..m-1.
EstimateResult mle(const MartingaleDecomposition& dec);
EstimateResult mle(const SamplePath& x, const MartingaleKernelFamily& family);
EstimateResult mle(const SamplePath& x, HurstParam h, std::size_t m = 128);

}  // namespace msfou
