#include "msfou/mle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "msfou/errors.hpp"

namespace msfou {

MartingaleKernelFamily::MartingaleKernelFamily(HurstParam h, double spacing, std::size_t steps,
                                               std::size_t m, std::size_t kernel_cells,
                                               Parallelism parallel)
    : h_(h), spacing_(spacing), steps_(steps) {
  if (h.value() < 0.5) throw std::invalid_argument("mle: requires H >= 1/2");
  if (!(spacing > 0.0)) throw std::invalid_argument("mle: spacing must be positive");
  if (m < 8) throw std::invalid_argument("mle: mesh size must be at least 8");
  if (steps < m) {
    throw std::invalid_argument("mle: path has " + std::to_string(steps) +
                                " steps, fewer than the mesh size " + std::to_string(m));
  }

  index_.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    index_[k] = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(steps) / static_cast<double>(m)));
  }

  const auto op = std::make_shared<const KernelOperator>(h, kernel_cells, parallel);
  std::vector<std::optional<GKernel>> kernels(m + 1);
  std::vector<double> residuals(m + 1, 0.0);
  const int workers = resolve_workers(parallel);
  const long long count = static_cast<long long>(m);

#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
  for (long long k = 1; k <= count; ++k) {
    kernels[k] = GKernel::solve(op, mesh_time(static_cast<std::size_t>(k)));
    residuals[k] = kernels[k]->residual();
  }

  // g(., 0) = 1 everywhere: the equation has an empty integral at t = 0.
  auto g_at = [&](std::size_t k, double s) { return k == 0 ? 1.0 : kernels[k]->value_at(s); };

  diag_.resize(m + 1);
  bracket_.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    diag_[k] = k == 0 ? 1.0 : kernels[k]->diagonal();
    if (h.is_brownian() || k == 0) {
      bracket_[k] = mesh_time(k);
    } else {
      bracket_[k] = kernels[k]->integral();
    }
    residual_ = std::max(residual_, residuals[k]);
  }

  g_rows_.resize(m + 1);
  dg_rows_.resize(m + 1);
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
  for (long long kk = 0; kk <= count; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const std::size_t top = index_[k];
    auto& g = g_rows_[k];
    auto& dg = dg_rows_[k];
    g.resize(top + 1);
    dg.assign(top + 1, 0.0);
    for (std::size_t i = 0; i <= top; ++i) g[i] = g_at(k, spacing_ * static_cast<double>(i));
    if (k == 0 || h.is_brownian()) continue;
    const std::size_t lo = k - 1;
    const std::size_t hi = k == m ? m : k + 1;
    const double dt = mesh_time(hi) - mesh_time(lo);
    for (std::size_t i = 0; i <= top; ++i) {
      const double s = spacing_ * static_cast<double>(i);
      dg[i] = (g_at(hi, s) - g_at(lo, s)) / dt;
    }
  }
}

MartingaleDecomposition MartingaleKernelFamily::decompose(const SamplePath& x) const {
  if (x.size() != steps_ || std::fabs(x.spacing() - spacing_) > 1e-12 * spacing_) {
    throw std::invalid_argument("mle: path grid does not match the kernel family");
  }
  const std::size_t m = mesh_size();
  MartingaleDecomposition out;
  out.mesh.resize(m + 1);
  out.Z.resize(m + 1);
  out.Q.resize(m + 1);
  out.bracket_M = bracket_;

  for (std::size_t k = 0; k <= m; ++k) {
    const std::size_t top = index_[k];
    const auto& g = g_rows_[k];
    const auto& dg = dg_rows_[k];
    double z = 0.0;
    for (std::size_t i = 0; i < top; ++i) z += g[i] * (x.at(i + 1) - x.at(i));

    double f = 0.0;
    if (top > 0) {
      f = 0.5 * (dg[0] * x.at(0) + dg[top] * x.at(top));
      for (std::size_t i = 1; i < top; ++i) f += dg[i] * x.at(i);
      f *= spacing_;
    }
    out.mesh[k] = mesh_time(k);
    out.Z[k] = z;
    out.Q[k] = (diag_[k] * x.at(top) + f) / (diag_[k] * diag_[k]);
  }
  return out;
}

MartingaleDecomposition decompose(const SamplePath& x, HurstParam h, std::size_t m) {
  return MartingaleKernelFamily(h, x.spacing(), x.size(), m).decompose(x);
}

EstimateResult mle(const MartingaleDecomposition& dec) {
  const std::size_t n = dec.mesh.size();
  if (n < 2 || dec.Z.size() != n || dec.Q.size() != n || dec.bracket_M.size() != n) {
    throw std::invalid_argument("mle: inconsistent decomposition");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dm = dec.bracket_M[k + 1] - dec.bracket_M[k];
    if (!(dm > 0.0)) throw EstimationError("degenerate <M> increment on the MLE mesh");
    num += dec.Q[k] * (dec.Z[k + 1] - dec.Z[k]);
    den += dec.Q[k] * dec.Q[k] * dm;
  }
  if (!(den > 0.0) || !std::isfinite(den) || !std::isfinite(num)) {
    throw EstimationError("int Q^2 d<M> is zero or not finite");
  }
  EstimateResult r;
  r.method = EstimatorMethod::kMle;
  r.theta_hat = -num / den;
  r.denominator = den;
  r.diagnostics["mesh_size"] = static_cast<double>(n - 1);
  r.diagnostics["numerator"] = num;
  return r;
}

EstimateResult mle(const SamplePath& x, const MartingaleKernelFamily& family) {
  EstimateResult r = mle(family.decompose(x));
  r.diagnostics["kernel_residual"] = family.residual();
  return r;
}

EstimateResult mle(const SamplePath& x, HurstParam h, std::size_t m) {
  return mle(x, MartingaleKernelFamily(h, x.spacing(), x.size(), m));
}

}  // namespace msfou
