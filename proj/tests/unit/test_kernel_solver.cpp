#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "msfou/kernel_solver.hpp"

using namespace msfou;

TEST(GradedMesh, SymmetricAndCancellationFree) {
  const GradedMesh mesh(64, 4.0);
  EXPECT_EQ(mesh.node(0), 0.0);
  EXPECT_EQ(mesh.from_right(64), 0.0);
  for (std::size_t i = 0; i <= 64; ++i) {
    EXPECT_NEAR(mesh.node(i), mesh.from_right(64 - i), 1e-15);
  }
  for (std::size_t k = 0; k < 64; ++k) EXPECT_GT(mesh.width(k), 0.0);
  // The last cell is tiny; its width must come out with full relative precision.
  EXPECT_NEAR(mesh.width(63) / mesh.width(0), 1.0, 1e-13);
  EXPECT_THROW(GradedMesh(0, 2.0), std::invalid_argument);
  EXPECT_THROW(GradedMesh(8, 0.5), std::invalid_argument);
}

TEST(UnitCellMoments, ClosedFormMatchesQuadratureAtHandoff) {
  const double a = -0.3;
  // Offsets just inside and outside the closed-form window should agree.
  const auto in = detail::unit_cell_moments(1.999999999, a);
  const auto out = detail::unit_cell_moments(2.000000001, a);
  EXPECT_NEAR(in.m0, out.m0, 1e-9);
  EXPECT_NEAR(in.m1, out.m1, 1e-9);
}

TEST(GKernel, BrownianCaseIsIdentity) {
  const auto sol = solve_g_kernel(2.5, HurstParam(0.5), 32);
  for (double g : sol.g_values) EXPECT_EQ(g, 1.0);
  for (double g : sol.g_diag) EXPECT_EQ(g, 1.0);
  for (std::size_t j = 0; j < sol.mesh.size(); ++j) EXPECT_NEAR(sol.bracket_M[j], sol.mesh[j], 1e-13);
  EXPECT_DOUBLE_EQ(sol.mesh.back(), 2.5);
}

TEST(GKernel, ResidualAndRefinement) {
  const HurstParam h(0.7);
  const auto coarse = GKernel::solve(1.0, h, 256);
  const auto fine = GKernel::solve(1.0, h, 512);
  EXPECT_LE(coarse.residual(), 1e-6);
  double worst = 0.0;
  for (std::size_t j = 0; j <= 256; ++j) {
    worst = std::max(worst, std::fabs(coarse.node_values()[j] - fine.node_values()[2 * j]));
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(GKernel, IntegralIdentity) {
  const auto sol = solve_g_kernel(1.0, HurstParam(0.65), 256);
  EXPECT_LE(sol.residual, 1e-6);
  EXPECT_LE(std::fabs(sol.integral_g - sol.bracket_M.back()), 1e-5);
}

TEST(GKernel, BracketNondecreasing) {
  const auto sol = solve_g_kernel(3.0, HurstParam(0.8), 64);
  EXPECT_GT(sol.bracket_M.front(), 0.0);
  for (std::size_t j = 1; j < sol.bracket_M.size(); ++j) {
    EXPECT_GE(sol.bracket_M[j], sol.bracket_M[j - 1]);
  }
}

TEST(GKernel, ExtensionAgreesAtNodes) {
  const auto g = GKernel::solve(2.0, HurstParam(0.68), 128);
  for (std::size_t j : {1u, 10u, 64u, 127u, 128u}) {
    EXPECT_NEAR(g.extend(g.node(j)), g.node_values()[j], 1e-9);
  }
  EXPECT_EQ(g.value_at(0.0), 1.0);
  // Beyond t the interpolant switches to the extension, which is continuous
  // but has a |s - t|^(2H-1) cusp at s = t.
  EXPECT_TRUE(std::isfinite(g.value_at(2.3)));
  double previous = INFINITY;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double gap = std::fabs(g.value_at(2.0 + eps) - g.diagonal());
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(GKernel, ScalingSharesOneOperator) {
  const HurstParam h(0.72);
  const auto op = std::make_shared<const KernelOperator>(h, 64);
  const auto a = GKernel::solve(op, 3.0);
  const auto b = GKernel::solve(3.0, h, 64);
  for (std::size_t j = 0; j <= 64; ++j) EXPECT_EQ(a.node_values()[j], b.node_values()[j]);
}

TEST(GKernel, SerialAndParallelAssemblyAgree) {
  const HurstParam h(0.66);
  const GradedMesh mesh(96, GradedMesh::default_grading(h));
  const auto serial = detail::assemble_kernel_serial(h, mesh);
  const auto parallel = detail::assemble_kernel(h, mesh, Parallelism{4});
  EXPECT_EQ((serial - parallel).cwiseAbs().maxCoeff(), 0.0);
}

TEST(GKernel, RejectsBadArguments) {
  EXPECT_THROW(solve_g_kernel(0.0, HurstParam(0.7), 64), std::invalid_argument);
  EXPECT_THROW(solve_g_kernel(1.0, HurstParam(0.7), 4), std::invalid_argument);
  EXPECT_THROW(solve_g_kernel(1.0, HurstParam(0.7), 5000), std::invalid_argument);
  EXPECT_THROW(solve_g_kernel(1.0, HurstParam(0.3), 64), std::invalid_argument);
}
