// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick
// a family; the parallel variants use the OpenMP default thread count.

#include <benchmark/benchmark.h>

#include "msfou/estimators.hpp"
#include "msfou/gaussian_noise.hpp"
#include "msfou/kernel_solver.hpp"
#include "msfou/mc_harness.hpp"
#include "msfou/mle.hpp"

using namespace msfou;

static void BM_AssembleKernelSerial(benchmark::State& state) {
  const HurstParam h(0.7);
  const GradedMesh mesh(static_cast<std::size_t>(state.range(0)), GradedMesh::default_grading(h));
  for (auto _ : state) benchmark::DoNotOptimize(detail::assemble_kernel_serial(h, mesh));
}
BENCHMARK(BM_AssembleKernelSerial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_AssembleKernelParallel(benchmark::State& state) {
  const HurstParam h(0.7);
  const GradedMesh mesh(static_cast<std::size_t>(state.range(0)), GradedMesh::default_grading(h));
  for (auto _ : state) benchmark::DoNotOptimize(detail::assemble_kernel(h, mesh, Parallelism{}));
}
BENCHMARK(BM_AssembleKernelParallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_SolveGKernel(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Parallelism p{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_g_kernel(1.0, HurstParam(0.7), m, p));
}
BENCHMARK(BM_SolveGKernel)->Args({128, 1})->Args({128, 0})->Args({256, 1})->Args({256, 0})
    ->Unit(benchmark::kMillisecond);

static void BM_MartingaleFamily(benchmark::State& state) {
  const Parallelism p{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(MartingaleKernelFamily(HurstParam(0.65), 0.01, 2000, 128, 128, p));
  }
}
BENCHMARK(BM_MartingaleFamily)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_FgnSample(benchmark::State& state) {
  const auto method = state.range(0) == 0 ? NoiseMethod::kCirculantExact : NoiseMethod::kSpectralApprox;
  const FgnGenerator gen(10000, HurstParam(0.65), method);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen.sample(seed++));
}
BENCHMARK(BM_FgnSample)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

namespace {

ExperimentConfig table_cell(int workers) {
  ExperimentConfig c;
  c.theta_true = 1.0;
  c.H = 0.65;
  c.d = 1.0 / 250;
  c.T = 20.0;
  c.replications = 64;
  c.master_seed = 1;
  c.parallel.workers = workers;
  return c;
}

}  // namespace

static void BM_ReplicationsSerial(benchmark::State& state) {
  const auto c = table_cell(1);
  const HurstParam h(c.H);
  auto stat = [&](const SamplePath& x) { return practical_estimator(x, h).theta_hat; };
  for (auto _ : state) benchmark::DoNotOptimize(map_replications_serial(c, stat));
}
BENCHMARK(BM_ReplicationsSerial)->Unit(benchmark::kMillisecond);

static void BM_ReplicationsParallel(benchmark::State& state) {
  const auto c = table_cell(0);
  const HurstParam h(c.H);
  auto stat = [&](const SamplePath& x) { return practical_estimator(x, h).theta_hat; };
  for (auto _ : state) benchmark::DoNotOptimize(map_replications(c, stat));
}
BENCHMARK(BM_ReplicationsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
