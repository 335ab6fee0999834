#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "msfou/estimators.hpp"
#include "msfou/gaussian_noise.hpp"
#include "msfou/parallel.hpp"
#include "msfou/process_paths.hpp"
#include "msfou/summary_stats.hpp"

namespace msfou {

/// Test-only switches.
struct TestHooks {
  bool zero_noise = false;            // drive the Euler scheme with xi = 0
  bool force_exact_estimate = false;  // report theta_true instead of estimating
};

struct ExperimentConfig {
  double theta_true = 1.0;
  double H = 0.65;
  double d = 1.0 / 250.0;
  double T = 20.0;
  std::size_t replications = 1000;
  std::uint64_t master_seed = 0;
  EstimatorMethod estimator = EstimatorMethod::kPractical;
  double x0 = 0.0;
  std::size_t mle_mesh = 128;
  NoiseMethod noise = NoiseMethod::kCirculantExact;
  Parallelism parallel;
  TestHooks hooks;

  /// N = round(T / d).
  std::size_t steps() const;
  /// Throws std::invalid_argument on a malformed config.
  void validate() const;
};

/// Seed of replication r; independent of scheduling and worker count.
std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t replication);

/// The path of replication r.
SamplePath simulate_replication(const ExperimentConfig& cfg, std::size_t replication);

/// Applies `statistic` to every replication's path, in parallel over
/// replications. Entry r is empty when the statistic threw an estimation or
/// numerical error, or returned a non-finite value. Output order is the
/// replication index, whatever the worker count.
using PathStatistic = std::function<double(const SamplePath&)>;
std::vector<std::optional<double>> map_replications(const ExperimentConfig& cfg,
                                                    const PathStatistic& statistic);
/// Serial reference for map_replications.
std::vector<std::optional<double>> map_replications_serial(const ExperimentConfig& cfg,
                                                           const PathStatistic& statistic);

/// The configured estimator applied to every replication.
std::vector<std::optional<double>> replicate_estimates(const ExperimentConfig& cfg);

/// Aggregates the successful entries; throws EstimationError if none succeeded.
SummaryStats summarize_outcomes(std::span<const std::optional<double>> outcomes);

SummaryStats run_table_experiment(const ExperimentConfig& cfg);

struct CltResult {
  std::vector<double> phi;  // successful replications, in index order
  SummaryStats stats;
};

/// Phi statistic of the practical estimator; requires 1/2 < H < 3/4.
CltResult run_clt_experiment(const ExperimentConfig& cfg);

struct RateRow {
  double T = 0.0;
  double scale = 0.0;  // multiplier applied to (LSE - theta)
  SummaryStats stats;  // of the scaled errors
};

/// Scaled LSE errors per horizon: sqrt(T) for H < 3/4, sqrt(T / log T) at
/// H = 3/4, T^(2-2H) above. Requires the LSE estimator.
std::vector<RateRow> run_rate_experiment(const ExperimentConfig& cfg,
                                         std::span<const double> T_grid);

/// Rate multiplier used by run_rate_experiment.
double rate_scale(double T, HurstParam h);

}  // namespace msfou
