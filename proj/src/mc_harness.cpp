#include "msfou/mc_harness.hpp"

#include <cmath>
#include <exception>
#include <memory>
#include <stdexcept>
#include <string>

#include "msfou/errors.hpp"
#include "msfou/mle.hpp"
#include "msfou/rng.hpp"

namespace msfou {

std::size_t ExperimentConfig::steps() const {
  if (!(d > 0.0) || !(T > 0.0)) return 0;
  return static_cast<std::size_t>(std::llround(T / d));
}

void ExperimentConfig::validate() const {
  if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("config: H must lie in (0, 1)");
  if (!(d > 0.0)) throw std::invalid_argument("config: d must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("config: T must be positive");
  if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
  if (steps() < 2) throw std::invalid_argument("config: round(T / d) must be >= 2");
  if (!std::isfinite(theta_true) || !std::isfinite(x0)) {
    throw std::invalid_argument("config: theta_true and x0 must be finite");
  }
  if (parallel.workers < 0) throw std::invalid_argument("config: workers must be >= 0");
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t replication) {
  return derive_stream_seed(master_seed, static_cast<std::uint64_t>(replication));
}

namespace {

class PathSource {
 public:
  explicit PathSource(const ExperimentConfig& cfg) : cfg_(cfg), steps_(cfg.steps()) {
    cfg.validate();
    if (!cfg.hooks.zero_noise) {
      sim_ = std::make_unique<MsfouSimulator>(HurstParam(cfg.H), cfg.d, steps_, cfg.noise);
    }
  }

  SamplePath operator()(std::size_t r) const {
    if (sim_) return sim_->simulate(cfg_.theta_true, replication_seed(cfg_.master_seed, r), cfg_.x0);
    return euler_msfou(cfg_.theta_true, SamplePath(cfg_.d, std::vector<double>(steps_, 0.0)),
                       cfg_.x0);
  }

 private:
  const ExperimentConfig& cfg_;
  std::size_t steps_;
  std::unique_ptr<MsfouSimulator> sim_;
};

std::optional<double> evaluate(const PathStatistic& statistic, const SamplePath& path) {
  try {
    const double v = statistic(path);
    if (std::isfinite(v)) return v;
  } catch (const EstimationError&) {
  } catch (const NumericalError&) {
  }
  return std::nullopt;
}

}  // namespace

SamplePath simulate_replication(const ExperimentConfig& cfg, std::size_t replication) {
  return PathSource(cfg)(replication);
}

std::vector<std::optional<double>> map_replications(const ExperimentConfig& cfg,
                                                    const PathStatistic& statistic) {
  const PathSource source(cfg);
  std::vector<std::optional<double>> out(cfg.replications);
  std::exception_ptr error;
  const int workers = resolve_workers(cfg.parallel);
  const long long count = static_cast<long long>(cfg.replications);

#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
  for (long long r = 0; r < count; ++r) {
    try {
      out[r] = evaluate(statistic, source(static_cast<std::size_t>(r)));
    } catch (...) {
#pragma omp critical(msfou_mc_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<std::optional<double>> map_replications_serial(const ExperimentConfig& cfg,
                                                           const PathStatistic& statistic) {
  const PathSource source(cfg);
  std::vector<std::optional<double>> out(cfg.replications);
  for (std::size_t r = 0; r < cfg.replications; ++r) out[r] = evaluate(statistic, source(r));
  return out;
}

std::vector<std::optional<double>> replicate_estimates(const ExperimentConfig& cfg) {
  cfg.validate();
  const HurstParam h(cfg.H);
  if (cfg.hooks.force_exact_estimate) {
    return map_replications(cfg, [&](const SamplePath&) { return cfg.theta_true; });
  }
  switch (cfg.estimator) {
    case EstimatorMethod::kPractical:
      return map_replications(cfg, [&](const SamplePath& x) {
        return practical_estimator(x, h).theta_hat;
      });
    case EstimatorMethod::kNonergodic:
      return map_replications(cfg, [](const SamplePath& x) {
        return nonergodic_estimator(x).theta_hat;
      });
    case EstimatorMethod::kLseSkorohod: {
      const LseCorrection corr =
          lse_correction(cfg.theta_true, h, cfg.d * static_cast<double>(cfg.steps()));
      return map_replications(cfg, [&](const SamplePath& x) {
        return lse_skorohod(x, h, corr).theta_hat;
      });
    }
    case EstimatorMethod::kMle: {
      const MartingaleKernelFamily family(h, cfg.d, cfg.steps(), cfg.mle_mesh, 128, cfg.parallel);
      return map_replications(cfg, [&](const SamplePath& x) { return mle(x, family).theta_hat; });
    }
  }
  throw std::logic_error("unhandled estimator");
}

SummaryStats summarize_outcomes(std::span<const std::optional<double>> outcomes) {
  std::vector<double> ok;
  ok.reserve(outcomes.size());
  for (const auto& v : outcomes) {
    if (v) ok.push_back(*v);
  }
  if (ok.empty()) throw EstimationError("all replications failed");
  return summarize(ok, outcomes.size() - ok.size());
}

SummaryStats run_table_experiment(const ExperimentConfig& cfg) {
  const auto outcomes = replicate_estimates(cfg);
  return summarize_outcomes(outcomes);
}

CltResult run_clt_experiment(const ExperimentConfig& cfg) {
  if (cfg.estimator != EstimatorMethod::kPractical) {
    throw std::invalid_argument("mc-clt: estimator must be practical");
  }
  if (!(cfg.H > 0.5 && cfg.H < 0.75)) throw std::invalid_argument("mc-clt: requires 1/2 < H < 3/4");
  const HurstParam h(cfg.H);
  const auto outcomes = replicate_estimates(cfg);

  CltResult out;
  std::size_t failed = 0;
  for (const auto& v : outcomes) {
    if (!v) {
      ++failed;
      continue;
    }
    out.phi.push_back(phi_statistic(*v, cfg.theta_true, h, cfg.steps(), cfg.d));
  }
  if (out.phi.empty()) throw EstimationError("all replications failed");
  out.stats = summarize(out.phi, failed);
  return out;
}

double rate_scale(double T, HurstParam h) {
  switch (h.regime()) {
    case HurstRegime::kBoundary: return std::sqrt(T / std::log(T));
    case HurstRegime::kRosenblatt: return std::pow(T, 2.0 - 2.0 * h.value());
    default: return std::sqrt(T);
  }
}

std::vector<RateRow> run_rate_experiment(const ExperimentConfig& cfg,
                                         std::span<const double> T_grid) {
  if (cfg.estimator != EstimatorMethod::kLseSkorohod) {
    throw std::invalid_argument("mc-rate: estimator must be lse");
  }
  if (T_grid.empty()) throw std::invalid_argument("mc-rate: empty T grid");
  const HurstParam h(cfg.H);
  std::vector<RateRow> rows;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    ExperimentConfig c = cfg;
    c.T = T_grid[i];
    c.master_seed = derive_stream_seed(cfg.master_seed, static_cast<std::uint64_t>(i) + 1);
    const auto outcomes = replicate_estimates(c);
    const double horizon = c.d * static_cast<double>(c.steps());
    const double scale = rate_scale(horizon, h);
    std::vector<std::optional<double>> scaled(outcomes.size());
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      if (outcomes[r]) scaled[r] = scale * (*outcomes[r] - cfg.theta_true);
    }
    rows.push_back(RateRow{horizon, scale, summarize_outcomes(scaled)});
  }
  return rows;
}

}  // namespace msfou
