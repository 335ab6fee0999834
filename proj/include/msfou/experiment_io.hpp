#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msfou/estimators.hpp"
#include "msfou/mc_harness.hpp"

namespace msfou {

/// Config JSON uses the ExperimentConfig field names: theta_true, H, d, T,
/// replications, master_seed, estimator, x0, plus the optional mle_mesh,
/// noise ("circulant" or "spectral") and workers. Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view json_text);
/// Accepts a single object or an array of objects.
std::vector<ExperimentConfig> parse_configs(std::string_view json_text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal that round-trips the double.
std::string format_real(double v);

struct TableRow {
  ExperimentConfig cfg;
  SummaryStats stats;
};

/// theta_true,H,d,T,reps,mean,median,sdev,n_failed
std::string table_csv(std::span<const TableRow> rows);
/// One phi value per line under header `phi`.
std::string phi_csv(std::span<const double> phi);
std::string stats_json(const SummaryStats& stats);
/// T,scale,reps,mean,median,sdev,skewness,kurtosis,n_failed
std::string rate_csv(std::span<const RateRow> rows);
std::string estimate_json(const EstimateResult& r);

}  // namespace msfou
