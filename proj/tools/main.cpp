// msfou command line: path simulation, single-path estimation and the
// Monte Carlo experiments.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "msfou/estimators.hpp"
#include "msfou/experiment_io.hpp"
#include "msfou/mc_harness.hpp"
#include "msfou/mle.hpp"
#include "msfou/path_io.hpp"
#include "msfou/process_paths.hpp"

using namespace msfou;

namespace {

NoiseMethod noise_from(const std::string& s) {
  return s == "spectral" ? NoiseMethod::kSpectralApprox : NoiseMethod::kCirculantExact;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad T-grid entry '" + item + "'");
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("empty T-grid");
  return grid;
}

void apply_workers(ExperimentConfig& cfg, std::optional<int> workers) {
  if (workers) cfg.parallel.workers = *workers;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and drift estimation for the mixed sub-fractional OU process"};
  app.require_subcommand(1);

  // simulate
  double theta = 1.0, hurst = 0.65, d = 1.0 / 250.0, T = 20.0, x0 = 0.0;
  std::uint64_t seed = 0;
  std::string out_path, noise = "circulant";
  auto* sim = app.add_subcommand("simulate", "Euler path of the msfOU process, written as t,value CSV");
  sim->add_option("--theta", theta, "drift parameter")->required();
  sim->add_option("--hurst", hurst, "Hurst index in (0,1)")->required();
  sim->add_option("--d", d, "grid spacing")->required();
  sim->add_option("--T", T, "time horizon")->required();
  sim->add_option("--seed", seed, "path seed")->required();
  sim->add_option("--x0", x0, "initial value");
  sim->add_option("--noise", noise, "fGn sampler")->check(CLI::IsMember({"circulant", "spectral"}));
  sim->add_option("--out", out_path, "output CSV")->required();

  // estimate
  std::string method, in_path;
  std::optional<double> theta_ref;
  std::size_t mesh = 128;
  auto* est = app.add_subcommand("estimate", "Estimate theta from a path CSV");
  est->add_option("--method", method)->required()->check(
      CLI::IsMember({"mle", "lse", "practical", "nonergodic"}));
  est->add_option("--hurst", hurst)->required();
  est->add_option("--theta-ref", theta_ref, "true theta, required by lse");
  est->add_option("--mesh", mesh, "MLE mesh size");
  est->add_option("--in", in_path)->required();
  est->add_option("--out", out_path)->required();

  // Monte Carlo
  std::string config_path, stats_path, grid_text;
  std::optional<int> workers;
  auto* table = app.add_subcommand("mc-table", "Estimator summary per config");
  table->add_option("--config", config_path)->required();
  table->add_option("--out", out_path)->required();
  table->add_option("--workers", workers, "replication workers (0 = OpenMP default)");

  auto* clt = app.add_subcommand("mc-clt", "Phi statistic sample and moments");
  clt->add_option("--config", config_path)->required();
  clt->add_option("--out", out_path)->required();
  clt->add_option("--stats", stats_path)->required();
  clt->add_option("--workers", workers);

  auto* rate = app.add_subcommand("mc-rate", "Scaled LSE error spread across horizons");
  rate->add_option("--config", config_path)->required();
  rate->add_option("--T-grid", grid_text)->required();
  rate->add_option("--out", out_path)->required();
  rate->add_option("--workers", workers);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      ExperimentConfig probe;
      probe.theta_true = theta;
      probe.H = hurst;
      probe.d = d;
      probe.T = T;
      probe.validate();
      const SamplePath path =
          euler_msfou(theta, HurstParam(hurst), d, probe.steps(), seed, x0, noise_from(noise));
      write_path_csv(out_path, path);
    } else if (*est) {
      const SamplePath path = read_path_csv(in_path);
      const HurstParam h(hurst);
      EstimateResult r;
      const EstimatorMethod m = parse_estimator(method);
      if (m == EstimatorMethod::kMle) {
        r = mle(path, h, mesh);
      } else if (m == EstimatorMethod::kLseSkorohod) {
        if (!theta_ref) throw std::invalid_argument("estimate: lse needs --theta-ref");
        r = lse_skorohod(path, h, *theta_ref);
      } else if (m == EstimatorMethod::kPractical) {
        r = practical_estimator(path, h);
      } else {
        r = nonergodic_estimator(path);
      }
      write_text_file(out_path, estimate_json(r));
    } else if (*table) {
      std::vector<TableRow> rows;
      for (auto cfg : parse_configs(read_text_file(config_path))) {
        apply_workers(cfg, workers);
        rows.push_back({cfg, run_table_experiment(cfg)});
      }
      write_text_file(out_path, table_csv(rows));
    } else if (*clt) {
      ExperimentConfig cfg = parse_config(read_text_file(config_path));
      apply_workers(cfg, workers);
      const CltResult r = run_clt_experiment(cfg);
      write_text_file(out_path, phi_csv(r.phi));
      write_text_file(stats_path, stats_json(r.stats));
    } else if (*rate) {
      ExperimentConfig cfg = parse_config(read_text_file(config_path));
      apply_workers(cfg, workers);
      const auto grid = parse_grid(grid_text);
      write_text_file(out_path, rate_csv(run_rate_experiment(cfg, grid)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
