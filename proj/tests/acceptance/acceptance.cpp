// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All Monte Carlo runs share one fixed master seed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "../oracles.hpp"
#include "../test_support.hpp"
#include "msfou/estimators.hpp"
#include "msfou/experiment_io.hpp"
#include "msfou/kernel_solver.hpp"
#include "msfou/mc_harness.hpp"
#include "msfou/mle.hpp"
#include "msfou/numerics.hpp"
#include "msfou/process_paths.hpp"
#include "msfou/rng.hpp"

using namespace msfou;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentConfig config(double theta, double H, double d, double T, std::size_t reps,
                        EstimatorMethod est) {
  ExperimentConfig c;
  c.theta_true = theta;
  c.H = H;
  c.d = d;
  c.T = T;
  c.replications = reps;
  c.master_seed = kSeed;
  c.estimator = est;
  return c;
}

Verdict fgn_covariance() {
  double worst = 0.0;
  for (double hv : {0.55, 0.65, 0.75, 0.85}) {
    const HurstParam h(hv);
    const FgnGenerator gen(1 << 14, h);
    const auto pooled = testing_support::pooled_autocovariance(gen, 200, 5, kSeed);
    for (int k = 0; k <= 5; ++k) {
      worst = std::max(worst, std::fabs(pooled[k].mean - fgn_autocovariance(k, h)) / pooled[k].se);
    }
  }
  return {worst <= 3.0, "worst |z| over 4 H x 6 lags = " + fmt("%.2f", worst) + " (limit 3)"};
}

Verdict sfbm_proposition() {
  const HurstParam h(0.7);
  const MsfouSimulator sim(h, 1.0, 6);
  std::vector<std::vector<double>> prod(36);
  for (std::size_t r = 0; r < 5000; ++r) {
    const auto s = sim.sfbm(replication_seed(kSeed, r));
    for (int p = 1; p <= 6; ++p) {
      for (int q = 1; q <= 6; ++q) prod[(p - 1) * 6 + q - 1].push_back(s.at(p) * s.at(q));
    }
  }
  double worst = 0.0;
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= 6; ++q) {
      const auto ms = testing_support::mean_se(prod[(p - 1) * 6 + q - 1]);
      const double P = p, Q = q;
      const double exact = std::pow(P, 1.4) + std::pow(Q, 1.4) -
                           0.5 * (std::pow(std::fabs(P - Q), 1.4) + std::pow(P + Q, 1.4));
      worst = std::max(worst, std::fabs(ms.mean - exact) / ms.se);
    }
  }
  return {worst <= 3.0, "worst |z| over the 6x6 grid = " + fmt("%.2f", worst) + " (limit 3)"};
}

Verdict correction_integral_checks() {
  const HurstParam h(0.6);
  const double lim = h.alpha() * correction_integral(1.0, h, 200.0, quadrature_for(h)) / 200.0;
  const double target = 0.6 * gamma_fn(1.2);
  const double rel = std::fabs(lim / target - 1.0);
  const HurstParam h75(0.75);
  const double diff = std::fabs(correction_integral(1.0, h75, 2.0, quadrature_for(h75)) -
                                oracle::correction_integral_h075(1.0, 2.0));
  return {rel <= 0.02 && diff <= 1e-6,
          "limit rel. error " + fmt("%.4f", rel) + " (limit 0.02), oracle gap at T=2 " +
              fmt("%.1e", diff) + " (limit 1e-6)"};
}

Verdict ergodic_moment() {
  const auto c = config(1.0, 0.6, 1.0 / 50, 200.0, 500, EstimatorMethod::kPractical);
  const auto out = map_replications(c, [](const SamplePath& x) { return integral_X2(x) / x.horizon(); });
  const auto s = summarize_outcomes(out);
  const double p1 = p_function(1.0, HurstParam(0.6));
  const double rel = std::fabs(s.mean / p1 - 1.0);
  return {rel <= 0.05, "mean " + fmt("%.4f", s.mean) + " vs p(1) = " + fmt("%.4f", p1) +
                           ", rel. error " + fmt("%.4f", rel) + " (limit 0.05)"};
}

Verdict table_cell(double H, double theta, double lo, double hi, double paper_sd) {
  const auto s = run_table_experiment(config(theta, H, 1.0 / 250, 20.0, 1000, EstimatorMethod::kPractical));
  const bool mean_ok = s.mean >= lo && s.mean <= hi;
  const bool sd_ok = s.sdev >= paper_sd / 1.5 && s.sdev <= paper_sd * 1.5;
  return {mean_ok && sd_ok, "mean " + fmt("%.4f", s.mean) + " in [" + fmt("%.2f", lo) + ", " +
                                fmt("%.2f", hi) + "]: " + (mean_ok ? "yes" : "no") + "; sdev " +
                                fmt("%.4f", s.sdev) + " within x1.5 of " + fmt("%.4f", paper_sd) +
                                ": " + (sd_ok ? "yes" : "no") + "; failed " +
                                std::to_string(s.n_failed)};
}

Verdict lse_clt() {
  const double T = 500.0;
  const auto c = config(1.0, 0.6, 1.0 / 50, T, 500, EstimatorMethod::kLseSkorohod);
  const auto est = replicate_estimates(c);
  const double sigma = sigma_H(1.0, HurstParam(0.6));
  std::vector<std::optional<double>> scaled(est.size()), standardized(est.size());
  for (std::size_t r = 0; r < est.size(); ++r) {
    if (!est[r]) continue;
    scaled[r] = std::sqrt(T) * (*est[r] - 1.0);
    standardized[r] = *scaled[r] / sigma;
  }
  const auto s = summarize_outcomes(scaled);
  const auto z = summarize_outcomes(standardized);
  const double rel = std::fabs(s.sdev / sigma - 1.0);
  const bool ok = rel <= 0.15 && std::fabs(z.mean) <= 0.1 && std::fabs(z.skewness) <= 0.5;
  return {ok, "sdev " + fmt("%.4f", s.sdev) + " vs sigma_H " + fmt("%.4f", sigma) + " (rel " +
                  fmt("%.3f", rel) + ", limit 0.15); standardized mean " + fmt("%.3f", z.mean) +
                  ", skewness " + fmt("%.3f", z.skewness)};
}

Verdict phi_clt() {
  const auto r = run_clt_experiment(config(0.1, 0.618, 1.0 / 250, 16.0, 2000, EstimatorMethod::kPractical));
  const auto& s = r.stats;
  const bool ok = std::fabs(s.mean) <= 0.1 && std::fabs(s.skewness) <= 0.5 && s.kurtosis >= 2.0 &&
                  s.kurtosis <= 6.0;
  return {ok, "mean " + fmt("%.4f", s.mean) + " (|.|<=0.1), skewness " + fmt("%.3f", s.skewness) +
                  " (|.|<=0.5), kurtosis " + fmt("%.3f", s.kurtosis) + " (in [2,6]); sdev " +
                  fmt("%.4f", s.sdev) + " reported only"};
}

Verdict rate_invariance() {
  const std::vector<double> grid{125.0, 250.0, 500.0};
  std::string detail;
  bool ok = true;
  for (auto [H, limit] : {std::pair{0.6, 1.5}, std::pair{0.85, 2.0}}) {
    const auto rows = run_rate_experiment(config(1.0, H, 1.0 / 50, 125.0, 300, EstimatorMethod::kLseSkorohod), grid);
    double lo = INFINITY, hi = 0.0;
    for (const auto& row : rows) {
      lo = std::min(lo, row.stats.sdev);
      hi = std::max(hi, row.stats.sdev);
    }
    ok = ok && hi / lo <= limit;
    detail += "H=" + fmt("%.2f", H) + " ratio " + fmt("%.3f", hi / lo) + " (limit " + fmt("%.1f", limit) + ") ";
  }
  return {ok, detail};
}

Verdict nonergodic() {
  const double theta = -0.5, T = 10.0;
  const auto est = replicate_estimates(config(theta, 0.65, 1.0 / 100, T, 1000, EstimatorMethod::kNonergodic));
  const auto s = summarize_outcomes(est);
  std::vector<std::optional<double>> scaled(est.size());
  for (std::size_t r = 0; r < est.size(); ++r) {
    if (est[r]) scaled[r] = std::exp(-theta * T) * (*est[r] - theta);
  }
  const double excess = summarize_outcomes(scaled).kurtosis - 3.0;
  const bool ok = std::fabs(s.median - theta) <= 0.05 && excess > 3.0;
  return {ok, "median " + fmt("%.4f", s.median) + " (within 0.05 of -0.5), scaled-error excess kurtosis " +
                  fmt("%.2f", excess) + " (> 3)"};
}

Verdict mle_checks() {
  // H = 1/2 reduction on 10 paths.
  const HurstParam half(0.5);
  const MartingaleKernelFamily fam_half(half, 0.02, 1000, 128);
  double worst_half = 0.0;
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto x = euler_msfou(1.0, half, 0.02, 1000, replication_seed(kSeed, r));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < fam_half.mesh_size(); ++k) {
      const double a = x.at(fam_half.mesh_index(k));
      const double b = x.at(fam_half.mesh_index(k + 1));
      num += a * (b - a);
      den += a * a * (fam_half.mesh_time(k + 1) - fam_half.mesh_time(k));
    }
    const double classical = -num / den;
    worst_half = std::max(worst_half, std::fabs(mle(x, fam_half).theta_hat - classical) /
                                          std::max(1.0, std::fabs(classical)));
  }
  const auto sol = solve_g_kernel(1.0, HurstParam(0.65), 256);
  const double identity = std::fabs(sol.integral_g - sol.bracket_M.back());

  auto c = config(1.0, 0.65, 1.0 / 100, 20.0, 200, EstimatorMethod::kMle);
  const auto s = run_table_experiment(c);

  const bool ok = worst_half <= 1e-10 && sol.residual <= 1e-6 && identity <= 1e-5 &&
                  std::fabs(s.mean - 1.0) <= 0.15;
  return {ok, "H=1/2 gap " + fmt("%.1e", worst_half) + " (<=1e-10), residual " +
                  fmt("%.1e", sol.residual) + " (<=1e-6), identity gap " + fmt("%.1e", identity) +
                  " (<=1e-5), MC mean " + fmt("%.4f", s.mean) + " (within 0.15 of 1)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run(const std::string& args) {
  const std::string cmd = std::string("\"") + MSFOU_CLI + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

Verdict cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("msfou_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };

  std::ofstream(path("table.json")) << R"([
    {"theta_true": 1.0, "H": 0.65, "d": 0.01, "T": 5, "replications": 40, "master_seed": 11, "estimator": "practical"},
    {"theta_true": 1.0, "H": 0.65, "d": 0.01, "T": 5, "replications": 12, "master_seed": 12, "estimator": "mle", "mle_mesh": 32},
    {"theta_true": -0.5, "H": 0.7, "d": 0.01, "T": 5, "replications": 30, "master_seed": 13, "estimator": "nonergodic"}
  ])";
  std::ofstream(path("clt.json")) << R"({"theta_true": 0.1, "H": 0.618, "d": 0.004, "T": 4,
    "replications": 50, "master_seed": 14, "estimator": "practical"})";
  std::ofstream(path("rate.json")) << R"({"theta_true": 1.0, "H": 0.6, "d": 0.02, "T": 10,
    "replications": 20, "master_seed": 15, "estimator": "lse"})";

  struct Job {
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Job> jobs = {
      {"simulate --theta 1 --hurst 0.65 --d 0.01 --T 5 --seed 7 --x0 0 --out " + path("p@.csv"), {"p@.csv"}},
      {"estimate --method mle --hurst 0.65 --in " + path("p0.csv") + " --out " + path("mle@.json"), {"mle@.json"}},
      {"estimate --method lse --hurst 0.65 --theta-ref 1 --in " + path("p0.csv") + " --out " + path("lse@.json"), {"lse@.json"}},
      {"estimate --method practical --hurst 0.65 --in " + path("p0.csv") + " --out " + path("pr@.json"), {"pr@.json"}},
      {"estimate --method nonergodic --hurst 0.65 --in " + path("p0.csv") + " --out " + path("ne@.json"), {"ne@.json"}},
      {"mc-table --config " + path("table.json") + " --out " + path("table@.csv") + " --workers W", {"table@.csv"}},
      {"mc-clt --config " + path("clt.json") + " --out " + path("phi@.csv") + " --stats " + path("stats@.json") + " --workers W",
       {"phi@.csv", "stats@.json"}},
      {"mc-rate --config " + path("rate.json") + " --T-grid 5,10 --out " + path("rate@.csv") + " --workers W", {"rate@.csv"}},
  };

  auto substitute = [](std::string s, const std::string& tag, const std::string& workers) {
    for (std::size_t pos; (pos = s.find('@')) != std::string::npos;) s.replace(pos, 1, tag);
    if (s.size() > 2 && s.compare(s.size() - 2, 2, " W") == 0) s.replace(s.size() - 1, 1, workers);
    return s;
  };

  std::size_t compared = 0;
  std::string bad;
  for (const auto& job : jobs) {
    // Run 0 with one worker, run 1 with three; simulate/estimate have no worker flag.
    const bool ok0 = run(substitute(job.args, "0", "1"));
    const bool ok1 = run(substitute(job.args, "1", "3"));
    if (!ok0 || !ok1) {
      bad += " [command failed: " + job.args.substr(0, job.args.find(' ')) + "]";
      continue;
    }
    for (const auto& out : job.outputs) {
      const std::string a = slurp(path(substitute(out, "0", "")));
      const std::string b = slurp(path(substitute(out, "1", "")));
      ++compared;
      if (a.empty() || a != b) bad += " [" + out + " differs]";
    }
  }
  fs::remove_all(dir);
  return {bad.empty(), std::to_string(compared) + " output files compared across reruns and worker counts" + bad};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "fGn covariance oracle", fgn_covariance},
      {2, "discrete sfBm covariance", sfbm_proposition},
      {3, "correction integral limit and oracle", correction_integral_checks},
      {4, "ergodic second moment", ergodic_moment},
      {5, "practical estimator, H=0.55 cell", [] { return table_cell(0.55, 0.5, 0.40, 0.62, 0.4927); }},
      {6, "practical estimator, H=0.65 cell", [] { return table_cell(0.65, 1.0, 0.95, 1.17, 0.1285); }},
      {7, "LSE CLT", lse_clt},
      {8, "Phi CLT properties", phi_clt},
      {9, "rate invariance", rate_invariance},
      {10, "non-ergodic regime", nonergodic},
      {11, "MLE reductions and stability", mle_checks},
      {12, "CLI determinism", cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("[%s] criterion %2d  %-38s %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
