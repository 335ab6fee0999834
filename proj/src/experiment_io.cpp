#include "msfou/experiment_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace msfou {

using nlohmann::json;

namespace {

NoiseMethod parse_noise(const std::string& name) {
  if (name == "circulant") return NoiseMethod::kCirculantExact;
  if (name == "spectral") return NoiseMethod::kSpectralApprox;
  throw std::invalid_argument("config: unknown noise method '" + name + "'");
}

ExperimentConfig config_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "theta_true") c.theta_true = value.get<double>();
    else if (key == "H") c.H = value.get<double>();
    else if (key == "d") c.d = value.get<double>();
    else if (key == "T") c.T = value.get<double>();
    else if (key == "replications") c.replications = value.get<std::size_t>();
    else if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
    else if (key == "estimator") c.estimator = parse_estimator(value.get<std::string>());
    else if (key == "x0") c.x0 = value.get<double>();
    else if (key == "mle_mesh") c.mle_mesh = value.get<std::size_t>();
    else if (key == "noise") c.noise = parse_noise(value.get<std::string>());
    else if (key == "workers") c.parallel.workers = value.get<int>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  try {
    return config_from(parse_json(json_text));
  } catch (const json::type_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

std::vector<ExperimentConfig> parse_configs(std::string_view json_text) {
  const json j = parse_json(json_text);
  std::vector<ExperimentConfig> out;
  try {
    if (j.is_array()) {
      if (j.empty()) throw std::invalid_argument("config: empty array");
      for (const auto& item : j) out.push_back(config_from(item));
    } else {
      out.push_back(config_from(j));
    }
  } catch (const json::type_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_real(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_real failed");
  return std::string(buf, end);
}

std::string table_csv(std::span<const TableRow> rows) {
  std::string out = "theta_true,H,d,T,reps,mean,median,sdev,n_failed\n";
  for (const auto& r : rows) {
    out += format_real(r.cfg.theta_true) + ',' + format_real(r.cfg.H) + ',' +
           format_real(r.cfg.d) + ',' + format_real(r.cfg.T) + ',' +
           std::to_string(r.cfg.replications) + ',' + format_real(r.stats.mean) + ',' +
           format_real(r.stats.median) + ',' + format_real(r.stats.sdev) + ',' +
           std::to_string(r.stats.n_failed) + '\n';
  }
  return out;
}

std::string phi_csv(std::span<const double> phi) {
  std::string out = "phi\n";
  for (double v : phi) out += format_real(v) + '\n';
  return out;
}

std::string stats_json(const SummaryStats& s) {
  json j;
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["sdev"] = s.sdev;
  j["skewness"] = s.skewness;
  j["kurtosis"] = s.kurtosis;
  j["n_ok"] = s.n_ok;
  j["n_failed"] = s.n_failed;
  return j.dump(2) + '\n';
}

std::string rate_csv(std::span<const RateRow> rows) {
  std::string out = "T,scale,reps,mean,median,sdev,skewness,kurtosis,n_failed\n";
  for (const auto& r : rows) {
    out += format_real(r.T) + ',' + format_real(r.scale) + ',' +
           std::to_string(r.stats.n_ok + r.stats.n_failed) + ',' + format_real(r.stats.mean) + ',' +
           format_real(r.stats.median) + ',' + format_real(r.stats.sdev) + ',' +
           format_real(r.stats.skewness) + ',' + format_real(r.stats.kurtosis) + ',' +
           std::to_string(r.stats.n_failed) + '\n';
  }
  return out;
}

std::string estimate_json(const EstimateResult& r) {
  json j;
  j["method"] = std::string(to_string(r.method));
  j["theta_hat"] = r.theta_hat;
  j["denominator"] = r.denominator;
  j["diagnostics"] = json(r.diagnostics);
  return j.dump(2) + '\n';
}

}  // namespace msfou
