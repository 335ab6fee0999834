#include "msfou/path_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace msfou {

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("path CSV line " + std::to_string(line) +
                             ": cannot parse '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

void write_path_csv(std::ostream& out, const SamplePath& path) {
  out << "t,value\n";
  for (std::size_t i = 0; i <= path.size(); ++i) {
    out << format_real(path.time(i)) << ',' << format_real(path.at(i)) << '\n';
  }
}

void write_path_csv(const std::filesystem::path& file, const SamplePath& path) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  write_path_csv(out, path);
}

SamplePath read_path_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("path CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,value") {
    throw std::runtime_error("path CSV: expected header 't,value', got '" + line + "'");
  }

  std::vector<double> times;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("path CSV line " + std::to_string(line_no) +
                               ": expected two columns");
    }
    times.push_back(parse_real(std::string_view(line).substr(0, comma), line_no));
    values.push_back(parse_real(std::string_view(line).substr(comma + 1), line_no));
  }
  if (times.size() < 2) {
    throw std::runtime_error("path CSV: need at least two rows (t_0 and t_1)");
  }

  const double spacing = times[1] - times[0];
  if (!(spacing > 0.0)) throw std::runtime_error("path CSV: non-increasing time column");
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expected = times[0] + spacing * static_cast<double>(i);
    if (std::fabs(times[i] - expected) > 1e-6 * spacing) {
      throw std::runtime_error("path CSV: row " + std::to_string(i + 2) +
                               " is off the uniform grid");
    }
  }
  const double initial = values.front();
  values.erase(values.begin());
  return SamplePath(spacing, std::move(values), initial);
}

SamplePath read_path_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return read_path_csv(in);
}

}  // namespace msfou
