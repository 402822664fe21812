#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "wristmon/common/errors.hpp"
#include "wristmon/common/time.hpp"

namespace wristmon::signal {

/// A uniformly sampled voltage trace.
struct PpgWaveform {
  std::vector<double> samples;  // volts
  double sample_rate_hz = 50.0;
  Timestamp start_time{};

  std::size_t size() const { return samples.size(); }
  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
  double time_of(std::size_t index) const { return static_cast<double>(index) / sample_rate_hz; }

  void validate() const {
    detail::require(sample_rate_hz > 0.0 && std::isfinite(sample_rate_hz), "sample rate must be positive");
    for (double v : samples) detail::require(std::isfinite(v), "waveform samples must be finite");
  }
};

/// Malformed `t_s,volts` input; `line()` is 1-based.
class CsvError : public InvalidArgument {
 public:
  CsvError(std::size_t line, const std::string& what)
      : InvalidArgument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace internal {

inline bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(text, &pos);
  } catch (const std::exception&) {
    return false;
  }
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\r' || text[pos] == '\t')) ++pos;
  return pos == text.size() && std::isfinite(out);
}

}  // namespace internal

inline void write_csv(std::ostream& out, const PpgWaveform& w) {
  out << "t_s,volts\n";
  char buf[64];
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f,%.9g\n", w.time_of(i), w.samples[i]);
    out << buf;
  }
}

/// Reads a `t_s,volts` capture. The sample rate is recovered from the time
/// column, which must be uniformly spaced.
inline PpgWaveform read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw CsvError(1, "missing header 't_s,volts'");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_s,volts") throw CsvError(1, "expected header 't_s,volts', got '" + line + "'");

  std::vector<double> times;
  PpgWaveform w;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw CsvError(lineno, "expected two comma-separated columns");
    double t = 0.0, v = 0.0;
    if (!internal::parse_double(line.substr(0, comma), t)) throw CsvError(lineno, "bad time value");
    if (!internal::parse_double(line.substr(comma + 1), v)) throw CsvError(lineno, "bad voltage value");
    if (!times.empty() && t <= times.back()) throw CsvError(lineno, "time column must be strictly increasing");
    times.push_back(t);
    w.samples.push_back(v);
  }
  if (times.size() < 2) throw CsvError(lineno, "need at least two samples to infer the sample rate");

  const double first_step = times[1] - times[0];
  for (std::size_t i = 2; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::abs(step - first_step) > 1e-6 + 1e-3 * first_step) throw CsvError(i + 2, "non-uniform sample spacing");
  }
  w.sample_rate_hz = static_cast<double>(times.size() - 1) / (times.back() - times.front());
  w.start_time = from_seconds(times.front());
  return w;
}

}  // namespace wristmon::signal
