#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "wristmon/common/errors.hpp"
#include "wristmon/signal/waveform.hpp"

namespace wristmon::signal {

/// Corner frequencies of the high-pass / low-pass cascade.
struct FilterSpec {
  double hp_cutoff_hz = 0.8;
  double lp_cutoff_hz = 3.5;
  int stages_per_side = 2;

  void validate(double sample_rate_hz) const {
    detail::require(stages_per_side >= 1, "stages_per_side must be at least 1");
    detail::require(hp_cutoff_hz > 0.0, "high-pass cutoff must be positive");
    detail::require(hp_cutoff_hz < lp_cutoff_hz, "high-pass cutoff must be below low-pass cutoff");
    detail::require(lp_cutoff_hz < sample_rate_hz / 2.0, "low-pass cutoff must be below Nyquist");
  }
};

/// First-order IIR section from the bilinear transform of s/(s+wc) or
/// wc/(s+wc), with the corner pre-warped so it lands exactly on cutoff_hz.
class FirstOrderSection {
 public:
  enum class Kind { high_pass, low_pass };

  FirstOrderSection(Kind kind, double cutoff_hz, double sample_rate_hz) : kind_(kind) {
    const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
    a1_ = (k - 1.0) / (k + 1.0);
    b_ = kind == Kind::high_pass ? 1.0 / (1.0 + k) : k / (1.0 + k);
  }

  /// Primes the delay line as if `x0` had been applied forever.
  void prime(double x0) {
    x1_ = x0;
    y1_ = kind_ == Kind::high_pass ? 0.0 : x0;
  }

  /// Output after a constant input `x0` has settled.
  double steady_state_output(double x0) const { return kind_ == Kind::high_pass ? 0.0 : x0; }

  double process(double x) {
    // Differencing before scaling makes a constant input cancel exactly.
    const double y = kind_ == Kind::high_pass ? b_ * (x - x1_) - a1_ * y1_ : b_ * (x + x1_) - a1_ * y1_;
    x1_ = x;
    y1_ = y;
    return y;
  }

 private:
  Kind kind_;
  double b_ = 0.0;
  double a1_ = 0.0;
  double x1_ = 0.0;
  double y1_ = 0.0;
};

/// Band-passes `w` through `stages_per_side` high-pass sections followed by
/// as many low-pass sections. Each section starts in steady state for its
/// first input sample, so a constant input produces an all-zero output.
inline PpgWaveform apply_bandpass(const PpgWaveform& w, const FilterSpec& spec) {
  w.validate();
  spec.validate(w.sample_rate_hz);

  std::vector<FirstOrderSection> chain;
  chain.reserve(static_cast<std::size_t>(2 * spec.stages_per_side));
  for (int i = 0; i < spec.stages_per_side; ++i)
    chain.emplace_back(FirstOrderSection::Kind::high_pass, spec.hp_cutoff_hz, w.sample_rate_hz);
  for (int i = 0; i < spec.stages_per_side; ++i)
    chain.emplace_back(FirstOrderSection::Kind::low_pass, spec.lp_cutoff_hz, w.sample_rate_hz);

  PpgWaveform out{std::vector<double>(w.samples.size()), w.sample_rate_hz, w.start_time};
  if (w.samples.empty()) return out;

  // Priming: every section sees the steady-state response of its predecessors.
  double level = w.samples.front();
  for (auto& section : chain) {
    section.prime(level);
    level = section.steady_state_output(level);
  }
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    double v = w.samples[i];
    for (auto& section : chain) v = section.process(v);
    out.samples[i] = v;
  }
  return out;
}

}  // namespace wristmon::signal
