#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "wristmon/common/errors.hpp"
#include "wristmon/signal/waveform.hpp"

namespace wristmon::signal {

/// Parameters of the synthetic finger/LED source.
struct SynthParams {
  double bpm = 77.0;
  double duration_s = 30.0;
  double sample_rate_hz = 50.0;
  double dc_offset_v = 0.0;
  double noise_rms_v = 0.0;
  double drift_v_per_s = 0.0;
  std::uint64_t seed = 1;
  Timestamp start_time{};
};

// Shape of one cardiac cycle: a systolic bump followed by a small dicrotic wave.
inline constexpr double kSystolicPhase = 0.20;
inline constexpr double kSystolicWidth = 0.07;
inline constexpr double kDicroticPhase = 0.50;
inline constexpr double kDicroticWidth = 0.10;
inline constexpr double kDicroticGain = 0.25;

/// Periodic pulse template over phase in [0, 1), peak value ~1 at kSystolicPhase.
inline double pulse_shape(double phase) {
  auto bump = [](double p, double centre, double width) {
    double s = 0.0;
    for (int wrap = -1; wrap <= 1; ++wrap) {
      const double d = (p + wrap - centre) / width;
      s += std::exp(-0.5 * d * d);
    }
    return s;
  };
  return bump(phase, kSystolicPhase, kSystolicWidth) + kDicroticGain * bump(phase, kDicroticPhase, kDicroticWidth);
}

/// Pulse waveform at bpm/60 Hz plus DC offset, linear drift and seeded
/// Gaussian noise. Deterministic for a given parameter set.
inline PpgWaveform synthesize_ppg(const SynthParams& p) {
  detail::require(p.bpm >= 30.0 && p.bpm <= 240.0, "bpm must lie in [30, 240]");
  detail::require(p.duration_s > 0.0, "duration must be positive");
  detail::require(p.sample_rate_hz > 0.0 && p.sample_rate_hz >= 4.0 * p.bpm / 60.0,
                  "sample rate must be at least four times the pulse frequency");
  detail::require(p.noise_rms_v >= 0.0 && std::isfinite(p.noise_rms_v), "noise rms must be non-negative");
  detail::require(std::isfinite(p.dc_offset_v) && std::isfinite(p.drift_v_per_s), "offsets must be finite");

  const auto n = static_cast<std::size_t>(std::llround(p.duration_s * p.sample_rate_hz));
  const double beat_hz = p.bpm / 60.0;

  PpgWaveform w;
  w.sample_rate_hz = p.sample_rate_hz;
  w.start_time = p.start_time;
  w.samples.resize(n);

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / p.sample_rate_hz;
    const double cycles = t * beat_hz;
    double v = pulse_shape(cycles - std::floor(cycles)) + p.dc_offset_v + p.drift_v_per_s * t;
    if (p.noise_rms_v > 0.0) v += p.noise_rms_v * noise(rng);
    w.samples[i] = v;
  }
  return w;
}

inline PpgWaveform synthesize_ppg(double bpm, double duration_s, double sample_rate_hz, double dc_offset_v,
                                  double noise_rms_v, double drift_v_per_s, std::uint64_t seed) {
  return synthesize_ppg(SynthParams{bpm, duration_s, sample_rate_hz, dc_offset_v, noise_rms_v, drift_v_per_s, seed});
}

}  // namespace wristmon::signal
