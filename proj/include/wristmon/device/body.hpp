#pragma once

#include <concepts>
#include <cstdint>

#include "wristmon/common/time.hpp"
#include "wristmon/signal/synth.hpp"

namespace wristmon::device {

/// Source of the patient's true physiology as seen by the sensors.
template <class B>
concept PatientSignals = requires(B& b, Timestamp t, double duration_s, double rate_hz) {
  { b.temperature_at(t) } -> std::convertible_to<double>;
  { b.ppg(t, duration_s, rate_hz) } -> std::same_as<signal::PpgWaveform>;
};

/// A patient with steady vitals. Each capture window gets its own noise
/// stream, derived from the seed and the window start.
struct SteadyPatient {
  double temperature_c = 36.6;
  double bpm = 77.0;
  double dc_offset_v = 1.0;
  double noise_rms_v = 0.01;
  double drift_v_per_s = 0.0;
  std::uint64_t seed = 1;

  double temperature_at(Timestamp) const { return temperature_c; }

  signal::PpgWaveform ppg(Timestamp start, double duration_s, double rate_hz) const {
    signal::SynthParams p;
    p.bpm = bpm;
    p.duration_s = duration_s;
    p.sample_rate_hz = rate_hz;
    p.dc_offset_v = dc_offset_v;
    p.noise_rms_v = noise_rms_v;
    p.drift_v_per_s = drift_v_per_s;
    p.seed = seed ^ (static_cast<std::uint64_t>(start.time_since_epoch().count()) * 0x9E3779B97F4A7C15ull);
    p.start_time = start;
    return signal::synthesize_ppg(p);
  }
};

}  // namespace wristmon::device
