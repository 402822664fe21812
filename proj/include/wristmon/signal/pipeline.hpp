#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "wristmon/signal/filter.hpp"
#include "wristmon/signal/peaks.hpp"
#include "wristmon/signal/rate.hpp"

namespace wristmon::signal {

struct PipelineOptions {
  FilterSpec filter{};
  PeakOptions peaks{};
  /// Leading span excluded from peak detection while filter transients decay.
  double warmup_s = 2.0;
};

struct PulseMeasurement {
  PpgWaveform filtered;
  PeakTrain peaks;  // times relative to the unfiltered waveform's start
  std::optional<double> bpm;
};

/// bandpass -> warm-up trim -> peaks -> 60 * F.
inline PulseMeasurement measure_pulse(const PpgWaveform& raw, const PipelineOptions& opts = {}) {
  detail::require(opts.warmup_s >= 0.0, "warm-up must be non-negative");
  PulseMeasurement m;
  m.filtered = apply_bandpass(raw, opts.filter);

  const auto skip = std::min(m.filtered.samples.size(),
                             static_cast<std::size_t>(std::llround(opts.warmup_s * raw.sample_rate_hz)));
  PpgWaveform settled{{m.filtered.samples.begin() + static_cast<std::ptrdiff_t>(skip), m.filtered.samples.end()},
                      raw.sample_rate_hz,
                      raw.start_time};
  m.peaks = detect_peaks(settled, opts.peaks);
  const double offset = static_cast<double>(skip) / raw.sample_rate_hz;
  for (double& t : m.peaks.peak_times) t += offset;

  if (m.peaks.size() >= 2) m.bpm = estimate_bpm(m.peaks);
  return m;
}

}  // namespace wristmon::signal
