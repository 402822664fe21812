#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wristmon/common/errors.hpp"
#include "wristmon/signal/waveform.hpp"

namespace wristmon::signal {

/// Beat instants, in seconds from the start of the analysed waveform.
struct PeakTrain {
  std::vector<double> peak_times;

  std::size_t size() const { return peak_times.size(); }
  bool empty() const { return peak_times.empty(); }
  bool operator==(const PeakTrain&) const = default;
};

struct PeakOptions {
  double refractory_ms = 250.0;
  /// Width of the centred window whose (min+max)/2 is the local threshold.
  double threshold_window_s = 3.0;
  /// An excursion ends only once the signal falls this fraction of the local
  /// half-range below the threshold.
  double hysteresis = 0.25;
};

/// Sliding minimum and maximum over a centred window.
struct Envelope {
  std::vector<double> lower;
  std::vector<double> upper;

  double midpoint(std::size_t i) const { return (lower[i] + upper[i]) / 2.0; }
  double half_range(std::size_t i) const { return (upper[i] - lower[i]) / 2.0; }
};

inline Envelope sliding_envelope(const std::vector<double>& x, std::size_t window) {
  const std::size_t half = std::max<std::size_t>(1, window / 2);
  Envelope env{std::vector<double>(x.size()), std::vector<double>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(x.size(), i + half + 1);
    const auto [mn, mx] = std::minmax_element(x.begin() + static_cast<std::ptrdiff_t>(lo),
                                              x.begin() + static_cast<std::ptrdiff_t>(hi));
    env.lower[i] = *mn;
    env.upper[i] = *mx;
  }
  return env;
}

/// Finds one peak per excursion above the adaptive midpoint threshold (its
/// highest interior local maximum), then keeps peaks greedily so that no two
/// are closer than the refractory period. An excursion closes only once the
/// signal drops below the threshold by the hysteresis margin.
inline PeakTrain detect_peaks(const PpgWaveform& w, const PeakOptions& opts) {
  w.validate();
  detail::require(opts.refractory_ms > 0.0, "refractory period must be positive");
  detail::require(opts.threshold_window_s > 0.0, "threshold window must be positive");
  detail::require(opts.hysteresis >= 0.0 && opts.hysteresis < 1.0, "hysteresis must be in [0, 1)");

  PeakTrain train;
  const auto& x = w.samples;
  if (x.size() < 3) return train;

  const auto window = static_cast<std::size_t>(std::llround(opts.threshold_window_s * w.sample_rate_hz));
  const Envelope env = sliding_envelope(x, window);

  auto is_local_max = [&](std::size_t i) {
    return i > 0 && i + 1 < x.size() && x[i] > x[i - 1] && x[i] >= x[i + 1];
  };

  std::vector<std::size_t> candidates;
  std::size_t best = 0;
  bool in_excursion = false;
  bool have_best = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mid = env.midpoint(i);
    if (!in_excursion && x[i] > mid) {
      in_excursion = true;
      have_best = false;
    }
    if (!in_excursion) continue;
    if (x[i] >= mid - opts.hysteresis * env.half_range(i)) {
      if (x[i] > mid && is_local_max(i) && (!have_best || x[i] > x[best])) {
        best = i;
        have_best = true;
      }
    } else {
      in_excursion = false;
      if (have_best) candidates.push_back(best);
    }
  }
  if (in_excursion && have_best) candidates.push_back(best);

  const double refractory_s = opts.refractory_ms / 1000.0;
  for (std::size_t idx : candidates) {
    const double t = w.time_of(idx);
    if (train.peak_times.empty() || t - train.peak_times.back() >= refractory_s) train.peak_times.push_back(t);
  }
  return train;
}

inline PeakTrain detect_peaks(const PpgWaveform& w, double refractory_ms) {
  return detect_peaks(w, PeakOptions{refractory_ms});
}

}  // namespace wristmon::signal
