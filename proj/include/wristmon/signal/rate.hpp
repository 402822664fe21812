#pragma once

#include <cmath>
#include <numeric>
#include <span>

#include "wristmon/common/errors.hpp"
#include "wristmon/signal/peaks.hpp"

namespace wristmon::signal {

/// 60 * F, with F the reciprocal of the mean inter-peak interval.
inline double estimate_bpm(const PeakTrain& p) {
  if (p.size() < 2) throw NoPulseError();
  const double span_s = p.peak_times.back() - p.peak_times.front();
  detail::require(span_s > 0.0, "peak times must be strictly increasing");
  const double beat_hz = static_cast<double>(p.size() - 1) / span_s;
  return 60.0 * beat_hz;
}

/// Device-to-reference ratio used to convert a raw pulse metric into BPM.
struct CalibrationRecord {
  double device_mean = 1.0;
  double reference_mean = 1.0;
  double scaling_factor = 1.0;

  static CalibrationRecord identity() { return {}; }
  bool operator==(const CalibrationRecord&) const = default;
};

namespace internal {

inline double mean(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace internal

inline CalibrationRecord calibrate_scale(std::span<const double> device_readings,
                                         std::span<const double> reference_readings) {
  detail::require(!device_readings.empty(), "device readings are empty");
  detail::require(!reference_readings.empty(), "reference readings are empty");
  const double dev = internal::mean(device_readings);
  const double ref = internal::mean(reference_readings);
  detail::require(std::isfinite(dev) && std::isfinite(ref), "readings must be finite");
  detail::require(ref > 0.0, "reference mean must be positive");
  return {dev, ref, dev / ref};
}

inline double apply_scale(double raw_metric, const CalibrationRecord& s) {
  detail::require(s.scaling_factor > 0.0 && std::isfinite(s.scaling_factor),
                            "scaling factor must be positive");
  return raw_metric / s.scaling_factor;
}

}  // namespace wristmon::signal
