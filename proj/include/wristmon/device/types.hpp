#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>

#include "wristmon/common/errors.hpp"
#include "wristmon/common/time.hpp"
#include "wristmon/signal/rate.hpp"

namespace wristmon::device {

/// Firmware parameters. Field names double as the JSON config keys.
struct DeviceConfig {
  double cycle_interval_s = 1800.0;
  double ppg_window_s = 15.0;
  double sample_rate_hz = 50.0;
  std::size_t buffer_capacity = 64;
  signal::CalibrationRecord scaling = signal::CalibrationRecord::identity();
  std::string channel_write_key;
  std::string server_url = "http://127.0.0.1:3000";

  void validate() const {
    detail::require(cycle_interval_s > 0.0, "cycle_interval_s must be positive");
    detail::require(ppg_window_s > 0.0, "ppg_window_s must be positive");
    detail::require(ppg_window_s < cycle_interval_s, "ppg_window_s must be shorter than cycle_interval_s");
    detail::require(sample_rate_hz > 0.0, "sample_rate_hz must be positive");
    detail::require(buffer_capacity >= 1, "buffer_capacity must be at least 1");
    detail::require(scaling.scaling_factor > 0.0, "scaling.scaling_factor must be positive");
  }
};

/// One (temperature, pulse) observation. An empty `pulse_bpm` marks a cycle
/// in which no pulse could be measured.
struct VitalsReading {
  Timestamp taken_at{};
  double temperature_c = 0.0;
  std::optional<double> pulse_bpm;

  bool operator==(const VitalsReading&) const = default;
};

enum class DeviceMode { idle, sampling, processing, uploading, buffering };

inline const char* to_string(DeviceMode m) {
  switch (m) {
    case DeviceMode::idle: return "idle";
    case DeviceMode::sampling: return "sampling";
    case DeviceMode::processing: return "processing";
    case DeviceMode::uploading: return "uploading";
    case DeviceMode::buffering: return "buffering";
  }
  return "?";
}

struct DeviceState {
  DeviceMode mode = DeviceMode::idle;
  std::deque<VitalsReading> buffer;
  std::uint64_t dropped_count = 0;

  // Lifetime counters. produced == acked + rejected + buffer.size() + dropped_count.
  std::uint64_t produced_count = 0;
  std::uint64_t acked_count = 0;
  std::uint64_t rejected_count = 0;

  bool conserved() const {
    return produced_count == acked_count + rejected_count + buffer.size() + dropped_count;
  }
};

/// Appends `r`; a full buffer sheds its oldest entry first.
inline void enqueue(DeviceState& state, const VitalsReading& r, std::size_t capacity) {
  detail::require(capacity >= 1, "buffer capacity must be at least 1");
  while (state.buffer.size() >= capacity) {
    state.buffer.pop_front();
    ++state.dropped_count;
  }
  state.buffer.push_back(r);
}

}  // namespace wristmon::device
