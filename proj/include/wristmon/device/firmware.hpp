#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wristmon/common/time.hpp"
#include "wristmon/device/body.hpp"
#include "wristmon/device/types.hpp"
#include "wristmon/device/uplink.hpp"
#include "wristmon/sensors/ds18b20.hpp"
#include "wristmon/sensors/pulse_adc.hpp"
#include "wristmon/signal/pipeline.hpp"

namespace wristmon::device {

/// The sensors on the wristband.
struct DeviceHardware {
  sensors::Ds18b20Model thermometer{};
  sensors::PulseAdcModel adc{};
  signal::PipelineOptions pipeline{};
};

/// Replays the buffer oldest-first. Each entry leaves the buffer only once the
/// server has answered for it; an unreachable server stops the drain with the
/// remainder still queued. Rejected entries are discarded (and counted) since
/// resending cannot succeed.
template <UpdateTransport T>
void drain_buffer(DeviceState& state, const DeviceConfig& cfg, T& transport) {
  while (!state.buffer.empty()) {
    const UplinkResult res = uplink_reading(state.buffer.front(), cfg, transport);
    if (res.outcome == UplinkOutcome::unreachable) return;
    state.buffer.pop_front();
    if (res.outcome == UplinkOutcome::ack)
      ++state.acked_count;
    else
      ++state.rejected_count;
  }
}

struct CycleReport {
  VitalsReading reading;
  std::optional<UplinkResult> uplink;  // unset when the link was already known down
  std::vector<DeviceMode> modes;       // modes entered, in order, ending in idle
};

using ModeObserver = std::function<void(const DeviceState&)>;

/// One firmware cycle: idle -> sampling -> processing -> uploading|buffering -> idle.
/// Leaves the clock at the next cycle boundary.
template <PatientSignals Body, UpdateTransport T>
CycleReport run_cycle(DeviceState& state, const DeviceConfig& cfg, DeviceHardware& hw, VirtualClock& clock,
                      Body& body, T& transport, const ModeObserver& observe = {}) {
  CycleReport report;
  auto enter = [&](DeviceMode m) {
    state.mode = m;
    report.modes.push_back(m);
    if (observe) observe(state);
  };

  const Timestamp cycle_start = clock.now();

  enter(DeviceMode::sampling);
  const signal::PpgWaveform analog = body.ppg(cycle_start, cfg.ppg_window_s, cfg.sample_rate_hz);
  const signal::PpgWaveform captured = hw.adc.capture(analog);
  const sensors::TemperatureReading temp = hw.thermometer.convert_t(body.temperature_at(cycle_start));
  clock.advance_by(seconds_to_duration(cfg.ppg_window_s));

  enter(DeviceMode::processing);
  const signal::PulseMeasurement pulse = signal::measure_pulse(captured, hw.pipeline);
  report.reading.taken_at = clock.now();
  report.reading.temperature_c = temp.celsius;
  if (pulse.bpm) report.reading.pulse_bpm = signal::apply_scale(*pulse.bpm, cfg.scaling);
  ++state.produced_count;

  // Older readings go first so the feed stays in taken_at order.
  drain_buffer(state, cfg, transport);
  bool buffered = false;
  if (!state.buffer.empty()) {
    enqueue(state, report.reading, cfg.buffer_capacity);
    buffered = true;
  } else {
    report.uplink = uplink_reading(report.reading, cfg, transport);
    switch (report.uplink->outcome) {
      case UplinkOutcome::ack: ++state.acked_count; break;
      case UplinkOutcome::rejected: ++state.rejected_count; break;
      case UplinkOutcome::unreachable:
        enqueue(state, report.reading, cfg.buffer_capacity);
        buffered = true;
        break;
    }
  }
  enter(buffered ? DeviceMode::buffering : DeviceMode::uploading);

  enter(DeviceMode::idle);
  clock.advance_to(cycle_start + seconds_to_duration(cfg.cycle_interval_s));
  return report;
}

struct SimulationSummary {
  std::uint64_t produced = 0;
  std::uint64_t acked = 0;
  std::uint64_t buffered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t rejected = 0;
};

inline SimulationSummary summarize(const DeviceState& s) {
  return {s.produced_count, s.acked_count, s.buffer.size(), s.dropped_count, s.rejected_count};
}

/// Runs every cycle that starts before `origin + duration_s`, then makes a
/// final drain attempt at the end of the run.
template <PatientSignals Body, UpdateTransport T>
SimulationSummary run_simulation(DeviceState& state, const DeviceConfig& cfg, DeviceHardware& hw, VirtualClock& clock,
                                 Body& body, T& transport, double duration_s,
                                 const std::function<void(const CycleReport&, const DeviceState&)>& on_cycle = {}) {
  cfg.validate();
  detail::require(duration_s >= 0.0, "duration must be non-negative");
  const Timestamp origin = clock.now();
  const Timestamp end = origin + seconds_to_duration(duration_s);
  while (clock.now() < end) {
    const CycleReport report = run_cycle(state, cfg, hw, clock, body, transport);
    if (on_cycle) on_cycle(report, state);
  }
  if (!state.buffer.empty()) drain_buffer(state, cfg, transport);
  return summarize(state);
}

}  // namespace wristmon::device
