#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>

#include "wristmon/common/errors.hpp"

namespace wristmon::sensors {

enum class Alarm { none, high, low };

inline const char* to_string(Alarm a) {
  switch (a) {
    case Alarm::high: return "high";
    case Alarm::low: return "low";
    case Alarm::none: break;
  }
  return "none";
}

/// One convert-T result. `raw16` is the scratchpad temperature register:
/// two's complement, 1/16 degC per LSB, with the low (12 - resolution) bits
/// cleared.
struct TemperatureReading {
  std::int16_t raw16 = 0;
  double celsius = 0.0;
  Alarm alarm = Alarm::none;
};

struct Ds18b20Config {
  int resolution_bits = 12;
  double th_c = 38.0;
  double tl_c = 35.0;
  double accuracy_band_c = 0.5;
  bool noise_enabled = true;
  std::uint64_t noise_seed = 0;
};

/// Behavioural DS18B20. Holds a seeded generator, so an instance must not be
/// shared between threads.
class Ds18b20Model {
 public:
  static constexpr double kMinC = -55.0;
  static constexpr double kMaxC = 125.0;
  // Datasheet band where the tight accuracy figure applies.
  static constexpr double kTightBandLoC = -10.0;
  static constexpr double kTightBandHiC = 85.0;
  static constexpr double kOuterBandC = 2.0;

  explicit Ds18b20Model(Ds18b20Config cfg = {}) : cfg_(cfg), rng_(cfg.noise_seed) {
    detail::require(cfg_.resolution_bits >= 9 && cfg_.resolution_bits <= 12, "resolution must be 9..12 bits");
    detail::require(cfg_.tl_c < cfg_.th_c, "low alarm must be below high alarm");
    detail::require(cfg_.accuracy_band_c >= 0.0, "accuracy band must be non-negative");
  }

  const Ds18b20Config& config() const { return cfg_; }

  /// Quantisation step in degC: 0.0625 at 12 bits, 0.5 at 9 bits.
  double step_c() const { return static_cast<double>(1 << (12 - cfg_.resolution_bits)) / 16.0; }

  /// 750 ms at 12 bits, halving per bit dropped.
  std::chrono::microseconds conversion_time() const {
    return std::chrono::microseconds{750'000 >> (12 - cfg_.resolution_bits)};
  }

  Alarm check_alarm(double celsius) const {
    if (celsius > cfg_.th_c) return Alarm::high;
    if (celsius < cfg_.tl_c) return Alarm::low;
    return Alarm::none;
  }

  TemperatureReading convert_t(double true_temp_c) {
    detail::require(std::isfinite(true_temp_c), "temperature must be finite");
    double t = std::clamp(true_temp_c, kMinC, kMaxC);
    if (cfg_.noise_enabled) {
      const bool tight = t >= kTightBandLoC && t <= kTightBandHiC;
      const double band = tight ? cfg_.accuracy_band_c : kOuterBandC;
      if (band > 0.0) t += std::uniform_real_distribution<double>(-band, band)(rng_);
      t = std::clamp(t, kMinC, kMaxC);
    }
    return encode(t);
  }

 private:
  TemperatureReading encode(double celsius) const {
    const auto sixteenths = static_cast<std::int32_t>(std::trunc(celsius * 16.0));
    const std::int32_t mask = ~((1 << (12 - cfg_.resolution_bits)) - 1);
    const auto raw = static_cast<std::int16_t>(sixteenths & mask);
    TemperatureReading r;
    r.raw16 = raw;
    r.celsius = static_cast<double>(raw) / 16.0;
    r.alarm = check_alarm(r.celsius);
    return r;
  }

  Ds18b20Config cfg_;
  std::mt19937_64 rng_;
};

}  // namespace wristmon::sensors
