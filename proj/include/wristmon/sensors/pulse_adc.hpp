#pragma once

#include <cmath>
#include <cstdint>

#include "wristmon/common/errors.hpp"
#include "wristmon/signal/waveform.hpp"

namespace wristmon::sensors {

/// Unipolar successive-approximation ADC feeding the pulse sensor.
class PulseAdcModel {
 public:
  explicit PulseAdcModel(double vref_v = 3.3, int bits = 10) : vref_v_(vref_v), bits_(bits) {
    detail::require(vref_v_ > 0.0 && std::isfinite(vref_v_), "vref must be positive");
    detail::require(bits_ >= 1 && bits_ <= 24, "bits must be in [1, 24]");
  }

  double vref_v() const { return vref_v_; }
  int bits() const { return bits_; }
  std::int32_t levels() const { return std::int32_t{1} << bits_; }
  double lsb_v() const { return vref_v_ / static_cast<double>(levels()); }

  std::int32_t digitize(double volts) const {
    if (!(volts > 0.0)) return 0;  // also catches NaN
    const double code = std::floor(volts / vref_v_ * static_cast<double>(levels()));
    if (code >= static_cast<double>(levels() - 1)) return levels() - 1;
    return static_cast<std::int32_t>(code);
  }

  /// Mid-tread reconstruction.
  double undigitize(std::int32_t counts) const {
    detail::require(counts >= 0 && counts < levels(), "ADC counts out of range");
    return (static_cast<double>(counts) + 0.5) * lsb_v();
  }

  /// Quantises every sample and reconstructs it, as the firmware sees it.
  signal::PpgWaveform capture(const signal::PpgWaveform& analog) const {
    signal::PpgWaveform out = analog;
    for (double& v : out.samples) v = undigitize(digitize(v));
    return out;
  }

 private:
  double vref_v_;
  int bits_;
};

}  // namespace wristmon::sensors
