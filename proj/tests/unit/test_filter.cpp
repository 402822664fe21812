#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "wristmon/signal/filter.hpp"
#include "wristmon/signal/synth.hpp"

using namespace wristmon;
using namespace wristmon::signal;

namespace {

constexpr double kPi = std::numbers::pi;

PpgWaveform sine(double f, double amplitude, double seconds, double fs) {
  PpgWaveform w;
  w.sample_rate_hz = fs;
  for (int i = 0; i < static_cast<int>(seconds * fs); ++i) w.samples.push_back(amplitude * std::sin(2 * kPi * f * i / fs));
  return w;
}

// Oracle: |H(e^jw)| of the cascade evaluated directly from the analog
// prototypes s/(s+1) and 1/(s+1) under the pre-warped bilinear map
// s = (z - 1) / (K (z + 1)), K = tan(pi fc / fs).
double cascade_gain(const FilterSpec& spec, double f, double fs) {
  const std::complex<double> z = std::polar(1.0, 2 * kPi * f / fs);
  auto s_of = [&](double fc) { return (z - 1.0) / (std::tan(kPi * fc / fs) * (z + 1.0)); };
  const auto s_hp = s_of(spec.hp_cutoff_hz);
  const auto s_lp = s_of(spec.lp_cutoff_hz);
  const double hp = std::abs(s_hp / (s_hp + 1.0));
  const double lp = std::abs(1.0 / (s_lp + 1.0));
  return std::pow(hp * lp, spec.stages_per_side);
}

double peak_abs_after(const PpgWaveform& w, double from_s) {
  double m = 0;
  for (std::size_t i = static_cast<std::size_t>(from_s * w.sample_rate_hz); i < w.size(); ++i)
    m = std::max(m, std::abs(w.samples[i]));
  return m;
}

}  // namespace

TEST(Bandpass, RejectsConstantInput) {
  PpgWaveform w{std::vector<double>(500, 1.65), 50.0, {}};
  const auto y = apply_bandpass(w, {0.8, 3.5, 1});
  ASSERT_EQ(y.size(), w.size());
  EXPECT_DOUBLE_EQ(y.sample_rate_hz, 50.0);
  EXPECT_LT(peak_abs_after(y, 2.0), 1e-3);
}

TEST(Bandpass, PassesInBandTone) {
  const FilterSpec spec{0.8, 3.5, 1};
  const double oracle = cascade_gain(spec, 1.5, 50);  // 0.8130
  EXPECT_GE(oracle, 0.7);
  const auto y = apply_bandpass(sine(1.5, 0.1, 20, 50), spec);
  const double measured = peak_abs_after(y, 10.0);
  EXPECT_GE(measured, 0.7 * 0.1);
  EXPECT_NEAR(measured, oracle * 0.1, 0.02 * 0.1);
}

TEST(Bandpass, AttenuatesHighTone) {
  const FilterSpec spec{0.8, 3.5, 1};
  const double oracle = cascade_gain(spec, 12.0, 50);  // 0.2310
  EXPECT_LE(oracle, 0.3);
  const auto y = apply_bandpass(sine(12.0, 0.1, 20, 50), spec);
  const double measured = peak_abs_after(y, 10.0);
  EXPECT_LE(measured, 0.03);
  EXPECT_NEAR(measured, oracle * 0.1, 0.03 * oracle * 0.1);
}

TEST(Bandpass, SteadyStateGainMatchesOracleAcrossFrequencies) {
  const FilterSpec spec{};  // two stages per side
  for (double f : {0.3, 0.8, 1.0, 2.0, 3.5, 6.0, 10.0}) {
    const auto y = apply_bandpass(sine(f, 1.0, 40, 50), spec);
    EXPECT_NEAR(peak_abs_after(y, 25.0), cascade_gain(spec, f, 50), 0.02) << f;
  }
}

TEST(Bandpass, IsLinear) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  PpgWaveform a{{}, 50, {}}, b{{}, 50, {}};
  for (int i = 0; i < 600; ++i) {
    a.samples.push_back(n(rng));
    b.samples.push_back(2.0 + n(rng));
  }
  const double ka = 0.7, kb = -2.5;
  PpgWaveform mix{{}, 50, {}};
  for (std::size_t i = 0; i < a.size(); ++i) mix.samples.push_back(ka * a.samples[i] + kb * b.samples[i]);

  const FilterSpec spec{};
  const auto ya = apply_bandpass(a, spec), yb = apply_bandpass(b, spec), ymix = apply_bandpass(mix, spec);
  double scale = 0;
  for (double v : ymix.samples) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_NEAR(ymix.samples[i], ka * ya.samples[i] + kb * yb.samples[i], 1e-9 * scale) << i;
}

TEST(Bandpass, EmptyWaveformStaysEmpty) {
  EXPECT_TRUE(apply_bandpass(PpgWaveform{{}, 50, {}}, {}).samples.empty());
}

TEST(Bandpass, RejectsInvalidCutoffs) {
  const PpgWaveform w{std::vector<double>(10, 0.0), 50.0, {}};
  EXPECT_THROW(apply_bandpass(w, {0.8, 25.0, 1}), InvalidArgument);  // at Nyquist
  EXPECT_THROW(apply_bandpass(w, {0.8, 30.0, 1}), InvalidArgument);
  EXPECT_THROW(apply_bandpass(w, {3.5, 0.8, 1}), InvalidArgument);
  EXPECT_THROW(apply_bandpass(w, {0.0, 3.5, 1}), InvalidArgument);
  EXPECT_THROW(apply_bandpass(w, {0.8, 3.5, 0}), InvalidArgument);
}

TEST(Bandpass, IsDeterministic) {
  const auto w = synthesize_ppg(90, 10, 50, 1.0, 0.02, 0.01, 11);
  EXPECT_EQ(apply_bandpass(w, {}).samples, apply_bandpass(w, {}).samples);
}
