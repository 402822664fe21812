#include <gtest/gtest.h>

#include <sstream>

#include "wristmon/sensors/pulse_adc.hpp"
#include "wristmon/signal/pipeline.hpp"
#include "wristmon/signal/synth.hpp"

using namespace wristmon;
using namespace wristmon::signal;

namespace {

// Oracle: BPM from the maxima of the clean synthetic pulse itself.
double direct_pulse_count_bpm(double bpm, double seconds, double fs) {
  const auto w = synthesize_ppg(bpm, seconds, fs, 0, 0, 0, 1);
  std::vector<double> t;
  for (std::size_t i = 1; i + 1 < w.size(); ++i)
    if (w.samples[i] > 0.5 && w.samples[i] > w.samples[i - 1] && w.samples[i] >= w.samples[i + 1])
      t.push_back(w.time_of(i));
  return 60.0 * static_cast<double>(t.size() - 1) / (t.back() - t.front());
}

}  // namespace

TEST(MeasurePulse, SeventySevenBpmWithNoise) {
  const double oracle = direct_pulse_count_bpm(77, 30, 50);
  EXPECT_NEAR(oracle, 77, 0.5);
  const auto m = measure_pulse(synthesize_ppg(77, 30, 50, 1.0, 0.01, 0, 7));
  ASSERT_TRUE(m.bpm);
  EXPECT_NEAR(*m.bpm, 77, 2);
  EXPECT_NEAR(*m.bpm, oracle, 2);
}

TEST(MeasurePulse, RecoversBpmAcrossPhysiologicalRange) {
  const sensors::PulseAdcModel adc;
  for (int bpm = 50; bpm <= 180; bpm += 5) {
    const auto m = measure_pulse(adc.capture(synthesize_ppg(bpm, 30, 50, 0, 0, 0, 1)));
    ASSERT_TRUE(m.bpm) << bpm;
    EXPECT_NEAR(*m.bpm, bpm, 2) << bpm;
    EXPECT_NEAR(*m.bpm, direct_pulse_count_bpm(bpm, 30, 50), 2) << bpm;
  }
}

TEST(MeasurePulse, SurvivesDrift) {
  const auto m = measure_pulse(synthesize_ppg(72, 30, 50, 0.5, 0.01, 0.02, 2));
  ASSERT_TRUE(m.bpm);
  EXPECT_NEAR(*m.bpm, 72, 2);
}

TEST(MeasurePulse, FlatCaptureHasNoPulse) {
  const auto m = measure_pulse(PpgWaveform{std::vector<double>(1500, 0.0), 50, {}});
  EXPECT_TRUE(m.peaks.empty());
  EXPECT_FALSE(m.bpm);
}

TEST(WaveformCsv, RoundTrip) {
  const auto w = synthesize_ppg(77, 4, 50, 1.0, 0.01, 0, 3);
  std::stringstream ss;
  write_csv(ss, w);
  const auto back = read_csv(ss);
  EXPECT_NEAR(back.sample_rate_hz, 50.0, 1e-9);
  ASSERT_EQ(back.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(back.samples[i], w.samples[i], 1e-8);
}

TEST(WaveformCsv, ReportsLineOfFirstProblem) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_csv(in);
    } catch (const CsvError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of("time,v\n0,1\n"), 1u);
  EXPECT_EQ(line_of("t_s,volts\n0,1\n0.02,abc\n"), 3u);
  EXPECT_EQ(line_of("t_s,volts\n0,1\n0.02\n"), 3u);
  EXPECT_EQ(line_of("t_s,volts\n0,1\n0.02,1\n0.01,1\n"), 4u);
  EXPECT_EQ(line_of("t_s,volts\n0,1\n0.02,1\n0.05,1\n"), 4u);
  EXPECT_EQ(line_of("t_s,volts\n0,1\n"), 2u);
  EXPECT_EQ(line_of("t_s,volts\r\n0,1\r\n0.02,1\r\n"), 0u);
}
