#include <gtest/gtest.h>

#include <random>

#include "wristmon/sensors/pulse_adc.hpp"

using namespace wristmon;
using namespace wristmon::sensors;

TEST(Digitize, Examples) {
  const PulseAdcModel adc;
  EXPECT_EQ(adc.digitize(0.0), 0);
  EXPECT_EQ(adc.digitize(3.3), 1023);
  EXPECT_EQ(adc.digitize(1.65), 512);  // floor(0.5 * 1024)
}

TEST(Digitize, ClampsOutsideRange) {
  const PulseAdcModel adc;
  EXPECT_EQ(adc.digitize(-1.0), 0);
  EXPECT_EQ(adc.digitize(5.0), 1023);
  EXPECT_EQ(adc.digitize(std::nan("")), 0);
}

TEST(Undigitize, MidTreadReconstruction) {
  const PulseAdcModel adc;
  EXPECT_NEAR(adc.undigitize(0), 0.5 * 3.3 / 1024, 1e-15);
  EXPECT_NEAR(adc.undigitize(512), 512.5 * 3.3 / 1024, 1e-15);
  EXPECT_THROW(adc.undigitize(1024), InvalidArgument);
  EXPECT_THROW(adc.undigitize(-1), InvalidArgument);
}

TEST(PulseAdc, RoundTripErrorBoundedByOneLsb) {
  for (int bits : {1, 8, 10, 12}) {
    const PulseAdcModel adc(3.3, bits);
    std::mt19937_64 rng(static_cast<unsigned>(bits));
    std::uniform_real_distribution<double> v(0.0, 3.3);
    for (int i = 0; i < 2000; ++i) {
      const double x = v(rng);
      EXPECT_LE(std::abs(adc.undigitize(adc.digitize(x)) - x), adc.lsb_v());
    }
  }
}

TEST(PulseAdc, MonotoneCodes) {
  const PulseAdcModel adc;
  std::int32_t prev = 0;
  for (double v = -0.5; v < 4.0; v += 0.0007) {
    const auto c = adc.digitize(v);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(PulseAdc, RejectsBadConfig) {
  EXPECT_THROW(PulseAdcModel(0.0, 10), InvalidArgument);
  EXPECT_THROW(PulseAdcModel(3.3, 0), InvalidArgument);
}
