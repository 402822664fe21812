#include <gtest/gtest.h>

#include <random>

#include "clock.hpp"
#include "support.hpp"
#include "wristmon/server/service.hpp"
#include "wristmon/server/storage.hpp"

using namespace wristmon;
using namespace wristmon::server;
using namespace std::chrono_literals;
using wristmon::testing::ManualClock;
using wristmon::testing::TempDir;

namespace {

const Timestamp kT0 = *parse_iso8601("2018-07-02T10:45:00Z");

ServiceConfig config_for(const TempDir& dir, double interval = 15.0) {
  ServiceConfig cfg;
  cfg.data_dir = dir.path();
  cfg.min_update_interval_s = interval;
  cfg.seed = 42;
  return cfg;
}

UpdateInput update(const std::string& key, double temp, double bpm) {
  UpdateInput in;
  in.api_key = key;
  in.fields = {{1, temp}, {2, bpm}};
  return in;
}

}  // namespace

TEST(FeedStorage, EmptyDirectoryLoadsEmptyState) {
  TempDir dir;
  const auto state = FeedStorage(dir.path(), false).load_all();
  EXPECT_TRUE(state.channels.empty());
  EXPECT_TRUE(state.feeds.empty());
  EXPECT_TRUE(state.warnings.empty());
}

TEST(FeedStorage, RestartContinuesEntryIds) {
  TempDir dir;
  ManualClock clock(kT0);
  std::vector<FeedEntry> before;
  Channel ch;
  {
    TelemetryService svc(config_for(dir), clock.as_function());
    ch = svc.create_channel("patient-1", {"temperature_c", "pulse_bpm"});
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(svc.handle_update(update(ch.write_key, 36.5 + i, 70 + i)).entry_id, i + 1);
      clock.advance(30s);
    }
    before = svc.get_feeds({ch.id, 100}, {ch.read_key, {}}).entries;
  }
  TelemetryService svc(config_for(dir), clock.as_function());
  EXPECT_EQ(svc.channel(ch.id), ch);
  EXPECT_EQ(svc.get_feeds({ch.id, 100}, {ch.read_key, {}}).entries, before);
  EXPECT_EQ(svc.handle_update(update(ch.write_key, 37, 71)).entry_id, 4);
}

TEST(FeedStorage, TruncatedTailIsRecovered) {
  TempDir dir;
  ManualClock clock(kT0);
  Channel ch;
  {
    TelemetryService svc(config_for(dir), clock.as_function());
    ch = svc.create_channel("p", {"t", "b"});
    for (int i = 0; i < 2; ++i) {
      svc.handle_update(update(ch.write_key, 36, 70));
      clock.advance(30s);
    }
  }
  const auto feed = dir.path() / "feed_1.jsonl";
  const auto good = wristmon::testing::slurp(feed);
  {
    std::ofstream out(feed, std::ios::app);
    out << R"({"entry_id":3,"created_at":"2018-07-02T10:46)";
  }
  TelemetryService svc(config_for(dir), clock.as_function());
  EXPECT_EQ(svc.get_feeds({ch.id, 100}, {ch.read_key, {}}).entries.size(), 2u);
  ASSERT_EQ(svc.load_warnings().size(), 1u);
  EXPECT_NE(svc.load_warnings()[0].find("feed_1.jsonl:3"), std::string::npos);
  EXPECT_EQ(wristmon::testing::slurp(feed), good);
  EXPECT_EQ(svc.handle_update(update(ch.write_key, 36, 70)).entry_id, 3);
}

TEST(FeedStorage, LayoutMatchesContract) {
  TempDir dir;
  ManualClock clock(kT0);
  TelemetryService svc(config_for(dir), clock.as_function());
  const auto ch = svc.create_channel("p", {"t", "b"});
  UpdateInput in;
  in.api_key = ch.write_key;
  in.fields = {{2, 77.0}};
  svc.handle_update(in);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "channels.json"));
  EXPECT_EQ(wristmon::testing::slurp(dir.path() / "feed_1.jsonl"),
            "{\"created_at\":\"2018-07-02T10:45:00Z\",\"entry_id\":1,\"fields\":[null,77.0]}\n");
  const auto channels = nlohmann::json::parse(wristmon::testing::slurp(dir.path() / "channels.json"));
  ASSERT_TRUE(channels.is_array());
  EXPECT_EQ(channels[0]["write_key"], ch.write_key);
  EXPECT_EQ(channels[0]["field_names"], nlohmann::json({"t", "b"}));
}

TEST(FeedStorage, RandomHistoriesSurviveRestart) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    TempDir dir;
    ManualClock clock(kT0);
    std::map<std::int64_t, std::vector<FeedEntry>> before;
    std::vector<Channel> channels;
    {
      TelemetryService svc(config_for(dir, 0.0), clock.as_function());
      for (int c = 0; c < 1 + trial % 3; ++c) channels.push_back(svc.create_channel("c" + std::to_string(c), {"a", "b", "c"}));
      std::uniform_int_distribution<int> pick(0, static_cast<int>(channels.size()) - 1), mask(1, 7);
      std::uniform_real_distribution<double> value(-100, 100);
      for (int i = 0; i < 40; ++i) {
        UpdateInput in;
        in.api_key = channels[static_cast<std::size_t>(pick(rng))].write_key;
        const int m = mask(rng);
        for (int f = 0; f < 3; ++f)
          if (m & (1 << f)) in.fields[f + 1] = value(rng);
        ASSERT_GT(svc.handle_update(in).entry_id, 0);
        clock.advance(std::chrono::milliseconds{rng() % 5000});
      }
      for (const auto& c : channels) before[c.id] = svc.get_feeds({c.id, 8000}, {c.read_key, {}}).entries;
    }
    TelemetryService svc(config_for(dir, 0.0), clock.as_function());
    EXPECT_EQ(svc.channels(), channels);
    for (const auto& c : channels) EXPECT_EQ(svc.get_feeds({c.id, 8000}, {c.read_key, {}}).entries, before[c.id]);
  }
}
