#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "wristmon/common/time.hpp"
#include "wristmon/server/accounts.hpp"
#include "wristmon/server/channel.hpp"
#include "wristmon/server/storage.hpp"

namespace wristmon::server {

using ServerClock = std::function<Timestamp()>;

inline Timestamp system_now() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

struct ServiceConfig {
  std::filesystem::path data_dir = "data";
  double min_update_interval_s = 15.0;  // applied to channels created by this instance
  std::chrono::seconds session_ttl{3600};
  std::uint64_t seed = 0;
  bool fsync_on_write = false;
};

/// A parsed channel-update request.
struct UpdateInput {
  std::string api_key;
  std::map<int, double> fields;  // 1-based index -> value
  std::optional<std::string> created_at;
  bool malformed = false;  // a field parameter that did not parse
};

/// `entry_id` is 0 whenever `status` is not 200.
struct UpdateOutcome {
  int status = 200;
  std::int64_t entry_id = 0;
};

struct ReadCredentials {
  std::optional<std::string> api_key;
  std::optional<std::string> bearer_token;
};

struct FeedQuery {
  std::int64_t channel_id = 0;
  long long results = 100;
  std::optional<int> field;  // restrict to one 1-based field
};

struct FeedResult {
  int status = 200;
  Channel channel;
  std::vector<FeedEntry> entries;  // last `results`, oldest first
};

/// The ThingSpeak-style channel service, independent of HTTP.
///
/// Per-channel ingestion is serialised so entry ids are 1..N without gaps;
/// readers copy a consistent prefix under a shared lock.
class TelemetryService {
 public:
  explicit TelemetryService(ServiceConfig cfg, ServerClock clock = system_now);
  ~TelemetryService();

  TelemetryService(const TelemetryService&) = delete;
  TelemetryService& operator=(const TelemetryService&) = delete;

  Channel create_channel(const std::string& name, const std::vector<std::string>& field_names);
  std::optional<Channel> find_channel_by_name(const std::string& name) const;
  std::optional<Channel> channel(std::int64_t id) const;
  std::vector<Channel> channels() const;

  UpdateOutcome handle_update(const UpdateInput& in);
  FeedResult get_feeds(const FeedQuery& q, const ReadCredentials& creds) const;

  AccountStore& accounts() { return accounts_; }
  std::optional<std::string> authenticate(const std::string& username, const std::string& password);

  /// Warnings produced while loading persisted state.
  const std::vector<std::string>& load_warnings() const { return load_warnings_; }
  const ServiceConfig& config() const { return cfg_; }

 private:
  struct Slot;

  Slot* find_slot(std::int64_t id) const;
  Slot* find_slot_by_write_key(const std::string& key) const;

  ServiceConfig cfg_;
  ServerClock clock_;
  FeedStorage storage_;
  mutable AccountStore accounts_;
  KeyGenerator keys_;

  mutable std::shared_mutex mu_;  // guards slots_ and keys_
  std::map<std::int64_t, std::unique_ptr<Slot>> slots_;
  std::vector<std::string> load_warnings_;
};

/// `{"channel":{...},"feeds":[...]}` with field values as strings.
nlohmann::ordered_json feeds_to_json(const FeedResult& r, std::optional<int> field = std::nullopt);

}  // namespace wristmon::server
