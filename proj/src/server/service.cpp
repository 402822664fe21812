#include "wristmon/server/service.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "wristmon/common/errors.hpp"

namespace wristmon::server {

struct TelemetryService::Slot {
  Channel meta;
  mutable std::shared_mutex mu;  // guards entries
  std::vector<FeedEntry> entries;
};

TelemetryService::TelemetryService(ServiceConfig cfg, ServerClock clock)
    : cfg_(std::move(cfg)),
      clock_(std::move(clock)),
      storage_(cfg_.data_dir, cfg_.fsync_on_write),
      accounts_(cfg_.session_ttl),
      keys_(cfg_.seed) {
  detail::require(cfg_.min_update_interval_s >= 0.0, "min update interval must be non-negative");
  StoredState stored = storage_.load_all();
  load_warnings_ = std::move(stored.warnings);
  for (auto& c : stored.channels) {
    auto slot = std::make_unique<Slot>();
    slot->meta = c;
    slot->entries = std::move(stored.feeds[c.id]);
    slots_.emplace(c.id, std::move(slot));
  }
}

TelemetryService::~TelemetryService() = default;

Channel TelemetryService::create_channel(const std::string& name, const std::vector<std::string>& field_names) {
  detail::require(!field_names.empty() && field_names.size() <= kMaxFields, "a channel needs 1 to 8 fields");
  for (const auto& f : field_names) detail::require(!f.empty(), "field names must be non-empty");

  std::unique_lock lock(mu_);
  std::set<std::string> used;
  for (const auto& [_, s] : slots_) {
    used.insert(s->meta.write_key);
    used.insert(s->meta.read_key);
  }
  auto fresh_key = [&] {
    std::string k;
    do k = keys_.next();
    while (used.contains(k));
    used.insert(k);
    return k;
  };

  auto slot = std::make_unique<Slot>();
  slot->meta.id = slots_.empty() ? 1 : slots_.rbegin()->first + 1;
  slot->meta.name = name;
  slot->meta.field_names = field_names;
  slot->meta.write_key = fresh_key();
  slot->meta.read_key = fresh_key();
  slot->meta.created_at = clock_();
  slot->meta.min_update_interval_s = cfg_.min_update_interval_s;
  const Channel created = slot->meta;
  slots_.emplace(created.id, std::move(slot));

  std::vector<Channel> all;
  for (const auto& [_, s] : slots_) all.push_back(s->meta);
  storage_.save_channels(all);
  return created;
}

std::optional<Channel> TelemetryService::find_channel_by_name(const std::string& name) const {
  std::shared_lock lock(mu_);
  for (const auto& [_, s] : slots_)
    if (s->meta.name == name) return s->meta;
  return std::nullopt;
}

std::optional<Channel> TelemetryService::channel(std::int64_t id) const {
  if (Slot* s = find_slot(id)) return s->meta;
  return std::nullopt;
}

std::vector<Channel> TelemetryService::channels() const {
  std::shared_lock lock(mu_);
  std::vector<Channel> out;
  for (const auto& [_, s] : slots_) out.push_back(s->meta);
  return out;
}

TelemetryService::Slot* TelemetryService::find_slot(std::int64_t id) const {
  std::shared_lock lock(mu_);
  const auto it = slots_.find(id);
  return it == slots_.end() ? nullptr : it->second.get();
}

TelemetryService::Slot* TelemetryService::find_slot_by_write_key(const std::string& key) const {
  std::shared_lock lock(mu_);
  for (const auto& [_, s] : slots_)
    if (s->meta.write_key == key) return s.get();
  return nullptr;
}

UpdateOutcome TelemetryService::handle_update(const UpdateInput& in) {
  Slot* slot = in.api_key.empty() ? nullptr : find_slot_by_write_key(in.api_key);
  if (!slot) return {401, 0};

  const std::size_t arity = slot->meta.field_names.size();
  if (in.malformed || in.fields.empty()) return {400, 0};
  for (const auto& [index, _] : in.fields)
    if (index < 1 || static_cast<std::size_t>(index) > arity) return {400, 0};

  Timestamp created_at{};
  if (in.created_at) {
    const auto parsed = parse_iso8601(*in.created_at);
    if (!parsed) return {400, 0};
    created_at = *parsed;
  } else {
    created_at = clock_();
  }

  std::unique_lock lock(slot->mu);
  if (!slot->entries.empty()) {
    const auto gap = created_at - slot->entries.back().created_at;
    if (gap < seconds_to_duration(slot->meta.min_update_interval_s) || gap.count() < 0) return {429, 0};
  }

  FeedEntry e;
  e.entry_id = static_cast<std::int64_t>(slot->entries.size()) + 1;
  e.created_at = created_at;
  e.field_values.resize(arity);
  for (const auto& [index, value] : in.fields) e.field_values[static_cast<std::size_t>(index - 1)] = value;

  storage_.append_entry(slot->meta.id, e);
  slot->entries.push_back(std::move(e));
  return {200, slot->entries.back().entry_id};
}

FeedResult TelemetryService::get_feeds(const FeedQuery& q, const ReadCredentials& creds) const {
  FeedResult r;
  Slot* slot = find_slot(q.channel_id);
  if (!slot) {
    r.status = 404;
    return r;
  }

  bool authorised = creds.api_key && *creds.api_key == slot->meta.read_key;
  if (!authorised && creds.bearer_token) {
    const auto session = accounts_.session(*creds.bearer_token, clock_());
    authorised = session && std::ranges::find(session->channel_ids, q.channel_id) != session->channel_ids.end();
  }
  if (!authorised) {
    r.status = 401;
    return r;
  }
  if (q.results < 1) {
    r.status = 400;
    return r;
  }
  if (q.field && (*q.field < 1 || static_cast<std::size_t>(*q.field) > slot->meta.field_names.size())) {
    r.status = 400;
    return r;
  }

  r.channel = slot->meta;
  std::shared_lock lock(slot->mu);
  const auto n = std::min<std::size_t>(slot->entries.size(), static_cast<std::size_t>(q.results));
  r.entries.assign(slot->entries.end() - static_cast<std::ptrdiff_t>(n), slot->entries.end());
  return r;
}

std::optional<std::string> TelemetryService::authenticate(const std::string& username, const std::string& password) {
  return accounts_.authenticate(username, password, clock_());
}

nlohmann::ordered_json feeds_to_json(const FeedResult& r, std::optional<int> field) {
  using nlohmann::ordered_json;
  auto field_key = [](std::size_t i) { return "field" + std::to_string(i + 1); };

  ordered_json channel;
  channel["id"] = r.channel.id;
  channel["name"] = r.channel.name;
  for (std::size_t i = 0; i < r.channel.field_names.size(); ++i)
    if (!field || static_cast<std::size_t>(*field) == i + 1) channel[field_key(i)] = r.channel.field_names[i];

  ordered_json feeds = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json row;
    row["created_at"] = format_iso8601(e.created_at);
    row["entry_id"] = e.entry_id;
    for (std::size_t i = 0; i < e.field_values.size(); ++i) {
      if (field && static_cast<std::size_t>(*field) != i + 1) continue;
      const auto& v = e.field_values[i];
      row[field_key(i)] = v ? ordered_json(format_field_value(*v)) : ordered_json(nullptr);
    }
    feeds.push_back(std::move(row));
  }

  ordered_json out;
  out["channel"] = std::move(channel);
  out["feeds"] = std::move(feeds);
  return out;
}

}  // namespace wristmon::server
