#pragma once

#include <charconv>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wristmon/common/time.hpp"
#include "wristmon/device/types.hpp"

namespace wristmon::device {

/// One channel-update request as it goes on the wire.
struct UpdateRequest {
  std::string api_key;
  std::vector<std::pair<int, double>> fields;  // (1-based field index, value)
  std::optional<Timestamp> created_at;
};

struct TransportResponse {
  int status = 0;
  std::string body;
};

/// Anything that can deliver an update. `std::nullopt` means the server was
/// not reached at all.
template <class T>
concept UpdateTransport = requires(T& t, const UpdateRequest& r) {
  { t.send_update(r) } -> std::same_as<std::optional<TransportResponse>>;
};

enum class UplinkOutcome { ack, rejected, unreachable };

inline const char* to_string(UplinkOutcome o) {
  switch (o) {
    case UplinkOutcome::ack: return "ack";
    case UplinkOutcome::rejected: return "rejected";
    case UplinkOutcome::unreachable: return "unreachable";
  }
  return "?";
}

struct UplinkResult {
  UplinkOutcome outcome = UplinkOutcome::unreachable;
  std::int64_t entry_id = 0;
};

/// temperature -> field1, pulse -> field2 (omitted when there was no pulse).
/// The reading's own timestamp always travels with it.
inline UpdateRequest make_update(const VitalsReading& r, const DeviceConfig& cfg) {
  UpdateRequest req;
  req.api_key = cfg.channel_write_key;
  req.fields.emplace_back(1, r.temperature_c);
  if (r.pulse_bpm) req.fields.emplace_back(2, *r.pulse_bpm);
  req.created_at = r.taken_at;
  return req;
}

inline UplinkResult classify(const std::optional<TransportResponse>& resp) {
  if (!resp) return {UplinkOutcome::unreachable, 0};
  if (resp->status >= 500) return {UplinkOutcome::unreachable, 0};
  std::int64_t id = 0;
  const auto& body = resp->body;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), id);
  if (resp->status == 200 && ec == std::errc{} && ptr == body.data() + body.size() && id > 0)
    return {UplinkOutcome::ack, id};
  return {UplinkOutcome::rejected, 0};
}

template <UpdateTransport T>
UplinkResult uplink_reading(const VitalsReading& r, const DeviceConfig& cfg, T& transport) {
  return classify(transport.send_update(make_update(r, cfg)));
}

/// An outage window in virtual seconds relative to the simulation start.
struct Outage {
  double start_s = 0.0;
  double end_s = 0.0;
};

/// Wraps a transport and refuses to reach it while the virtual clock sits
/// inside a scheduled outage.
template <UpdateTransport T>
class ScheduledLink {
 public:
  ScheduledLink(T& inner, const VirtualClock& clock, Timestamp origin, std::vector<Outage> outages)
      : inner_(inner), clock_(clock), origin_(origin), outages_(std::move(outages)) {}

  bool link_up() const {
    const double t = to_seconds(clock_.now()) - to_seconds(origin_);
    for (const auto& o : outages_)
      if (t >= o.start_s && t < o.end_s) return false;
    return true;
  }

  std::optional<TransportResponse> send_update(const UpdateRequest& r) {
    if (!link_up()) return std::nullopt;
    return inner_.send_update(r);
  }

 private:
  T& inner_;
  const VirtualClock& clock_;
  Timestamp origin_;
  std::vector<Outage> outages_;
};

}  // namespace wristmon::device
