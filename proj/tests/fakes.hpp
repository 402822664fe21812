#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "wristmon/device/uplink.hpp"
#include "wristmon/server/service.hpp"

namespace wristmon::testing {

/// Records every request and answers from a script (default: ack with the
/// next id).
class ScriptedTransport {
 public:
  std::vector<device::UpdateRequest> sent;
  std::deque<std::optional<device::TransportResponse>> script;

  std::optional<device::TransportResponse> send_update(const device::UpdateRequest& r) {
    sent.push_back(r);
    if (!script.empty()) {
      auto next = script.front();
      script.pop_front();
      return next;
    }
    return device::TransportResponse{200, std::to_string(++next_id_)};
  }

 private:
  std::int64_t next_id_ = 0;
};

/// Delivers updates straight into an in-process TelemetryService.
class ServiceTransport {
 public:
  explicit ServiceTransport(server::TelemetryService& svc) : svc_(svc) {}

  std::optional<device::TransportResponse> send_update(const device::UpdateRequest& r) {
    server::UpdateInput in;
    in.api_key = r.api_key;
    for (const auto& [k, v] : r.fields) in.fields[k] = v;
    if (r.created_at) in.created_at = format_iso8601(*r.created_at);
    const auto out = svc_.handle_update(in);
    return device::TransportResponse{out.status, std::to_string(out.entry_id)};
  }

 private:
  server::TelemetryService& svc_;
};

}  // namespace wristmon::testing
