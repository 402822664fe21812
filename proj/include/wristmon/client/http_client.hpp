#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "wristmon/device/uplink.hpp"

namespace httplib {
class Client;
}

namespace wristmon::client {

struct HttpOptions {
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds read_timeout{5000};
};

/// Device-side transport: one form-encoded POST /update per reading.
class HttpTransport {
 public:
  explicit HttpTransport(const std::string& server_url, HttpOptions opts = {});
  ~HttpTransport();
  HttpTransport(HttpTransport&&) noexcept;
  HttpTransport& operator=(HttpTransport&&) noexcept;

  std::optional<device::TransportResponse> send_update(const device::UpdateRequest& r);

 private:
  std::unique_ptr<httplib::Client> http_;
};

static_assert(device::UpdateTransport<HttpTransport>);

/// Raw GET of `/channels/<id>/feeds.json`; nullopt when unreachable.
std::optional<device::TransportResponse> fetch_feeds(const std::string& server_url, std::int64_t channel_id,
                                                     long long results, const std::string& read_key,
                                                     HttpOptions opts = {});

}  // namespace wristmon::client
