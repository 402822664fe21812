#include "wristmon/client/http_client.hpp"

#include "httplib.h"
#include "wristmon/server/channel.hpp"

namespace wristmon::client {
namespace {

std::unique_ptr<httplib::Client> make_client(const std::string& url, const HttpOptions& opts) {
  auto c = std::make_unique<httplib::Client>(url);
  c->set_connection_timeout(opts.connect_timeout);
  c->set_read_timeout(opts.read_timeout);
  c->set_write_timeout(opts.read_timeout);
  return c;
}

}  // namespace

HttpTransport::HttpTransport(const std::string& server_url, HttpOptions opts)
    : http_(make_client(server_url, opts)) {}
HttpTransport::~HttpTransport() = default;
HttpTransport::HttpTransport(HttpTransport&&) noexcept = default;
HttpTransport& HttpTransport::operator=(HttpTransport&&) noexcept = default;

std::optional<device::TransportResponse> HttpTransport::send_update(const device::UpdateRequest& r) {
  httplib::Params params;
  params.emplace("api_key", r.api_key);
  for (const auto& [index, value] : r.fields)
    params.emplace("field" + std::to_string(index), server::format_field_value(value));
  if (r.created_at) params.emplace("created_at", format_iso8601(*r.created_at));

  const auto res = http_->Post("/update", params);
  if (!res) return std::nullopt;
  return device::TransportResponse{res->status, res->body};
}

std::optional<device::TransportResponse> fetch_feeds(const std::string& server_url, std::int64_t channel_id,
                                                     long long results, const std::string& read_key,
                                                     HttpOptions opts) {
  auto http = make_client(server_url, opts);
  const httplib::Params params{{"results", std::to_string(results)}, {"api_key", read_key}};
  const auto res =
      http->Get("/channels/" + std::to_string(channel_id) + "/feeds.json", params, httplib::Headers{});
  if (!res) return std::nullopt;
  return device::TransportResponse{res->status, res->body};
}

}  // namespace wristmon::client
