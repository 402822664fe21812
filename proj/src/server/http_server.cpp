#include "wristmon/server/http_server.hpp"

#include <charconv>
#include <cmath>
#include <iostream>

#include "httplib.h"

namespace wristmon::server {
namespace {

constexpr const char* kJson = "application/json";

std::optional<std::int64_t> parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"status", status}, {"error", message}}.dump(), kJson);
}

ReadCredentials credentials_of(const httplib::Request& req) {
  ReadCredentials c;
  if (req.has_param("api_key")) c.api_key = req.get_param_value("api_key");
  const auto auth = req.get_header_value("Authorization");
  constexpr std::string_view kBearer = "Bearer ";
  if (auth.starts_with(kBearer)) c.bearer_token = auth.substr(kBearer.size());
  return c;
}

}  // namespace

TelemetryHttpServer::TelemetryHttpServer(TelemetryService& service)
    : service_(service), http_(std::make_unique<httplib::Server>()) {
  install_routes();
}

TelemetryHttpServer::~TelemetryHttpServer() { stop(); }

void TelemetryHttpServer::install_routes() {
  auto update = [this](const httplib::Request& req, httplib::Response& res) {
    UpdateInput in;
    in.api_key = req.get_param_value("api_key");
    bool malformed = false;
    for (const auto& [key, value] : req.params) {
      if (key.starts_with("field")) {
        const auto index = parse_int(key.substr(5));
        if (!index || *index < 1 || *index > static_cast<std::int64_t>(kMaxFields)) {
          malformed = true;
          continue;
        }
        if (value.empty()) continue;  // an empty field is simply absent
        const auto number = parse_number(value);
        if (!number) {
          malformed = true;
          continue;
        }
        in.fields[static_cast<int>(*index)] = *number;
      } else if (key == "created_at") {
        in.created_at = value;
      }
    }

    in.malformed = malformed;

    UpdateOutcome out;
    try {
      out = service_.handle_update(in);
    } catch (const std::exception& e) {
      std::cerr << "update failed: " << e.what() << "\n";
      out = {500, 0};
    }
    res.status = out.status;
    res.set_content(std::to_string(out.entry_id), "text/plain");
  };
  http_->Get("/update", update);
  http_->Post("/update", update);

  auto feeds = [this](const httplib::Request& req, httplib::Response& res, std::optional<int> field) {
    FeedQuery q;
    const auto id = parse_int(req.matches[1]);
    if (!id) return reply_error(res, 404, "channel not found");
    q.channel_id = *id;
    q.field = field;
    if (req.has_param("results")) {
      const auto n = parse_int(req.get_param_value("results"));
      if (!n) return reply_error(res, 400, "results must be an integer");
      q.results = *n;
    }
    const FeedResult r = service_.get_feeds(q, credentials_of(req));
    switch (r.status) {
      case 200: break;
      case 401: return reply_error(res, 401, "unauthorized");
      case 404: return reply_error(res, 404, "channel not found");
      default: return reply_error(res, r.status, "bad request");
    }
    res.set_content(feeds_to_json(r, field).dump(), kJson);
  };
  http_->Get(R"(/channels/(\d+)/feeds\.json)",
             [feeds](const httplib::Request& req, httplib::Response& res) { feeds(req, res, std::nullopt); });
  http_->Get(R"(/channels/(\d+)/fields/(\d+)\.json)", [feeds](const httplib::Request& req, httplib::Response& res) {
    const auto k = parse_int(req.matches[2]);
    if (!k || *k < 1 || *k > static_cast<std::int64_t>(kMaxFields)) return reply_error(res, 400, "bad field index");
    feeds(req, res, static_cast<int>(*k));
  });

  http_->Post("/login", [this](const httplib::Request& req, httplib::Response& res) {
    const auto token = service_.authenticate(req.get_param_value("username"), req.get_param_value("password"));
    if (!token) return reply_error(res, 401, "authentication failed");
    res.set_content(nlohmann::json{{"token", *token}}.dump(), kJson);
  });
}

int TelemetryHttpServer::bind(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? http_->bind_to_any_port(host) : (http_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void TelemetryHttpServer::start() {
  thread_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
}

void TelemetryHttpServer::run() { http_->listen_after_bind(); }

void TelemetryHttpServer::stop() {
  if (http_) http_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace wristmon::server
