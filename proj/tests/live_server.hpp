#pragma once

#include <memory>
#include <string>

#include "clock.hpp"
#include "wristmon/server/http_server.hpp"
#include "wristmon/server/service.hpp"

namespace wristmon::testing {

/// A TelemetryService behind a loopback HTTP server on a free port.
class LiveServer {
 public:
  LiveServer(server::ServiceConfig cfg, ManualClock* clock = nullptr) {
    service_ = clock ? std::make_unique<server::TelemetryService>(cfg, clock->as_function())
                     : std::make_unique<server::TelemetryService>(cfg);
    http_ = std::make_unique<server::TelemetryHttpServer>(*service_);
    http_->bind("127.0.0.1", 0);
    http_->start();
  }
  ~LiveServer() { http_->stop(); }

  server::TelemetryService& service() { return *service_; }
  std::string url() const { return http_->url(); }
  int port() const { return http_->port(); }

 private:
  std::unique_ptr<server::TelemetryService> service_;
  std::unique_ptr<server::TelemetryHttpServer> http_;
};

}  // namespace wristmon::testing
