#pragma once

#include <memory>
#include <string>
#include <thread>

#include "wristmon/server/service.hpp"

namespace httplib {
class Server;
}

namespace wristmon::server {

/// HTTP front end for a TelemetryService:
///   GET|POST /update
///   GET      /channels/<id>/feeds.json
///   GET      /channels/<id>/fields/<k>.json
///   POST     /login
class TelemetryHttpServer {
 public:
  explicit TelemetryHttpServer(TelemetryService& service);
  ~TelemetryHttpServer();

  TelemetryHttpServer(const TelemetryHttpServer&) = delete;
  TelemetryHttpServer& operator=(const TelemetryHttpServer&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);

  /// Serves on a background thread until stop().
  void start();
  /// Serves on the calling thread until stop() is called from elsewhere.
  void run();
  void stop();

  int port() const { return port_; }
  std::string url() const { return "http://" + host_ + ":" + std::to_string(port_); }

 private:
  void install_routes();

  TelemetryService& service_;
  std::unique_ptr<httplib::Server> http_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
};

}  // namespace wristmon::server
