#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wristmon/device/body.hpp"
#include "wristmon/signal/pipeline.hpp"

namespace wristmon::server {
class TelemetryHttpServer;
}

namespace wristmon::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitRemote = 3 };

struct PipelineArgs {
  std::string input_csv;
  signal::PipelineOptions options{};
  std::optional<double> scale;
};

struct CalibrateArgs {
  std::string device_csv;
  std::string reference_csv;
};

struct SimulateArgs {
  std::string config_path;
  double duration_s = 21600.0;
  std::optional<std::string> outages_path;
  std::optional<std::string> server_url;  // overrides the config's server_url
  std::string start_time = "2018-07-02T10:45:00Z";
  device::SteadyPatient patient{};
  std::uint64_t seed = 1;
};

struct ExportArgs {
  std::int64_t channel_id = 1;
  long long results = 100;
  std::string read_key;
  std::string server_url = "http://127.0.0.1:3000";
};

struct ServeArgs {
  std::string listen = "127.0.0.1:3000";
  std::string data_dir = "data";
  double min_interval_s = 15.0;
  long long session_ttl_s = 3600;
  std::uint64_t seed = 0;
  bool fsync = false;
  std::vector<std::string> channels;  // "name:field1,field2,..."
  std::vector<std::string> users;     // "username:password:id1,id2,..."
};

// Each command writes its machine-readable result to `out` and diagnostics
// to `err`, and returns an ExitCode.
int cmd_pipeline(const PipelineArgs& args, std::ostream& out, std::ostream& err);
int cmd_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err);

/// Serves until SIGINT/SIGTERM. When `on_ready` is given it is called with
/// the live server instead, and the command returns once it does.
int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err,
              const std::function<void(server::TelemetryHttpServer&)>& on_ready = {});

}  // namespace wristmon::cli
