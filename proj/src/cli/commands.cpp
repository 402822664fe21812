#include "wristmon/cli/commands.hpp"

#include <csignal>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wristmon/client/http_client.hpp"
#include "wristmon/device/config_io.hpp"
#include "wristmon/device/firmware.hpp"
#include "wristmon/server/http_server.hpp"
#include "wristmon/server/service.hpp"

namespace wristmon::cli {
namespace {

using nlohmann::json;

std::vector<double> read_readings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    double v = 0.0;
    if (!signal::internal::parse_double(line, v))
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": not a number: '" + line + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InvalidArgument("'" + path + "' contains no readings");
  return values;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::pair<std::string, int> parse_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw InvalidArgument("listen address must be host:port");
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw InvalidArgument("bad port in '" + listen + "'");
  }
  if (port < 0 || port > 65535) throw InvalidArgument("port out of range in '" + listen + "'");
  return {listen.substr(0, colon), port};
}

json channel_json(const server::Channel& c) {
  return {{"id", c.id},
          {"name", c.name},
          {"field_names", c.field_names},
          {"write_key", c.write_key},
          {"read_key", c.read_key}};
}

}  // namespace

int cmd_pipeline(const PipelineArgs& args, std::ostream& out, std::ostream& err) {
  signal::PpgWaveform w;
  try {
    std::ifstream in(args.input_csv);
    if (!in) throw InvalidArgument("cannot open '" + args.input_csv + "'");
    w = signal::read_csv(in);
  } catch (const signal::CsvError& e) {
    err << args.input_csv << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    const signal::PulseMeasurement m = signal::measure_pulse(w, args.options);
    json report;
    report["peaks"] = m.peaks.size();
    report["bpm"] = m.bpm ? json(*m.bpm) : json(nullptr);
    if (args.scale) {
      const signal::CalibrationRecord s{*args.scale, 1.0, *args.scale};
      report["scaled_bpm"] = m.bpm ? json(signal::apply_scale(*m.bpm, s)) : json(nullptr);
    }
    out << report.dump() << "\n";
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

int cmd_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto device = read_readings(args.device_csv);
    const auto reference = read_readings(args.reference_csv);
    const auto rec = signal::calibrate_scale(device, reference);
    out << json{{"device_mean", rec.device_mean},
                {"reference_mean", rec.reference_mean},
                {"scaling_factor", rec.scaling_factor}}
               .dump()
        << "\n";
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  device::DeviceConfig cfg;
  std::vector<device::Outage> outages;
  Timestamp start{};
  try {
    cfg = device::config_from_json(device::load_json_file(args.config_path));
    if (args.server_url) cfg.server_url = *args.server_url;
    if (args.outages_path) outages = device::outages_from_json(device::load_json_file(*args.outages_path));
    detail::require(args.duration_s > 0.0, "duration must be positive");
    const auto parsed = parse_iso8601(args.start_time);
    detail::require(parsed.has_value(), "bad start time '" + args.start_time + "'");
    start = *parsed;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  VirtualClock clock(start);
  client::HttpTransport http(cfg.server_url);
  device::ScheduledLink link(http, clock, start, outages);
  device::DeviceHardware hw;
  hw.thermometer = sensors::Ds18b20Model(sensors::Ds18b20Config{.noise_seed = args.seed});
  device::SteadyPatient patient = args.patient;
  patient.seed = args.seed;
  device::DeviceState state;

  device::SimulationSummary summary;
  try {
    summary = device::run_simulation(
        state, cfg, hw, clock, patient, link, args.duration_s,
        [&err](const device::CycleReport& report, const device::DeviceState& s) {
          err << "cycle " << format_iso8601(report.reading.taken_at) << " temp=" << report.reading.temperature_c
              << " bpm=" << (report.reading.pulse_bpm ? std::to_string(*report.reading.pulse_bpm) : "none")
              << " -> " << to_string(report.modes.at(2))
              << " buffered=" << s.buffer.size() << "\n";
        });
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  out << json{{"produced", summary.produced},
              {"acked", summary.acked},
              {"buffered", summary.buffered},
              {"dropped", summary.dropped},
              {"rejected", summary.rejected}}
             .dump()
      << "\n";
  if (summary.rejected > 0) err << "warning: " << summary.rejected << " readings rejected by the server\n";
  return kExitOk;
}

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  if (args.results < 1) {
    err << "results must be at least 1\n";
    return kExitInput;
  }
  const auto resp = client::fetch_feeds(args.server_url, args.channel_id, args.results, args.read_key);
  if (!resp) {
    err << "cannot reach " << args.server_url << "\n";
    return kExitRemote;
  }
  if (resp->status != 200) {
    err << "server answered " << resp->status << ": " << resp->body << "\n";
    return kExitRemote;
  }
  json doc;
  try {
    doc = json::parse(resp->body);
  } catch (const json::parse_error& e) {
    err << "malformed feed response: " << e.what() << "\n";
    return kExitRemote;
  }

  auto cell = [](const json& row, const char* key) -> std::string {
    if (!row.contains(key) || row.at(key).is_null()) return "";
    return row.at(key).is_string() ? row.at(key).get<std::string>() : row.at(key).dump();
  };
  std::ostringstream csv;
  csv << "created_at,temperature_c,pulse_bpm\n";
  for (const auto& row : doc.at("feeds"))
    csv << cell(row, "created_at") << "," << cell(row, "field1") << "," << cell(row, "field2") << "\n";
  out << csv.str();
  return kExitOk;
}

int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err,
              const std::function<void(server::TelemetryHttpServer&)>& on_ready) {
  server::ServiceConfig cfg;
  std::string host;
  int port = 0;
  struct UserSpec {
    std::string name, password;
    std::vector<std::int64_t> channels;
  };
  std::vector<std::pair<std::string, std::vector<std::string>>> channel_specs;
  std::vector<UserSpec> user_specs;
  try {
    std::tie(host, port) = parse_listen(args.listen);
    detail::require(args.session_ttl_s > 0, "session TTL must be positive");
    cfg.data_dir = args.data_dir;
    cfg.min_update_interval_s = args.min_interval_s;
    cfg.session_ttl = std::chrono::seconds{args.session_ttl_s};
    cfg.seed = args.seed;
    cfg.fsync_on_write = args.fsync;
    for (const auto& spec : args.channels) {
      const auto colon = spec.find(':');
      detail::require(colon != std::string::npos && colon > 0, "channel spec must be name:field1,field2,...");
      channel_specs.emplace_back(spec.substr(0, colon), split(spec.substr(colon + 1), ','));
    }
    for (const auto& spec : args.users) {
      const auto parts = split(spec, ':');
      detail::require(parts.size() == 3 && !parts[0].empty(), "user spec must be username:password:id1,id2,...");
      UserSpec u{parts[0], parts[1], {}};
      for (const auto& id : split(parts[2], ',')) {
        if (id.empty()) continue;
        try {
          u.channels.push_back(std::stoll(id));
        } catch (const std::exception&) {
          throw InvalidArgument("bad channel id '" + id + "' in user spec");
        }
      }
      user_specs.push_back(std::move(u));
    }
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    server::TelemetryService service(cfg);
    for (const auto& w : service.load_warnings()) err << "warning: " << w << "\n";
    for (const auto& [name, fields] : channel_specs) {
      const auto existing = service.find_channel_by_name(name);
      const auto ch = existing ? *existing : service.create_channel(name, fields);
      out << json{{"channel", channel_json(ch)}}.dump() << "\n";
    }
    for (const auto& u : user_specs) service.accounts().add_user(u.name, u.password, u.channels);

    server::TelemetryHttpServer http(service);
    http.bind(host, port);
    out << json{{"listening", http.url()}}.dump() << std::endl;

    if (on_ready) {
      http.start();
      on_ready(http);
      http.stop();
      return kExitOk;
    }

    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
    http.start();
    int received = 0;
    sigwait(&stop_signals, &received);
    err << "shutting down\n";
    http.stop();
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitRemote;
  }
}

}  // namespace wristmon::cli
