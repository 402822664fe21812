// wristmon: telemetry server, device simulator and offline signal tools.

#include <iostream>

#include "CLI11.hpp"
#include "wristmon/cli/commands.hpp"

namespace {

void add_filter_flags(CLI::App& cmd, wristmon::cli::PipelineArgs& a) {
  cmd.add_option("--hp-cutoff", a.options.filter.hp_cutoff_hz, "High-pass corner (Hz)")->capture_default_str();
  cmd.add_option("--lp-cutoff", a.options.filter.lp_cutoff_hz, "Low-pass corner (Hz)")->capture_default_str();
  cmd.add_option("--stages", a.options.filter.stages_per_side, "First-order sections per side")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--refractory-ms", a.options.peaks.refractory_ms, "Minimum beat spacing (ms)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--warmup-s", a.options.warmup_s, "Leading span ignored by peak detection (s)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wristmon::cli;

  CLI::App app{"Wearable vitals monitor: telemetry server, device simulator and signal tools"};
  app.require_subcommand(1);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the channel/feed HTTP service");
  serve_cmd->add_option("--listen", serve.listen, "host:port (port 0 picks a free one)")
      ->envname("WRISTMON_LISTEN")
      ->capture_default_str();
  serve_cmd->add_option("--data-dir", serve.data_dir, "Storage directory")
      ->envname("WRISTMON_DATA_DIR")
      ->capture_default_str();
  serve_cmd->add_option("--min-interval", serve.min_interval_s, "Minimum seconds between entries on new channels")
      ->envname("WRISTMON_MIN_INTERVAL")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  serve_cmd->add_option("--session-ttl", serve.session_ttl_s, "Login session lifetime (s)")
      ->envname("WRISTMON_SESSION_TTL")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--seed", serve.seed, "API key generator seed")->envname("WRISTMON_SEED")->capture_default_str();
  serve_cmd->add_flag("--fsync", serve.fsync, "fsync after every feed append");
  serve_cmd->add_option("--channel", serve.channels, "Create channel if absent: name:field1,field2,...");
  serve_cmd->add_option("--user", serve.users, "Login account: username:password:channel_id,...");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Fetch a channel feed as CSV");
  export_cmd->add_option("--channel", exp.channel_id, "Channel id")->required();
  export_cmd->add_option("--results", exp.results, "Number of most recent entries")->capture_default_str();
  export_cmd->add_option("--read-key", exp.read_key, "Channel read API key")->required();
  export_cmd->add_option("--server-url", exp.server_url, "Service base URL")->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the wristband firmware against a live server");
  sim_cmd->add_option("--config", sim.config_path, "Device config JSON")->required();
  sim_cmd->add_option("--duration", sim.duration_s, "Virtual seconds to simulate")->capture_default_str();
  sim_cmd->add_option("--outages", sim.outages_path, "Outage schedule JSON ([[start_s,end_s],...])");
  sim_cmd->add_option("--server-url", sim.server_url, "Overrides server_url from the config");
  sim_cmd->add_option("--start", sim.start_time, "Virtual start time (ISO-8601 UTC)")->capture_default_str();
  sim_cmd->add_option("--temperature", sim.patient.temperature_c, "Patient body temperature (C)")
      ->capture_default_str();
  sim_cmd->add_option("--bpm", sim.patient.bpm, "Patient pulse rate")->capture_default_str();
  sim_cmd->add_option("--dc-offset", sim.patient.dc_offset_v, "Sensor DC offset (V)")->capture_default_str();
  sim_cmd->add_option("--noise", sim.patient.noise_rms_v, "Sensor noise RMS (V)")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Sensor noise seed")->capture_default_str();

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Estimate BPM from a t_s,volts capture");
  pipe_cmd->add_option("--input", pipe.input_csv, "Capture CSV")->required();
  add_filter_flags(*pipe_cmd, pipe);
  pipe_cmd->add_option("--scale", pipe.scale, "Scaling factor applied to the estimate")->check(CLI::PositiveNumber);

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Derive a scaling factor from paired readings");
  cal_cmd->add_option("--device", cal.device_csv, "Device readings, one per line")->required();
  cal_cmd->add_option("--reference", cal.reference_csv, "Reference readings, one per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*serve_cmd) return cmd_serve(serve, std::cout, std::cerr);
  if (*export_cmd) return cmd_export(exp, std::cout, std::cerr);
  if (*sim_cmd) return cmd_simulate(sim, std::cout, std::cerr);
  if (*pipe_cmd) return cmd_pipeline(pipe, std::cout, std::cerr);
  if (*cal_cmd) return cmd_calibrate(cal, std::cout, std::cerr);
  return kExitInput;
}
