#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wristmon/common/errors.hpp"
#include "wristmon/device/types.hpp"
#include "wristmon/device/uplink.hpp"

namespace wristmon::device {

/// Device config as JSON; keys are the DeviceConfig field names. Unknown
/// keys are rejected, missing keys keep their defaults.
inline DeviceConfig config_from_json(const nlohmann::json& j) {
  detail::require(j.is_object(), "device config must be a JSON object");
  static const std::set<std::string> known{"cycle_interval_s", "ppg_window_s",     "sample_rate_hz", "buffer_capacity",
                                           "scaling",          "channel_write_key", "server_url"};
  for (const auto& [key, _] : j.items())
    detail::require(known.contains(key), "unknown device config key '" + key + "'");

  DeviceConfig cfg;
  try {
    cfg.cycle_interval_s = j.value("cycle_interval_s", cfg.cycle_interval_s);
    cfg.ppg_window_s = j.value("ppg_window_s", cfg.ppg_window_s);
    cfg.sample_rate_hz = j.value("sample_rate_hz", cfg.sample_rate_hz);
    if (j.contains("buffer_capacity")) {
      const auto& cap = j.at("buffer_capacity");
      detail::require(cap.is_number_integer() && cap.get<long long>() >= 1, "buffer_capacity must be a positive integer");
      cfg.buffer_capacity = cap.get<std::size_t>();
    }
    if (j.contains("scaling")) {
      const auto& s = j.at("scaling");
      detail::require(s.is_object(), "scaling must be an object");
      cfg.scaling.device_mean = s.value("device_mean", 1.0);
      cfg.scaling.reference_mean = s.value("reference_mean", 1.0);
      cfg.scaling.scaling_factor = s.value("scaling_factor", cfg.scaling.device_mean / cfg.scaling.reference_mean);
    }
    cfg.channel_write_key = j.value("channel_write_key", cfg.channel_write_key);
    cfg.server_url = j.value("server_url", cfg.server_url);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("device config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline nlohmann::json config_to_json(const DeviceConfig& cfg) {
  return {{"cycle_interval_s", cfg.cycle_interval_s},
          {"ppg_window_s", cfg.ppg_window_s},
          {"sample_rate_hz", cfg.sample_rate_hz},
          {"buffer_capacity", cfg.buffer_capacity},
          {"scaling",
           {{"device_mean", cfg.scaling.device_mean},
            {"reference_mean", cfg.scaling.reference_mean},
            {"scaling_factor", cfg.scaling.scaling_factor}}},
          {"channel_write_key", cfg.channel_write_key},
          {"server_url", cfg.server_url}};
}

/// `[[start_s, end_s], ...]` in virtual seconds from the simulation start.
inline std::vector<Outage> outages_from_json(const nlohmann::json& j) {
  detail::require(j.is_array(), "outage schedule must be a JSON array");
  std::vector<Outage> out;
  for (const auto& item : j) {
    detail::require(item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number(),
                    "each outage must be a [start_s, end_s] pair");
    const Outage o{item[0].get<double>(), item[1].get<double>()};
    detail::require(o.start_s >= 0.0 && o.start_s < o.end_s, "outage must satisfy 0 <= start_s < end_s");
    out.push_back(o);
  }
  return out;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  detail::require(in.good(), "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
}

}  // namespace wristmon::device
