#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wristmon/common/time.hpp"

namespace wristmon::server {

inline constexpr std::size_t kMaxFields = 8;
inline constexpr std::size_t kApiKeyLength = 16;

struct Channel {
  std::int64_t id = 0;
  std::string name;
  std::vector<std::string> field_names;
  std::string write_key;
  std::string read_key;
  Timestamp created_at{};
  double min_update_interval_s = 15.0;

  bool operator==(const Channel&) const = default;
};

/// One stored observation; `field_values` is aligned to the channel's fields.
struct FeedEntry {
  std::int64_t entry_id = 0;
  Timestamp created_at{};
  std::vector<std::optional<double>> field_values;

  bool operator==(const FeedEntry&) const = default;
};

/// Shortest round-trip decimal, always with a fractional part or exponent
/// ("77.0", "36.6").
inline std::string format_field_value(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

/// Seeded source of 16-character uppercase alphanumeric API keys.
class KeyGenerator {
 public:
  explicit KeyGenerator(std::uint64_t seed) : rng_(seed) {}
  std::string next();

 private:
  std::mt19937_64 rng_;
};

}  // namespace wristmon::server
