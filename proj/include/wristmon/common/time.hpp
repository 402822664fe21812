#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "wristmon/common/errors.hpp"

namespace wristmon {

/// Wall-clock instant (UTC) at millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

inline Timestamp from_seconds(double s) {
  return Timestamp{std::chrono::milliseconds{static_cast<std::int64_t>(std::llround(s * 1000.0))}};
}

inline double to_seconds(Timestamp t) {
  return static_cast<double>(t.time_since_epoch().count()) / 1000.0;
}

inline std::chrono::milliseconds seconds_to_duration(double s) {
  return std::chrono::milliseconds{static_cast<std::int64_t>(std::llround(s * 1000.0))};
}

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`, adding `.mmm` only when the
/// millisecond part is non-zero.
inline std::string format_iso8601(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[40];
  const auto ms = hms.subseconds().count();
  if (ms == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long long>(hms.seconds().count()));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lld.%03lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long long>(hms.seconds().count()), static_cast<long long>(ms));
  }
  return buf;
}

/// Parses `YYYY-MM-DDTHH:MM:SS[.fff][Z|+00:00]`. Only UTC is accepted.
inline std::optional<Timestamp> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  const std::string s{text};
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0, consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &sec, &consumed) != 6 ||
      consumed != 19) {
    return std::nullopt;
  }
  std::string_view rest = text.substr(19);
  std::int64_t millis = 0;
  if (!rest.empty() && rest.front() == '.') {
    rest.remove_prefix(1);
    int digits = 0;
    while (!rest.empty() && rest.front() >= '0' && rest.front() <= '9') {
      if (digits < 3) millis = millis * 10 + (rest.front() - '0');
      ++digits;
      rest.remove_prefix(1);
    }
    if (digits == 0) return std::nullopt;
    for (int i = digits; i < 3; ++i) millis *= 10;
  }
  if (!(rest.empty() || rest == "Z" || rest == "+00:00")) return std::nullopt;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  return Timestamp{sys_days{ymd}} + hours{h} + minutes{mi} + seconds{sec} + milliseconds{millis};
}

/// Manually advanced time source. Time never moves backwards.
class VirtualClock {
 public:
  explicit VirtualClock(Timestamp start = Timestamp{}) : now_(start) {}

  Timestamp now() const { return now_; }

  void advance_to(Timestamp t) {
    detail::require(t >= now_, "virtual clock cannot move backwards");
    now_ = t;
  }
  void advance_by(std::chrono::milliseconds d) { advance_to(now_ + d); }

 private:
  Timestamp now_;
};

}  // namespace wristmon
