#pragma once

#include <atomic>
#include <chrono>

#include "wristmon/common/time.hpp"

namespace wristmon::testing {

/// Thread-safe, manually advanced server clock.
class ManualClock {
 public:
  explicit ManualClock(Timestamp start) : ms_(start.time_since_epoch().count()) {}

  Timestamp now() const { return Timestamp{std::chrono::milliseconds{ms_.load()}}; }
  void advance(std::chrono::milliseconds d) { ms_ += d.count(); }

  auto as_function() {
    return [this] { return now(); };
  }

 private:
  std::atomic<std::int64_t> ms_;
};

}  // namespace wristmon::testing
