#pragma once

#include <stdexcept>
#include <string>

namespace wristmon {

/// Raised when a caller violates an operation's documented preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a waveform holds too few beats to define a pulse rate.
class NoPulseError : public std::runtime_error {
 public:
  NoPulseError() : std::runtime_error("no pulse: fewer than two peaks detected") {}
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace wristmon
