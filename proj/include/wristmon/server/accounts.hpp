#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wristmon/common/time.hpp"

namespace wristmon::server {

struct UserAccount {
  std::string username;
  std::array<unsigned char, 16> salt{};
  std::array<unsigned char, 32> password_digest{};
  std::vector<std::int64_t> channel_ids;
};

struct Session {
  std::string username;
  std::vector<std::int64_t> channel_ids;
  Timestamp expires_at{};
};

/// Login accounts and bearer sessions. Passwords are kept only as salted
/// BLAKE2b digests. Thread-safe.
class AccountStore {
 public:
  explicit AccountStore(std::chrono::seconds session_ttl = std::chrono::seconds{3600});

  /// Throws InvalidArgument on a duplicate or empty username.
  void add_user(const std::string& username, const std::string& password, std::vector<std::int64_t> channel_ids);

  /// Returns a fresh token, or nullopt for an unknown user or wrong password
  /// (the two cases are indistinguishable to the caller).
  std::optional<std::string> authenticate(const std::string& username, const std::string& password, Timestamp now);

  /// The live session for `token`, if any. Expired sessions are purged.
  std::optional<Session> session(const std::string& token, Timestamp now);

  std::chrono::seconds session_ttl() const { return ttl_; }

 private:
  std::chrono::seconds ttl_;
  std::mutex mu_;
  std::map<std::string, UserAccount> users_;
  std::map<std::string, Session> sessions_;
};

}  // namespace wristmon::server
