#include "wristmon/server/accounts.hpp"

#include <sodium.h>

#include <stdexcept>

#include "wristmon/common/errors.hpp"

namespace wristmon::server {
namespace {

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw std::runtime_error("libsodium initialisation failed");
}

std::array<unsigned char, 32> digest(const std::array<unsigned char, 16>& salt, const std::string& password) {
  std::array<unsigned char, 32> out{};
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, out.size());
  crypto_generichash_update(&st, salt.data(), salt.size());
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(password.data()), password.size());
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

std::string random_token() {
  std::array<unsigned char, 24> raw{};
  randombytes_buf(raw.data(), raw.size());
  std::string hex(raw.size() * 2 + 1, '\0');
  sodium_bin2hex(hex.data(), hex.size(), raw.data(), raw.size());
  hex.pop_back();
  return hex;
}

}  // namespace

AccountStore::AccountStore(std::chrono::seconds session_ttl) : ttl_(session_ttl) {
  ensure_sodium();
  detail::require(ttl_.count() > 0, "session TTL must be positive");
}

void AccountStore::add_user(const std::string& username, const std::string& password,
                            std::vector<std::int64_t> channel_ids) {
  detail::require(!username.empty(), "username must not be empty");
  std::lock_guard lock(mu_);
  detail::require(!users_.contains(username), "duplicate username '" + username + "'");
  UserAccount a;
  a.username = username;
  randombytes_buf(a.salt.data(), a.salt.size());
  a.password_digest = digest(a.salt, password);
  a.channel_ids = std::move(channel_ids);
  users_.emplace(username, std::move(a));
}

std::optional<std::string> AccountStore::authenticate(const std::string& username, const std::string& password,
                                                      Timestamp now) {
  std::lock_guard lock(mu_);
  const auto it = users_.find(username);
  // Unknown users still pay for one digest so timing does not reveal them.
  static const std::array<unsigned char, 16> kDummySalt{};
  const auto& salt = it != users_.end() ? it->second.salt : kDummySalt;
  const auto candidate = digest(salt, password);
  if (it == users_.end()) return std::nullopt;
  if (sodium_memcmp(candidate.data(), it->second.password_digest.data(), candidate.size()) != 0) return std::nullopt;

  std::string token = random_token();
  sessions_[token] = Session{username, it->second.channel_ids, now + ttl_};
  return token;
}

std::optional<Session> AccountStore::session(const std::string& token, Timestamp now) {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(token);
  if (it == sessions_.end()) return std::nullopt;
  if (now >= it->second.expires_at) {
    sessions_.erase(it);
    return std::nullopt;
  }
  return it->second;
}

}  // namespace wristmon::server
