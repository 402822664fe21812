#include "wristmon/server/channel.hpp"

namespace wristmon::server {

std::string KeyGenerator::next() {
  static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::uniform_int_distribution<std::size_t> pick(0, sizeof kAlphabet - 2);
  std::string key(kApiKeyLength, ' ');
  for (char& c : key) c = kAlphabet[pick(rng_)];
  return key;
}

}  // namespace wristmon::server
