#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wristmon/server/channel.hpp"

namespace wristmon::server {

struct StoredState {
  std::vector<Channel> channels;
  std::map<std::int64_t, std::vector<FeedEntry>> feeds;
  std::vector<std::string> warnings;  // recovery actions taken while loading
};

/// Append-only persistence:
///   <data_dir>/channels.json   array of channel metadata
///   <data_dir>/feed_<id>.jsonl one FeedEntry per line
class FeedStorage {
 public:
  FeedStorage(std::filesystem::path data_dir, bool fsync_on_write);

  const std::filesystem::path& data_dir() const { return dir_; }

  /// Rewrites channels.json atomically (write to temp, rename).
  void save_channels(const std::vector<Channel>& channels) const;

  /// Appends one line to the channel's feed file. Callers serialise writes
  /// per channel.
  void append_entry(std::int64_t channel_id, const FeedEntry& e) const;

  /// Reads everything back. A feed file whose tail does not parse is
  /// truncated at the last good line.
  StoredState load_all() const;

  std::filesystem::path feed_path(std::int64_t channel_id) const;

 private:
  std::filesystem::path dir_;
  bool fsync_;
};

std::string channel_to_json_line(const Channel& c);
std::string entry_to_json_line(const FeedEntry& e);

}  // namespace wristmon::server
