#include "wristmon/server/storage.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "wristmon/common/errors.hpp"

namespace wristmon::server {
namespace {

using nlohmann::json;

json channel_to_json(const Channel& c) {
  return {{"id", c.id},
          {"name", c.name},
          {"field_names", c.field_names},
          {"write_key", c.write_key},
          {"read_key", c.read_key},
          {"created_at", format_iso8601(c.created_at)},
          {"min_update_interval_s", c.min_update_interval_s}};
}

Timestamp parse_time_or_throw(const std::string& s) {
  auto t = parse_iso8601(s);
  if (!t) throw std::runtime_error("bad timestamp '" + s + "'");
  return *t;
}

Channel channel_from_json(const json& j) {
  Channel c;
  c.id = j.at("id").get<std::int64_t>();
  c.name = j.at("name").get<std::string>();
  c.field_names = j.at("field_names").get<std::vector<std::string>>();
  c.write_key = j.at("write_key").get<std::string>();
  c.read_key = j.at("read_key").get<std::string>();
  c.created_at = parse_time_or_throw(j.at("created_at").get<std::string>());
  c.min_update_interval_s = j.at("min_update_interval_s").get<double>();
  return c;
}

FeedEntry entry_from_json(const json& j) {
  FeedEntry e;
  e.entry_id = j.at("entry_id").get<std::int64_t>();
  e.created_at = parse_time_or_throw(j.at("created_at").get<std::string>());
  for (const auto& v : j.at("fields")) {
    if (v.is_null())
      e.field_values.emplace_back();
    else
      e.field_values.emplace_back(v.get<double>());
  }
  return e;
}

}  // namespace

std::string channel_to_json_line(const Channel& c) { return channel_to_json(c).dump(); }

std::string entry_to_json_line(const FeedEntry& e) {
  json fields = json::array();
  for (const auto& v : e.field_values) fields.push_back(v ? json(*v) : json(nullptr));
  return json{{"entry_id", e.entry_id}, {"created_at", format_iso8601(e.created_at)}, {"fields", fields}}.dump();
}

FeedStorage::FeedStorage(std::filesystem::path data_dir, bool fsync_on_write)
    : dir_(std::move(data_dir)), fsync_(fsync_on_write) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create data dir '" + dir_.string() + "': " + ec.message());
}

std::filesystem::path FeedStorage::feed_path(std::int64_t channel_id) const {
  return dir_ / ("feed_" + std::to_string(channel_id) + ".jsonl");
}

void FeedStorage::save_channels(const std::vector<Channel>& channels) const {
  json arr = json::array();
  for (const auto& c : channels) arr.push_back(channel_to_json(c));
  const auto final_path = dir_ / "channels.json";
  const auto tmp_path = dir_ / "channels.json.tmp";
  {
    std::FILE* f = std::fopen(tmp_path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write '" + tmp_path.string() + "'");
    const std::string text = arr.dump(2) + "\n";
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size() && std::fflush(f) == 0 &&
                    (!fsync_ || ::fsync(fileno(f)) == 0);
    std::fclose(f);
    if (!ok) throw std::runtime_error("short write to '" + tmp_path.string() + "'");
  }
  std::filesystem::rename(tmp_path, final_path);
}

void FeedStorage::append_entry(std::int64_t channel_id, const FeedEntry& e) const {
  const auto path = feed_path(channel_id);
  std::FILE* f = std::fopen(path.c_str(), "ab");
  if (!f) throw std::runtime_error("cannot append to '" + path.string() + "'");
  const std::string line = entry_to_json_line(e) + "\n";
  const bool ok = std::fwrite(line.data(), 1, line.size(), f) == line.size() && std::fflush(f) == 0 &&
                  (!fsync_ || ::fsync(fileno(f)) == 0);
  std::fclose(f);
  if (!ok) throw std::runtime_error("short write to '" + path.string() + "'");
}

StoredState FeedStorage::load_all() const {
  StoredState state;
  const auto channels_path = dir_ / "channels.json";
  if (!std::filesystem::exists(channels_path)) return state;

  {
    std::ifstream in(channels_path);
    const json arr = json::parse(in);
    for (const auto& j : arr) state.channels.push_back(channel_from_json(j));
  }

  for (const auto& c : state.channels) {
    auto& entries = state.feeds[c.id];
    const auto path = feed_path(c.id);
    if (!std::filesystem::exists(path)) continue;

    std::ifstream in(path, std::ios::binary);
    std::string line;
    std::uintmax_t good_bytes = 0;
    std::size_t lineno = 0;
    bool corrupt = false;
    while (std::getline(in, line)) {
      ++lineno;
      const bool terminated = !in.eof();
      try {
        if (!terminated) throw std::runtime_error("unterminated line");
        FeedEntry e = entry_from_json(json::parse(line));
        if (e.entry_id != static_cast<std::int64_t>(entries.size()) + 1)
          throw std::runtime_error("entry_id out of sequence");
        e.field_values.resize(c.field_names.size());
        entries.push_back(std::move(e));
        good_bytes += line.size() + 1;
      } catch (const std::exception& ex) {
        state.warnings.push_back(path.filename().string() + ":" + std::to_string(lineno) + ": " + ex.what() +
                                 "; truncating feed at byte " + std::to_string(good_bytes));
        corrupt = true;
        break;
      }
    }
    in.close();
    if (corrupt) std::filesystem::resize_file(path, good_bytes);
  }
  return state;
}

}  // namespace wristmon::server
