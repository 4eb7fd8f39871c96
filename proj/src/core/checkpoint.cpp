#include "core/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "json.hpp"

namespace idoneal::sieve {

using nlohmann::json;

std::string checkpoint_json(const Checkpoint& cp) {
  json tally = json::object();
  for (const auto& [p, n] : cp.per_prime_tally) tally[std::to_string(p)] = n;
  json j{
      {"config_hash", cp.config_hash},
      {"outer_index", cp.outer_index},
      {"eliminated_count", cp.eliminated_count},
      {"tested_count", cp.tested_count},
      {"survivors_so_far_file", cp.survivors_so_far_file},
      {"survivors_so_far", cp.survivors_so_far},
      {"per_prime_tally", tally},
      {"p2_uncredited", cp.p2_uncredited},
      {"words_visited", cp.words_visited},
      {"bits_visited", cp.bits_visited},
  };
  return j.dump(2) + "\n";
}

Checkpoint parse_checkpoint(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    Checkpoint cp;
    cp.config_hash = j.at("config_hash").get<std::string>();
    cp.outer_index = j.at("outer_index").get<std::uint64_t>();
    cp.eliminated_count = j.at("eliminated_count").get<std::uint64_t>();
    cp.tested_count = j.at("tested_count").get<std::uint64_t>();
    cp.survivors_so_far_file = j.at("survivors_so_far_file").get<std::string>();
    cp.survivors_so_far = j.value("survivors_so_far", std::uint64_t{0});
    if (j.contains("per_prime_tally")) {
      for (const auto& [key, value] : j.at("per_prime_tally").items()) {
        cp.per_prime_tally[static_cast<std::uint32_t>(std::stoul(key))] = value.get<std::uint64_t>();
      }
    }
    cp.p2_uncredited = j.value("p2_uncredited", std::uint64_t{0});
    cp.words_visited = j.value("words_visited", std::uint64_t{0});
    cp.bits_visited = j.value("bits_visited", std::uint64_t{0});
    return cp;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed checkpoint: ") + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  auto tmp = path;
  tmp += ".tmp";
  write_text_file(tmp, checkpoint_json(cp));
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place at '" + path.string() + "': " + ec.message());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(read_text_file(path));
}

void reset_survivor_file(const std::filesystem::path& path, std::span<const std::uint64_t> values) {
  std::string text = "abs_d\n";
  for (auto v : values) text += std::to_string(v) + "\n";
  write_text_file(path, text);
}

void append_survivors(const std::filesystem::path& path, std::span<const std::uint64_t> values) {
  if (values.empty()) return;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open '" + path.string() + "' for appending");
  for (auto v : values) out << v << '\n';
  out.flush();
  if (!out) throw IoError("append failed for '" + path.string() + "'");
}

std::vector<std::uint64_t> read_survivors(const std::filesystem::path& path, std::uint64_t count) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string line;
  std::getline(in, line);
  if (line != "abs_d") throw IoError("'" + path.string() + "' is not a survivor file");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  while (out.size() < count && std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(std::stoull(line));
  }
  if (out.size() < count) {
    throw IoError("'" + path.string() + "' holds " + std::to_string(out.size()) +
                  " survivors, checkpoint expects " + std::to_string(count));
  }
  return out;
}

}  // namespace idoneal::sieve
