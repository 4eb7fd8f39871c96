#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace idoneal::sieve {

/// Sieve progress at an outer-loop boundary.
struct Checkpoint {
  std::string config_hash;
  std::uint64_t outer_index = 0;
  std::uint64_t eliminated_count = 0;
  std::uint64_t tested_count = 0;
  std::string survivors_so_far_file;
  std::uint64_t survivors_so_far = 0;
  std::map<std::uint32_t, std::uint64_t> per_prime_tally;
  std::uint64_t p2_uncredited = 0;
  std::uint64_t words_visited = 0;
  std::uint64_t bits_visited = 0;
};

std::string checkpoint_json(const Checkpoint& cp);
Checkpoint parse_checkpoint(const std::string& json_text);

/// Atomic replace (write to a sibling temporary, then rename).
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Survivors-so-far file: header "abs_d" then one value per line.
void reset_survivor_file(const std::filesystem::path& path, std::span<const std::uint64_t> values);
void append_survivors(const std::filesystem::path& path, std::span<const std::uint64_t> values);
/// The first `count` recorded values; throws IoError if fewer exist.
std::vector<std::uint64_t> read_survivors(const std::filesystem::path& path, std::uint64_t count);

/// Writes text to path, throwing IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace idoneal::sieve
