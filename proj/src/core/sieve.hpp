#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/forms.hpp"
#include "core/integer.hpp"

namespace idoneal::sieve {

/// How eliminations by the second residue product are attributed to primes.
enum class P2Tally {
  kAuto,       // exact when P2 <= kExactP2TallyLimit, aggregate otherwise
  kExact,      // walk every non-surviving residue mod P2 (costs O(P2) per outer step)
  kAggregate,  // report one uncredited total
};

inline constexpr std::uint64_t kExactP2TallyLimit = 10'000'000;

struct SieveConfig {
  static constexpr unsigned kWordWidth = 32;

  std::vector<std::uint32_t> p1_primes{3, 5, 7, 11, 13, 17, 19};
  std::vector<std::uint32_t> p2_primes{23, 29, 31, 37, 41, 43, 47};
  // 1-based indices into the prime sequence: the 16th (53) through 169th (1009).
  std::uint32_t sieve_lo_index = 16;
  std::uint32_t sieve_hi_index = 169;
  std::uint64_t limit = 1'000'000;
  // Candidates |d| <= small_cutoff bypass the sieve and go to direct checking.
  std::uint64_t small_cutoff = 10'000'000;
  // Check for an all-ones candidate word after this many ORs.
  std::uint32_t cadence = 8;
  P2Tally p2_tally = P2Tally::kAuto;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  std::vector<std::uint32_t> sieve_primes() const;
  std::uint64_t p1_product() const;
  std::uint64_t p2_product() const;
  /// word width * P1 * P2, exact.
  UInt coverage() const;

  /// Canonical JSON (sorted keys) of every field that affects results.
  std::string canonical_json() const;
  /// SHA-256 hex digest of canonical_json().
  std::string hash() const;
};

/// Ascending residues a mod prod(primes) with -a not a nonzero square modulo
/// any of the primes. Empty input gives {0}.
std::vector<std::uint64_t> survivors_mod(std::span<const std::uint32_t> primes);

/// Unique x in [0, m1*m2) with x = r1 (mod m1) and x = r2 (mod m2).
/// Throws DomainError when gcd(m1, m2) != 1.
UInt crt_combine(UInt r1, UInt m1, UInt r2, UInt m2);

/// Per sieve prime q, q words; bit k of word a is set iff a + k*M is the
/// negative of a nonzero square mod q, where M = P1*P2.
class BitTables {
 public:
  BitTables(std::span<const std::uint32_t> primes, std::uint64_t modulus);

  std::size_t size() const { return primes_.size(); }
  std::uint32_t prime(std::size_t i) const { return primes_[i]; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::span<const std::uint32_t> table(std::size_t i) const {
    return {words_.data() + offsets_[i], primes_[i]};
  }
  std::uint32_t word(std::size_t i, std::uint64_t a) const {
    return words_[offsets_[i] + a % primes_[i]];
  }
  std::uint64_t modulus() const { return modulus_; }

 private:
  std::vector<std::uint32_t> primes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> words_;
  std::uint64_t modulus_;
};

BitTables build_bit_tables(const SieveConfig& config);

/// Whether r is the negative of a nonzero square modulo the odd prime q.
bool is_negated_nonzero_square(std::uint64_t r, std::uint32_t q);

/// Precomputed state shared read-only by all sieve workers.
class SievePlan {
 public:
  explicit SievePlan(SieveConfig config);

  const SieveConfig& config() const { return config_; }
  const BitTables& tables() const { return tables_; }
  std::uint64_t p1() const { return p1_; }
  std::uint64_t p2() const { return p2_; }
  std::uint64_t modulus() const { return p1_ * p2_; }
  std::span<const std::uint64_t> p1_survivors() const { return s1_; }
  std::span<const std::uint64_t> p2_survivors() const { return s2_; }
  bool exact_p2_tally() const { return exact_p2_; }

  /// Smallest eliminating prime for |d|, found through the residue lists and
  /// bit tables (the same path as the sieve loop); 0 if |d| survives.
  std::uint32_t credit_prime(std::uint64_t abs_d) const;

  /// Bits k with a + k*M inside the sieved range and -(a + k*M) = 0, 1 (mod 4).
  std::uint32_t valid_mask(std::uint64_t a) const;

  /// Sieved-range candidates x = r (mod m), m odd.
  std::uint64_t count_in_range(std::uint64_t r, std::uint64_t m) const;

  /// 0 if r survives mod P1, else 1 + index of the smallest eliminating prime.
  std::uint8_t p1_eliminator(std::uint64_t r1) const { return p1_elim_[r1]; }
  std::uint8_t p2_eliminator(std::uint64_t r2) const { return p2_elim_[r2]; }
  /// P1^-1 mod P2.
  std::uint64_t p1_inverse() const { return p1_inv_; }

  /// Sieved range is (lower, upper].
  std::uint64_t lower() const { return lower_; }
  std::uint64_t upper() const { return config_.limit; }

 private:
  SieveConfig config_;
  std::uint64_t p1_, p2_, p1_inv_, lower_;
  std::vector<std::uint64_t> s1_, s2_;
  std::vector<std::uint8_t> p1_elim_, p2_elim_;
  std::array<std::uint32_t, 4> mask4_{};
  BitTables tables_;
  bool exact_p2_;
};

/// Reference verdict: smallest configured prime p with -|d| a nonzero square mod p, or 0.
std::uint32_t credit_prime_naive(const SieveConfig& config, std::uint64_t abs_d);

struct SurvivorRow {
  std::uint64_t abs_d;
  bool passed_sieve;  // false: at or below small_cutoff, never sieved
  friend bool operator==(const SurvivorRow&, const SurvivorRow&) = default;
};

struct SieveOutcome {
  std::vector<SurvivorRow> survivors;  // ascending abs_d
  std::uint64_t eliminated_count = 0;
  std::uint64_t tested_count = 0;
  std::map<std::uint32_t, std::uint64_t> per_prime_tally;
  // Second-stage eliminations not attributed to a prime (aggregate tally mode).
  std::uint64_t p2_uncredited = 0;
  std::uint64_t words_visited = 0;
  std::uint64_t bits_visited = 0;
  std::uint64_t outer_index = 0;
  std::uint64_t outer_total = 0;
  bool complete = false;
  std::string config_hash;
};

struct Progress {
  std::uint64_t outer_done;
  std::uint64_t outer_total;
  std::uint64_t sieve_survivors;
};

struct RunOptions {
  unsigned threads = 1;
  std::optional<std::filesystem::path> checkpoint;
  // Outer-loop indices per checkpoint block; 0 picks about 64 blocks.
  std::uint64_t block_size = 0;
  // Stop (resumably) after this many blocks in this invocation.
  std::optional<std::uint64_t> max_blocks;
  std::function<void(const Progress&)> progress;
};

SieveOutcome run_sieve(const SievePlan& plan, const RunOptions& options = {});
SieveOutcome run_sieve(const SieveConfig& config, const RunOptions& options = {});

struct Witness {
  forms::QuadForm form;
  // Reduced and non-ambiguous; false when k <= p (only possible if p >= sqrt|d|/2).
  bool proper;
};

/// The form (p, b, k) of discriminant d with 0 < b < p and b^2 = d (mod 4p).
/// Throws DomainError if p is not an odd prime or d is not a nonzero square mod p.
Witness witness_form(forms::Discriminant d, std::uint32_t p);

/// Lowercase hex SHA-256 of text.
std::string sha256_hex(const std::string& text);

/// Survivor CSV: header abs_d,mod4_class,passed_sieve, ascending rows.
std::string survivors_csv(std::span<const SurvivorRow> rows);

}  // namespace idoneal::sieve
