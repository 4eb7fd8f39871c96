#include "core/sieve.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "core/arith.hpp"
#include "core/checkpoint.hpp"
#include "core/errors.hpp"
#include "json.hpp"

namespace idoneal::sieve {

namespace {

// Residue lists and elimination tables above this many entries are refused.
constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 28;

void require_odd_primes(std::span<const std::uint32_t> primes, const char* what) {
  for (std::uint32_t p : primes) {
    if (p < 3 || !arith::is_prime(p)) {
      throw ConfigError(std::string(what) + ": " + std::to_string(p) + " is not an odd prime");
    }
  }
}

std::uint64_t product(std::span<const std::uint32_t> primes) {
  UInt prod = 1;
  for (std::uint32_t p : primes) {
    prod *= p;
    if (prod > UINT64_MAX) throw ConfigError("prime product exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(prod);
}

std::vector<bool> negated_square_table(std::uint32_t q) {
  std::vector<bool> table(q, false);
  for (std::uint64_t x = 1; x < q; ++x) table[(q - x * x % q) % q] = true;
  return table;
}

const char* tally_name(P2Tally t) {
  switch (t) {
    case P2Tally::kAuto: return "auto";
    case P2Tally::kExact: return "exact";
    case P2Tally::kAggregate: return "aggregate";
  }
  return "auto";
}


}  // namespace

bool is_negated_nonzero_square(std::uint64_t r, std::uint32_t q) {
  r %= q;
  return r != 0 && arith::legendre(static_cast<Int>(q - r), q) == 1;
}

void SieveConfig::validate() const {
  if (cadence == 0) throw ConfigError("cadence must be positive");
  if (sieve_lo_index < 2) throw ConfigError("sieve prime range must start at index 2 or later (odd primes)");
  if (sieve_hi_index < sieve_lo_index) throw ConfigError("sieve prime range is empty");
  require_odd_primes(p1_primes, "p1");
  require_odd_primes(p2_primes, "p2");
  const auto sp = sieve_primes();

  std::vector<std::uint32_t> all(p1_primes);
  all.insert(all.end(), p2_primes.begin(), p2_primes.end());
  all.insert(all.end(), sp.begin(), sp.end());
  auto sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("p1, p2 and sieve primes must be distinct and pairwise disjoint");
  }
  // Stage order equals prime order, so the first stage to eliminate credits the smallest prime.
  const auto max_of = [](std::span<const std::uint32_t> v) { return v.empty() ? 0u : *std::max_element(v.begin(), v.end()); };
  const auto min_of = [](std::span<const std::uint32_t> v) { return v.empty() ? UINT32_MAX : *std::min_element(v.begin(), v.end()); };
  if (max_of(p1_primes) > min_of(p2_primes) ||
      std::max(max_of(p1_primes), max_of(p2_primes)) > min_of(sp)) {
    throw ConfigError("every p1 prime must be below every p2 prime, and both below every sieve prime");
  }

  const UInt cover = coverage();
  if (cover > UINT64_MAX) throw ConfigError("word_width * P1 * P2 exceeds 64 bits");
  if (limit < 3) throw ConfigError("limit must be at least 3");
  if (limit > cover) {
    throw ConfigError("limit " + std::to_string(limit) + " exceeds word_width * P1 * P2 = " +
                      to_string(cover) + "; coverage impossible");
  }
  const std::uint64_t qmax = *std::max_element(all.begin(), all.end());
  if (small_cutoff < 4 * qmax * qmax) {
    throw ConfigError("small_cutoff must be at least 4 * (largest prime)^2 = " +
                      std::to_string(4 * qmax * qmax) + " so every elimination is sound");
  }
}

std::vector<std::uint32_t> SieveConfig::sieve_primes() const {
  if (sieve_hi_index < sieve_lo_index || sieve_lo_index == 0) return {};
  auto primes = arith::first_primes(sieve_hi_index);
  return {primes.begin() + (sieve_lo_index - 1), primes.end()};
}

std::uint64_t SieveConfig::p1_product() const { return product(p1_primes); }
std::uint64_t SieveConfig::p2_product() const { return product(p2_primes); }

UInt SieveConfig::coverage() const {
  return static_cast<UInt>(kWordWidth) * p1_product() * p2_product();
}

std::string SieveConfig::canonical_json() const {
  auto sorted = [](std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  nlohmann::json j{
      {"p1_primes", sorted(p1_primes)},
      {"p2_primes", sorted(p2_primes)},
      {"sieve_prime_range", {sieve_lo_index, sieve_hi_index}},
      {"limit", limit},
      {"small_cutoff", small_cutoff},
      {"word_width", kWordWidth},
      {"p2_tally", tally_name(p2_tally)},
  };
  return j.dump();
}

std::string SieveConfig::hash() const { return sha256_hex(canonical_json()); }

UInt crt_combine(UInt r1, UInt m1, UInt r2, UInt m2) {
  if (m1 == 0 || m2 == 0) throw DomainError("crt_combine: zero modulus");
  r1 %= m1;
  r2 %= m2;
  // x = r1 + m1 * ((r2 - r1) * m1^-1 mod m2)
  const UInt inv = m2 == 1 ? 0 : arith::inverse_mod(m1 % m2, m2);
  const UInt diff = (r2 + m2 - r1 % m2) % m2;
  UInt t;
  if (diff == 0 || inv == 0) {
    t = 0;
  } else if (diff <= UINT64_MAX && inv <= UINT64_MAX && m2 <= UINT64_MAX) {
    t = static_cast<UInt>(arith::mulmod(static_cast<std::uint64_t>(diff), static_cast<std::uint64_t>(inv),
                                        static_cast<std::uint64_t>(m2)));
  } else {
    // Double-and-add to stay inside 128 bits.
    t = 0;
    UInt a = diff, b = inv;
    while (b > 0) {
      if (b & 1) t = (t + a) % m2;
      a = (a + a) % m2;
      b >>= 1;
    }
  }
  return r1 + m1 * t;
}

std::vector<std::uint64_t> survivors_mod(std::span<const std::uint32_t> primes) {
  require_odd_primes(primes, "survivors_mod");
  {
    std::vector<std::uint32_t> sorted(primes.begin(), primes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("survivors_mod: primes must be distinct");
    }
  }
  UInt expected = 1;
  for (std::uint32_t p : primes) expected *= (p + 1) / 2;
  if (expected > kMaxTableEntries) {
    throw TooLargeError("survivor list of " + to_string(expected) + " residues is too large to materialize");
  }
  std::vector<std::uint64_t> residues{0};
  std::uint64_t modulus = 1;
  for (std::uint32_t p : primes) {
    const auto negated = negated_square_table(p);
    std::vector<std::uint64_t> next;
    next.reserve(residues.size() * ((p + 1) / 2));
    for (std::uint64_t r : residues) {
      for (std::uint32_t s = 0; s < p; ++s) {
        if (negated[s]) continue;
        next.push_back(static_cast<std::uint64_t>(crt_combine(r, modulus, s, p)));
      }
    }
    residues = std::move(next);
    modulus *= p;
  }
  std::sort(residues.begin(), residues.end());
  return residues;
}

BitTables::BitTables(std::span<const std::uint32_t> primes, std::uint64_t modulus)
    : primes_(primes.begin(), primes.end()), modulus_(modulus) {
  std::size_t total = 0;
  for (std::uint32_t q : primes_) {
    offsets_.push_back(total);
    total += q;
  }
  words_.assign(total, 0);
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const std::uint32_t q = primes_[i];
    const auto negated = negated_square_table(q);
    const std::uint64_t step = modulus % q;
    for (std::uint64_t a = 0; a < q; ++a) {
      std::uint32_t word = 0;
      std::uint64_t r = a;
      for (unsigned k = 0; k < SieveConfig::kWordWidth; ++k) {
        if (negated[r]) word |= std::uint32_t{1} << k;
        r = (r + step) % q;
      }
      words_[offsets_[i] + a] = word;
    }
  }
}

BitTables build_bit_tables(const SieveConfig& config) {
  config.validate();
  return BitTables(config.sieve_primes(), config.p1_product() * config.p2_product());
}

namespace {

std::vector<std::uint8_t> eliminator_table(std::span<const std::uint32_t> primes, std::uint64_t modulus) {
  if (modulus > kMaxTableEntries) throw TooLargeError("residue table mod " + std::to_string(modulus) + " is too large");
  std::vector<std::vector<bool>> negated;
  for (std::uint32_t p : primes) negated.push_back(negated_square_table(p));
  std::vector<std::uint8_t> table(modulus, 0);
  for (std::uint64_t r = 0; r < modulus; ++r) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (negated[i][r % primes[i]]) {
        table[r] = static_cast<std::uint8_t>(i + 1);
        break;
      }
    }
  }
  return table;
}

std::vector<std::uint32_t> ascending(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

SievePlan::SievePlan(SieveConfig config)
    : config_((config.validate(), std::move(config))),
      p1_(config_.p1_product()),
      p2_(config_.p2_product()),
      p1_inv_(p2_ == 1 ? 0 : static_cast<std::uint64_t>(arith::inverse_mod(p1_ % p2_, p2_))),
      lower_(std::min(config_.small_cutoff, config_.limit)),
      tables_(config_.sieve_primes(), p1_ * p2_) {
  config_.p1_primes = ascending(config_.p1_primes);
  config_.p2_primes = ascending(config_.p2_primes);
  s1_ = survivors_mod(config_.p1_primes);
  p1_elim_ = eliminator_table(config_.p1_primes, p1_);
  UInt s2_size = 1;
  for (std::uint32_t p : config_.p2_primes) s2_size *= (p + 1) / 2;
  if (s2_size <= kMaxTableEntries) s2_ = survivors_mod(config_.p2_primes);
  exact_p2_ = config_.p2_tally == P2Tally::kExact ||
              (config_.p2_tally == P2Tally::kAuto && p2_ <= kExactP2TallyLimit);
  if (exact_p2_) p2_elim_ = eliminator_table(config_.p2_primes, p2_);
  const std::uint64_t m4 = (p1_ * p2_) % 4;
  for (std::uint64_t r = 0; r < 4; ++r) {
    std::uint32_t mask = 0;
    for (unsigned k = 0; k < SieveConfig::kWordWidth; ++k) {
      const std::uint64_t v = (r + k * m4) % 4;
      if (v == 0 || v == 3) mask |= std::uint32_t{1} << k;
    }
    mask4_[r] = mask;
  }
}

std::uint32_t SievePlan::valid_mask(std::uint64_t a) const {
  const std::uint64_t hi = config_.limit;
  if (a > hi) return 0;
  const std::uint64_t m = modulus();
  std::uint64_t mask = mask4_[a & 3];
  const std::uint64_t kmax = (hi - a) / m;
  if (kmax < 31) mask &= (std::uint64_t{2} << kmax) - 1;
  if (a <= lower_) {
    const std::uint64_t kmin = (lower_ - a) / m + 1;
    if (kmin >= 32) return 0;
    mask &= ~((std::uint64_t{1} << kmin) - 1);
  }
  return static_cast<std::uint32_t>(mask);
}

std::uint64_t SievePlan::count_in_range(std::uint64_t r, std::uint64_t m) const {
  const Int lo = lower_, hi = config_.limit;
  if (hi <= lo) return 0;
  Int total = 0;
  for (std::uint64_t s : {0u, 3u}) {
    const Int t = static_cast<Int>(crt_combine(r % m, m, s, 4));
    const Int period = static_cast<Int>(4) * m;
    total += div_floor(hi - t, period) - div_floor(lo - t, period);
  }
  return static_cast<std::uint64_t>(total);
}

std::uint32_t SievePlan::credit_prime(std::uint64_t abs_d) const {
  if (static_cast<UInt>(abs_d) >= config_.coverage()) {
    throw DomainError("|d| = " + std::to_string(abs_d) + " lies outside word_width * P1 * P2");
  }
  if (std::uint8_t e = p1_elim_[abs_d % p1_]) return config_.p1_primes[e - 1];
  for (std::uint32_t p : config_.p2_primes) {
    if (is_negated_nonzero_square(abs_d % p, p)) return p;
  }
  const std::uint64_t m = modulus();
  const std::uint64_t a = abs_d % m;
  const unsigned k = static_cast<unsigned>(abs_d / m);
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if ((tables_.word(i, a) >> k) & 1u) return tables_.prime(i);
  }
  return 0;
}

std::uint32_t credit_prime_naive(const SieveConfig& config, std::uint64_t abs_d) {
  std::vector<std::uint32_t> primes(config.p1_primes);
  primes.insert(primes.end(), config.p2_primes.begin(), config.p2_primes.end());
  const auto sp = config.sieve_primes();
  primes.insert(primes.end(), sp.begin(), sp.end());
  std::sort(primes.begin(), primes.end());
  for (std::uint32_t p : primes) {
    // -|d| is a nonzero square mod p
    if (arith::legendre(-static_cast<Int>(abs_d), p) == 1) return p;
  }
  return 0;
}

namespace {

struct WorkerState {
  std::vector<std::uint64_t> survivors;
  std::vector<std::uint64_t> sieve_tally;  // by sieve prime index
  std::vector<std::uint64_t> p2_tally;     // by p2 prime index
  std::uint64_t p2_uncredited = 0;
  std::uint64_t tested = 0;
  std::uint64_t words = 0;
  std::uint64_t bits = 0;
};

void process_outer(const SievePlan& plan, std::span<const std::uint64_t> s2_scaled, std::uint64_t index,
                   WorkerState& st) {
  const SieveConfig& cfg = plan.config();
  const BitTables& tables = plan.tables();
  const std::uint64_t p1 = plan.p1(), p2 = plan.p2(), m = plan.modulus();
  const std::uint64_t r1 = plan.p1_survivors()[index];
  const std::uint64_t total = plan.count_in_range(r1, p1);
  const std::uint64_t c1 = p2 == 1 ? 0 : (p2 - arith::mulmod(r1 % p2, plan.p1_inverse(), p2)) % p2;
  const std::size_t nprimes = tables.size();
  const std::uint32_t cadence = cfg.cadence;

  std::uint64_t bits_here = 0;
  for (std::uint64_t scaled : s2_scaled) {
    std::uint64_t t = scaled + c1;
    if (t >= p2) t -= p2;
    const std::uint64_t a = r1 + p1 * t;
    const std::uint32_t valid = plan.valid_mask(a);
    if (valid == 0) continue;
    ++st.words;
    bits_here += static_cast<unsigned>(std::popcount(valid));
    // Out-of-range and wrong-class bits start as 1 so they never survive.
    std::uint32_t word = ~valid;
    std::size_t i = 0;
    while (i < nprimes) {
      const std::size_t end = std::min<std::size_t>(i + cadence, nprimes);
      for (; i < end; ++i) {
        const std::uint32_t w = tables.word(i, a);
        st.sieve_tally[i] += static_cast<unsigned>(std::popcount(w & ~word));
        word |= w;
      }
      if (word == UINT32_MAX) break;
    }
    for (std::uint32_t alive = ~word; alive != 0; alive &= alive - 1) {
      st.survivors.push_back(a + static_cast<std::uint64_t>(std::countr_zero(alive)) * m);
    }
  }
  st.bits += bits_here;
  st.tested += total;

  if (plan.exact_p2_tally()) {
    std::uint64_t credited = 0;
    for (std::uint64_t r2 = 0; r2 < p2; ++r2) {
      const std::uint8_t e = plan.p2_eliminator(r2);
      if (e == 0) continue;
      std::uint64_t t = arith::mulmod(r2, plan.p1_inverse(), p2) + c1;
      if (t >= p2) t -= p2;
      const auto n = static_cast<unsigned>(std::popcount(plan.valid_mask(r1 + p1 * t)));
      st.p2_tally[e - 1] += n;
      credited += n;
    }
    if (credited != total - bits_here) {
      throw VerificationError("second-stage tally mismatch at outer index " + std::to_string(index));
    }
  } else {
    st.p2_uncredited += total - bits_here;
  }
}

std::uint64_t count_valid_upto(std::uint64_t hi) {
  // x in [3, hi] with x = 0 or 3 (mod 4)
  if (hi < 3) return 0;
  return hi / 4 + (hi + 1) / 4;
}

}  // namespace

SieveOutcome run_sieve(const SieveConfig& config, const RunOptions& options) {
  return run_sieve(SievePlan(config), options);
}

SieveOutcome run_sieve(const SievePlan& plan, const RunOptions& options) {
  const SieveConfig& cfg = plan.config();
  const auto s1 = plan.p1_survivors();
  const auto s2 = plan.p2_survivors();
  if (s2.empty()) throw TooLargeError("p2 survivor list is too large for a desk-scale run");
  const BitTables& tables = plan.tables();

  std::vector<std::uint64_t> s2_scaled(s2.size());
  for (std::size_t j = 0; j < s2.size(); ++j) {
    s2_scaled[j] = plan.p2() == 1 ? 0 : arith::mulmod(s2[j], plan.p1_inverse(), plan.p2());
  }

  SieveOutcome out;
  out.config_hash = cfg.hash();
  out.outer_total = s1.size();

  // Direct range: everything at or below the cutoff is handed on unsieved.
  const std::uint64_t direct_hi = plan.lower();
  std::vector<std::uint64_t> direct;
  for (std::uint64_t x = 3; x <= direct_hi; ++x) {
    if (x % 4 == 0 || x % 4 == 3) direct.push_back(x);
  }

  // First-stage eliminations are credited by counting residue classes.
  std::map<std::uint32_t, std::uint64_t> tally;
  for (std::uint32_t p : cfg.p1_primes) tally[p] = 0;
  if (plan.exact_p2_tally()) {
    for (std::uint32_t p : cfg.p2_primes) tally[p] = 0;
  }
  for (std::uint32_t p : tables.primes()) tally[p] = 0;
  std::uint64_t prologue_tested = direct.size();
  if (plan.upper() > plan.lower()) {
    for (std::uint64_t r = 0; r < plan.p1(); ++r) {
      const std::uint8_t e = plan.p1_eliminator(r);
      if (e == 0) continue;
      const std::uint64_t n = plan.count_in_range(r, plan.p1());
      tally[cfg.p1_primes[e - 1]] += n;
      prologue_tested += n;
    }
  }

  Checkpoint state;
  state.config_hash = out.config_hash;
  state.tested_count = prologue_tested;
  state.per_prime_tally = tally;
  std::vector<std::uint64_t> sieve_survivors;
  std::filesystem::path survivors_path;

  if (options.checkpoint) {
    const auto& cp_path = *options.checkpoint;
    survivors_path = cp_path;
    survivors_path += ".survivors";
    if (std::filesystem::exists(cp_path)) {
      Checkpoint loaded = load_checkpoint(cp_path);
      if (loaded.config_hash != out.config_hash) {
        throw CheckpointMismatch("checkpoint '" + cp_path.string() + "' was written for config " +
                                 loaded.config_hash + ", current config is " + out.config_hash);
      }
      survivors_path = cp_path.parent_path() / loaded.survivors_so_far_file;
      sieve_survivors = read_survivors(survivors_path, loaded.survivors_so_far);
      state = loaded;
    }
    state.survivors_so_far_file = survivors_path.filename().string();
    state.survivors_so_far = sieve_survivors.size();
    reset_survivor_file(survivors_path, sieve_survivors);
    save_checkpoint(cp_path, state);
  }

  const std::uint64_t total = s1.size();
  if (plan.upper() <= plan.lower()) state.outer_index = total;  // nothing to sieve
  const std::uint64_t block = options.block_size ? options.block_size : std::max<std::uint64_t>(1, (total + 63) / 64);
  const unsigned threads = std::max(1u, options.threads);

  std::uint64_t blocks_run = 0;
  while (state.outer_index < total) {
    if (options.max_blocks && blocks_run >= *options.max_blocks) break;
    const std::uint64_t begin = state.outer_index;
    const std::uint64_t end = std::min(total, begin + block);

    std::vector<WorkerState> workers(std::min<std::uint64_t>(threads, end - begin));
    for (auto& w : workers) {
      w.sieve_tally.assign(tables.size(), 0);
      if (plan.exact_p2_tally()) w.p2_tally.assign(cfg.p2_primes.size(), 0);
    }
    std::atomic<std::uint64_t> next{begin};
    auto work = [&](WorkerState& st) {
      for (std::uint64_t i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
        process_outer(plan, s2_scaled, i, st);
      }
    };
    if (workers.size() == 1) {
      work(workers[0]);
    } else {
      std::vector<std::jthread> pool;
      std::vector<std::exception_ptr> errors(workers.size());
      for (std::size_t w = 0; w < workers.size(); ++w) {
        pool.emplace_back([&, w] {
          try {
            work(workers[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      pool.clear();
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }

    std::vector<std::uint64_t> fresh;
    for (auto& w : workers) {
      fresh.insert(fresh.end(), w.survivors.begin(), w.survivors.end());
      for (std::size_t i = 0; i < w.sieve_tally.size(); ++i) state.per_prime_tally[tables.prime(i)] += w.sieve_tally[i];
      for (std::size_t i = 0; i < w.p2_tally.size(); ++i) state.per_prime_tally[cfg.p2_primes[i]] += w.p2_tally[i];
      state.p2_uncredited += w.p2_uncredited;
      state.tested_count += w.tested;
      state.words_visited += w.words;
      state.bits_visited += w.bits;
    }
    std::sort(fresh.begin(), fresh.end());
    sieve_survivors.insert(sieve_survivors.end(), fresh.begin(), fresh.end());
    state.outer_index = end;
    state.survivors_so_far = sieve_survivors.size();
    state.eliminated_count = state.tested_count - direct.size() - sieve_survivors.size();
    if (options.checkpoint) {
      append_survivors(survivors_path, fresh);
      save_checkpoint(*options.checkpoint, state);
    }
    ++blocks_run;
    if (options.progress) options.progress({state.outer_index, total, sieve_survivors.size()});
  }

  std::sort(sieve_survivors.begin(), sieve_survivors.end());
  out.outer_index = state.outer_index;
  out.complete = state.outer_index >= total;
  out.per_prime_tally = state.per_prime_tally;
  out.p2_uncredited = state.p2_uncredited;
  out.words_visited = state.words_visited;
  out.bits_visited = state.bits_visited;
  out.tested_count = state.tested_count;
  out.survivors.reserve(direct.size() + sieve_survivors.size());
  for (std::uint64_t x : direct) out.survivors.push_back({x, false});
  for (std::uint64_t x : sieve_survivors) out.survivors.push_back({x, true});
  out.eliminated_count = out.tested_count - out.survivors.size();

  if (out.complete) {
    if (out.tested_count != count_valid_upto(cfg.limit)) {
      throw VerificationError("tested count " + std::to_string(out.tested_count) +
                              " does not match the candidate count " + std::to_string(count_valid_upto(cfg.limit)));
    }
    std::uint64_t credited = out.p2_uncredited;
    for (const auto& [p, n] : out.per_prime_tally) credited += n;
    if (credited != out.eliminated_count) {
      throw VerificationError("per-prime tallies do not sum to the eliminated count");
    }
  }
  return out;
}

Witness witness_form(forms::Discriminant d, std::uint32_t p) {
  if (p < 3 || !arith::is_prime(p)) throw DomainError("witness_form: " + std::to_string(p) + " is not an odd prime");
  const Int dv = d.value();
  const auto r = static_cast<std::uint64_t>(mod_floor(dv, p));
  if (r == 0 || arith::legendre(static_cast<Int>(r), p) != 1) {
    throw DomainError("witness_form: " + to_string(dv) + " is not a nonzero square mod " + std::to_string(p));
  }
  std::uint64_t x = arith::sqrt_mod_prime(r, p);
  // b must share the parity of d; p - x has the other parity.
  const bool d_odd = (dv & 1) != 0;
  const bool x_odd = (x & 1) != 0;
  const Int b = static_cast<Int>(x_odd == d_odd ? x : p - x);
  const Int four_p = static_cast<Int>(4) * p;
  const Int num = b * b - dv;
  if (num % four_p != 0) throw VerificationError("witness_form: b^2 - d not divisible by 4p");
  const Int k = num / four_p;
  forms::QuadForm f{static_cast<Int>(p), b, k};
  return {f, k > static_cast<Int>(p) && b < static_cast<Int>(p)};
}

std::string survivors_csv(std::span<const SurvivorRow> rows) {
  std::string out = "abs_d,mod4_class,passed_sieve\n";
  for (const auto& row : rows) {
    // d = -|d| is 0 (mod 4) when |d| is, and 1 (mod 4) when |d| = 3 (mod 4).
    const int mod4 = row.abs_d % 4 == 0 ? 0 : 1;
    out += std::to_string(row.abs_d);
    out += mod4 == 0 ? ",0," : ",1,";
    out += row.passed_sieve ? "1\n" : "0\n";
  }
  return out;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

}  // namespace idoneal::sieve
