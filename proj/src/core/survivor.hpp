#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/forms.hpp"
#include "core/sieve.hpp"

namespace idoneal::survivor {

/// Authoritative verdict for one discriminant by exact enumeration.
forms::GenusReport full_check(forms::Discriminant d);

/// All n <= max_n for which every reduced form of discriminant -4n is ambiguous.
std::vector<std::uint64_t> idoneal_scan(std::uint64_t max_n);

/// Advisory pre-filter: the first prime p past `first_prime` (and with
/// 4p^2 < |d|) for which d is a nonzero square mod p, up to max_prime.
/// Such a p yields a reduced non-ambiguous form, so d cannot have one class
/// per genus. Returns nullopt when no probe fires.
std::optional<std::uint32_t> prefilter(forms::Discriminant d, std::uint32_t first_prime = 1009,
                                       std::uint32_t max_prime = 20000);

struct SurvivorVerdicts {
  // |d| of every survivor with one class per genus, ascending.
  std::vector<std::uint64_t> one_class_per_genus;
  std::vector<std::uint64_t> fundamental_one_class_per_genus;
  std::uint64_t checked = 0;
  std::uint64_t prefiltered = 0;  // rejected by prefilter before enumeration
};

/// Runs full_check (behind the optional prefilter) on every sieve survivor.
SurvivorVerdicts check_survivors(const sieve::SieveOutcome& outcome, bool use_prefilter = true);

}  // namespace idoneal::survivor
