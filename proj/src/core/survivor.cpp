#include "core/survivor.hpp"

#include "core/arith.hpp"

namespace idoneal::survivor {

forms::GenusReport full_check(forms::Discriminant d) { return forms::genus_report(d); }

std::vector<std::uint64_t> idoneal_scan(std::uint64_t max_n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    if (forms::one_class_per_genus(forms::Discriminant(-4 * static_cast<Int>(n)))) out.push_back(n);
  }
  return out;
}

std::optional<std::uint32_t> prefilter(forms::Discriminant d, std::uint32_t first_prime, std::uint32_t max_prime) {
  const Int n = d.magnitude();
  static const std::vector<std::uint32_t> primes = arith::primes_up_to(1u << 20);
  for (std::uint32_t p : primes) {
    if (p > max_prime) break;
    if (p <= first_prime || p == 2) continue;
    if (static_cast<Int>(4) * p * p >= n) break;
    if (arith::legendre(d.value(), p) == 1) return p;
  }
  return std::nullopt;
}

SurvivorVerdicts check_survivors(const sieve::SieveOutcome& outcome, bool use_prefilter) {
  SurvivorVerdicts v;
  for (const auto& row : outcome.survivors) {
    const forms::Discriminant d = forms::Discriminant::from_magnitude(row.abs_d);
    ++v.checked;
    if (use_prefilter && row.passed_sieve && prefilter(d)) {
      ++v.prefiltered;
      continue;
    }
    const auto report = full_check(d);
    if (report.one_class_per_genus) {
      v.one_class_per_genus.push_back(row.abs_d);
      if (report.is_fundamental) v.fundamental_one_class_per_genus.push_back(row.abs_d);
    }
  }
  return v;
}

}  // namespace idoneal::survivor
