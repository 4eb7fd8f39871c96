#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/errors.hpp"
#include "core/survivor.hpp"
#include "oracles.hpp"

using namespace idoneal;
using forms::Discriminant;

TEST_CASE("full check examples") {
  auto r = survivor::full_check(Discriminant(-420));
  CHECK(r.class_number == 8);
  CHECK(r.genus_count == 8);
  CHECK(r.one_class_per_genus);
  r = survivor::full_check(Discriminant(-23));
  CHECK(r.class_number == 3);
  CHECK(r.genus_count == 1);
  CHECK_FALSE(r.one_class_per_genus);
  r = survivor::full_check(Discriminant(-4));
  CHECK(r.class_number == 1);
  CHECK(r.one_class_per_genus);
  CHECK_THROWS_AS(survivor::full_check(Discriminant(-(forms::kEnumerationLimit * 2))), TooLargeError);
}

TEST_CASE("idoneal scan") {
  const auto ten = survivor::idoneal_scan(10);
  CHECK(ten == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto all = survivor::idoneal_scan(2000);
  CHECK(all.size() == 65);
  CHECK(all.back() == 1848);
  std::vector<std::uint64_t> want;
  for (std::int64_t n = 1; n <= 2000; ++n) {
    if (oracle::all_ambiguous(4 * n)) want.push_back(static_cast<std::uint64_t>(n));
  }
  CHECK(all == want);
  CHECK(survivor::idoneal_scan(5000) == all);
}

TEST_CASE("prefilter is sound") {
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = oracle::random_magnitude(5'000'000, 50'000'000);
    const Discriminant d(-static_cast<Int>(n));
    const auto p = survivor::prefilter(d);
    if (!p) continue;
    CHECK(*p >= 1009);
    CHECK(4ull * *p * *p < n);
    CHECK(oracle::legendre(-static_cast<std::int64_t>(n), *p) == 1);
  }
  CHECK_FALSE(survivor::prefilter(Discriminant(-5460)).has_value());
}

TEST_CASE("survivor verdicts over a small sieve") {
  sieve::SieveConfig c;
  c.p1_primes = {3, 5, 7};
  c.p2_primes = {11, 13, 17};
  c.sieve_lo_index = 8;
  c.sieve_hi_index = 25;
  c.small_cutoff = 40000;
  c.limit = 200'000;
  const auto out = sieve::run_sieve(c);
  const auto with = survivor::check_survivors(out, true);
  const auto without = survivor::check_survivors(out, false);
  CHECK(with.one_class_per_genus == without.one_class_per_genus);
  CHECK(with.checked == out.survivors.size());
  std::vector<std::uint64_t> want, want_fund;
  for (std::int64_t n = 3; n <= 200000; ++n) {
    if (!oracle::valid_magnitude(n)) continue;
    if (n > 40000) continue;  // nothing larger has one class per genus
    if (oracle::all_ambiguous(n)) {
      want.push_back(n);
      if (oracle::fundamental(-n)) want_fund.push_back(n);
    }
  }
  CHECK(with.one_class_per_genus == want);
  CHECK(with.fundamental_one_class_per_genus == want_fund);
  CHECK(want.back() == 7392);
  CHECK(want_fund.back() == 5460);
}
