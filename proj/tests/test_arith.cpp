#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/arith.hpp"
#include "core/errors.hpp"
#include "core/integer.hpp"
#include "oracles.hpp"

using namespace idoneal;

TEST_CASE("integer parsing and printing round-trip beyond 64 bits") {
  const Int big = parse_int("-98000000000000000000");
  CHECK(to_string(big) == "-98000000000000000000");
  CHECK(parse_int("+17") == 17);
  CHECK_THROWS_AS(parse_int("12a"), DomainError);
  CHECK_THROWS_AS(parse_int(""), DomainError);
  CHECK_THROWS_AS(parse_int("-"), DomainError);
}

TEST_CASE("isqrt is the floor square root") {
  for (int i = 0; i < 2000; ++i) {
    const auto n = static_cast<Int>(oracle::uniform(0, UINT64_MAX)) * static_cast<Int>(oracle::uniform(0, 1u << 20));
    const Int r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  CHECK(isqrt_u64(UINT64_MAX) == 4294967295ull);
}

TEST_CASE("floor division and residues") {
  CHECK(mod_floor(-7, 4) == 1);
  CHECK(div_floor(-7, 4) == -2);
  CHECK(div_floor(7, 4) == 1);
  CHECK(gcd(-12, 18) == 6);
}

TEST_CASE("prime tables") {
  const auto p = arith::first_primes(169);
  CHECK(p[15] == 53);
  CHECK(p[168] == 1009);
  CHECK(arith::nth_prime(16) == 53);
  CHECK(arith::primes_up_to(100).size() == 25);
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(arith::is_prime(n) == oracle::is_prime(n));
  CHECK(arith::is_prime(18446744073709551557ull));
  CHECK_FALSE(arith::is_prime(18446744073709551556ull));
}

TEST_CASE("factorization multiplies back and agrees with omega and sigma oracles") {
  const auto spf = oracle::spf_table(200000);
  for (std::uint32_t n = 1; n <= 200000; n += 7) {
    const auto [w, s] = oracle::omega_sigma(n, spf);
    CHECK(arith::omega(n) == w);
    CHECK(arith::sigma(n) == s);
  }
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = oracle::uniform(2, UINT64_MAX);
    std::uint64_t prod = 1;
    for (const auto& pp : arith::factorize(n)) {
      CHECK(arith::is_prime(pp.prime));
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("divisors and squarefreeness") {
  CHECK(arith::divisors(36) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 9, 12, 18, 36});
  CHECK(arith::is_squarefree(1001));
  CHECK_FALSE(arith::is_squarefree(1008));
  for (std::uint64_t n = 1; n < 3000; ++n) CHECK(arith::is_squarefree(n) == oracle::squarefree(n));
}

TEST_CASE("kronecker symbol") {
  CHECK(arith::kronecker(5, 1) == 1);
  CHECK(arith::kronecker(21, 2) == -1);
  CHECK(arith::kronecker(-20, 3) == 1);
  CHECK(arith::kronecker(-1, -1) == -1);
  CHECK(arith::kronecker(1, 0) == 1);
  CHECK(arith::kronecker(2, 0) == 0);
  for (int i = 0; i < 20000; ++i) {
    const auto a = static_cast<std::int64_t>(oracle::uniform(0, 200000)) - 100000;
    const auto n = static_cast<std::int64_t>(oracle::uniform(0, 20000)) - 10000;
    CHECK_MESSAGE(arith::kronecker(a, n) == oracle::kronecker(a, n), a << " " << n);
  }
}

TEST_CASE("kronecker is multiplicative in the top argument") {
  for (int i = 0; i < 5000; ++i) {
    const auto a = static_cast<Int>(oracle::uniform(1, 100000)) - 50000;
    const auto b = static_cast<Int>(oracle::uniform(1, 100000)) - 50000;
    const auto n = static_cast<Int>(oracle::uniform(1, 100000));
    CHECK(arith::kronecker(a * b, n) == arith::kronecker(a, n) * arith::kronecker(b, n));
  }
}

TEST_CASE("square roots and inverses modulo primes") {
  for (std::uint64_t p : {3ull, 5ull, 13ull, 17ull, 1009ull, 1000003ull}) {
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(p, 500); ++a) {
      if (arith::legendre(static_cast<Int>(a), p) != 1) continue;
      const std::uint64_t r = arith::sqrt_mod_prime(a, p);
      CHECK(arith::mulmod(r, r, p) == a % p);
    }
  }
  CHECK(static_cast<std::uint64_t>(arith::inverse_mod(3, 7)) == 5);
  CHECK_THROWS_AS(arith::inverse_mod(6, 9), DomainError);
}
