#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/integer.hpp"

namespace idoneal::arith {

/// All primes <= n, ascending (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

/// The first `count` primes; element i is the (i+1)-th prime.
std::vector<std::uint32_t> first_primes(std::size_t count);

/// The n-th prime, 1-based (p_1 = 2).
std::uint32_t nth_prime(std::size_t n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of n >= 1, ascending primes (trial division + Pollard rho).
std::vector<PrimePower> factorize(std::uint64_t n);

/// Number of distinct prime factors.
unsigned omega(std::uint64_t n);

/// Sum of divisors.
UInt sigma(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Kronecker symbol (top / bottom), including the (a/2) and (a/-1) extensions.
int kronecker(Int top, Int bottom);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(Int a, std::uint64_t p);

/// Some x with x^2 = a (mod p), p an odd prime and a a quadratic residue.
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

/// Modular inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
UInt inverse_mod(UInt a, UInt m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace idoneal::arith
