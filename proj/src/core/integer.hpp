#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace idoneal {

// Exact integers for discriminants and form coefficients. |d| near 9.8e18
// already exceeds int64, and b^2 and 4ac need headroom beyond that.
using Int = __int128;
using UInt = unsigned __int128;

std::string to_string(Int value);
std::string to_string(UInt value);

/// Parses an optionally signed decimal integer. Throws DomainError.
Int parse_int(std::string_view text);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(Int n);
std::uint64_t isqrt_u64(std::uint64_t n);

Int gcd(Int a, Int b);

/// Least non-negative residue of a modulo m (m > 0).
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// floor(a / m) for m > 0.
inline Int div_floor(Int a, Int m) {
  Int q = a / m;
  return (a % m != 0 && a < 0) ? q - 1 : q;
}

inline Int abs(Int a) { return a < 0 ? -a : a; }

}  // namespace idoneal
