#include "core/integer.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace idoneal {

std::string to_string(UInt value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(Int value) {
  if (value < 0) return "-" + to_string(static_cast<UInt>(-(value + 1)) + 1);
  return to_string(static_cast<UInt>(value));
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw DomainError("empty integer literal");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw DomainError("malformed integer literal '" + std::string(text) + "'");
  constexpr UInt kMax = static_cast<UInt>(~UInt{0}) >> 1;
  UInt value = 0;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch < '0' || ch > '9') throw DomainError("malformed integer literal '" + std::string(text) + "'");
    value = value * 10 + static_cast<UInt>(ch - '0');
    if (value > kMax) throw DomainError("integer literal out of range '" + std::string(text) + "'");
  }
  return negative ? -static_cast<Int>(value) : static_cast<Int>(value);
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<UInt>(r) * r > n) --r;
  while (static_cast<UInt>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

Int isqrt(Int n) {
  if (n < 0) throw DomainError("isqrt of negative value");
  // Initial guess from long double, corrected to exact floor.
  auto r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace idoneal
