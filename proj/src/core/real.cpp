#include "core/real.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cstdlib>

#include "core/errors.hpp"

namespace idoneal {

Real to_real(Int value) { return Real(to_string(value)); }

Real to_real(const BigInt& value) {
  Real r;
  mpfr_set_z(r.backend().data(), value.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const Rational& value) {
  return to_real(BigInt(boost::multiprecision::numerator(value))) /
         to_real(BigInt(boost::multiprecision::denominator(value)));
}

BigInt to_bigint(Int value) { return BigInt(to_string(value)); }

Real real_pi() { return boost::math::constants::pi<Real>(); }
Real euler_gamma() { return boost::math::constants::euler<Real>(); }

std::string format_real(const Real& value, int digits) {
  return value.str(digits, std::ios_base::fmtflags(0));
}

double to_display_double(const Real& value, int digits) {
  return std::strtod(value.str(std::max(digits, 1) - 1, std::ios_base::scientific).c_str(), nullptr);
}

Real parse_real(const std::string& text) {
  if (text.empty()) throw DomainError("empty numeric literal");
  for (char ch : text) {
    if (!((ch >= '0' && ch <= '9') || ch == '.' || ch == 'e' || ch == 'E' || ch == '+' || ch == '-')) {
      throw DomainError("malformed numeric literal '" + text + "'");
    }
  }
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw DomainError("malformed numeric literal '" + text + "'");
  }
}

}  // namespace idoneal
