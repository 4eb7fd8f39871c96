#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "core/integer.hpp"

namespace idoneal {

/// Working precision for every real-valued quantity, in decimal digits.
inline constexpr unsigned kWorkingDigits = 60;

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kWorkingDigits>,
                                           boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Real to_real(Int value);
Real to_real(const BigInt& value);
Real to_real(const Rational& value);
BigInt to_bigint(Int value);

Real real_pi();
Real euler_gamma();

/// Decimal text with `digits` significant digits.
std::string format_real(const Real& value, int digits);
/// Nearest double to value rounded to `digits` significant digits.
double to_display_double(const Real& value, int digits);

/// Parses an integer or decimal/scientific literal such as "9.8e18".
Real parse_real(const std::string& text);

}  // namespace idoneal
