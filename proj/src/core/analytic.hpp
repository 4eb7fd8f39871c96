#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/forms.hpp"
#include "core/real.hpp"

namespace idoneal::analytic {

/// Auxiliary modulus k = q1 q2 with q1 < q2 odd primes, q1 = q2 (mod 4).
struct AuxiliaryK {
  std::uint64_t q1 = 0;
  std::uint64_t q2 = 0;
  std::uint64_t k = 0;
  friend bool operator==(const AuxiliaryK&, const AuxiliaryK&) = default;
};

/// Fundamental unit (x + y sqrt(k)) / 2 of Q(sqrt(k)).
struct UnitData {
  std::uint64_t k = 0;
  BigInt x;
  BigInt y;
  int norm = 0;  // x^2 - k y^2 = 4 norm
  Real log_epsilon;
};

struct LValues {
  Real l1_formula;
  Real l1_series;
  Real l2_formula;
  Real l2_series;
  Real l2_tail_bound;          // bound on the asymptotic truncation of the series tail
  std::uint64_t l2_terms = 0;  // terms summed directly before the tail
  std::uint64_t class_number_k = 0;
  std::uint64_t narrow_class_number_k = 0;
  std::uint64_t class_number_kd = 0;
  UnitData unit;
};

/// Sum over reduced forms of chi(a)/a, and C = d * sum when that is integral.
struct CValue {
  Rational sum;
  std::optional<BigInt> c;
};

struct IdentityReport {
  forms::Discriminant d;
  AuxiliaryK aux;
  LValues l;
  Real lhs_formula;
  Real lhs_series;
  Real series_gap;  // relative |lhs_formula - lhs_series|
  Rational q;
  CValue c;
  Real principal;
  Real a0_sum;
  Real remainder_bound;
  bool verdict = false;
};

/// Relative agreement demanded of each pair of independent L-value evaluations.
inline constexpr double kSeriesTolerance = 1e-8;

int kronecker(Int top, Int bottom);

/// Picks two of the first three odd primes not dividing d that agree mod 4.
AuxiliaryK choose_k(forms::Discriminant d);

/// Validates a user-supplied k. Throws DomainError unless k is a product of
/// two distinct odd primes with k = 1 (mod 4) and gcd(k, d) = 1.
AuxiliaryK aux_from_k(forms::Discriminant d, std::uint64_t k);

/// Throws DomainError unless k > 1 is squarefree and k = 1 (mod 4).
UnitData fundamental_unit(std::uint64_t k);

/// Narrow class number of discriminant D > 0, non-square, by counting cycles
/// of reduced indefinite forms. Throws TooLargeError beyond 10^9.
std::uint64_t narrow_class_number(std::uint64_t D);

/// Wide class number of Q(sqrt(k)) for squarefree k = 1 (mod 4).
std::uint64_t real_class_number(std::uint64_t k);

/// Throws VerificationError when either pair disagrees beyond kSeriesTolerance.
LValues l_values(forms::Discriminant d, const AuxiliaryK& aux);

/// Real-character L(1, chi) for the real character (k/.), evaluated by the
/// closed sum over log sin.
Real l1_series(std::uint64_t k);

struct SeriesValue {
  Real value;
  Real tail_bound;
  std::uint64_t terms = 0;
};

/// L(1, (D/.)) for a discriminant D (positive or negative) with period |D|,
/// as a Dirichlet series summed over `blocks` full periods plus an asymptotic
/// digamma tail.
SeriesValue dirichlet_l1(Int D, unsigned blocks = 10);

CValue c_value(forms::Discriminant d, const AuxiliaryK& aux);
CValue c_value(forms::Discriminant d);

/// prod over p | k of (1 - 1/p^2), exact.
Rational principal_q(const AuxiliaryK& aux);

/// (pi^2 / 6) Q sum_f chi(a)/a.
Real principal_term(forms::Discriminant d, const AuxiliaryK& aux);

/// Half the r = 0 correction. Zero unless k is a prime power.
Real a0_sum(forms::Discriminant d, std::uint64_t k);
Real a0_sum(forms::Discriminant d, const AuxiliaryK& aux);

/// sum over reduced forms f of (4 pi / sqrt|d|) 2 x / (1 - x)^2, x = exp(-pi sqrt|d| / (k a_f)).
Real remainder_bound(forms::Discriminant d, const AuxiliaryK& aux);
Real remainder_bound_for_minima(const Real& abs_d, std::uint64_t k, const std::vector<Int>& minima);

IdentityReport verify_identity(forms::Discriminant d, const AuxiliaryK& aux);
IdentityReport verify_identity(forms::Discriminant d);

}  // namespace idoneal::analytic
