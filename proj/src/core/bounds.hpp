#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/integer.hpp"
#include "core/real.hpp"

namespace idoneal::bounds {

/// Smallest |d| for which the final inequality is meaningful.
inline constexpr double kVerifiedFloor = 9.8e18;

/// Constant of the theorem threshold P >= C sqrt|d| (log|d|)^5 log log|d|.
inline constexpr double kTheoremConstant = 5e15;

struct ArithBounds {
  Real omega_rhs;
  Real sigma_rhs;
  std::optional<Real> pn_rhs;  // present when n >= 6
};

/// log n / log log n + 1.45743 log n / (log log n)^2. Needs n >= 3.
Real omega_rhs(const Real& n);
/// n (e^gamma log log n + 0.649 / log log n). Needs n >= 3.
Real sigma_rhs(const Real& n);
/// n (log n + log log n). Needs n >= 6.
Real pn_rhs(const Real& n);

ArithBounds arith_bounds(std::uint64_t n);

struct KBoundsReport {
  Real log_d;
  Real loglog_d;
  Real q_bound;                 // 1.27 log|d|
  Real k_bound;                 // 1.62 (log|d|)^2
  Real hk_bound;                // 0.64 log|d|
  Real regulator_bound;         // 1.69 log|d| log log|d|
  Real hkd_bound;               // 1.01 sqrt|d| (log|d|)^2
  Real hkd_bound_statement;     // 1.01 sqrt|d| log|d|
  Real heightQ_bound;           // 2.61 (log|d|)^4
  Real heightQ_bound_statement; // 2.16 (log|d|)^4
  Real c_bound;                 // 1.84 |d| log log|d|
  // Intermediate steps of the argument, evaluated at this |d|.
  std::uint64_t omega_index = 0;  // floor(log|d| / log log|d|) + 4
  Real q_chain;                   // pn_rhs(omega_index)
  bool q_chain_holds = false;     // q_chain <= q_bound
  Real regulator_chain;           // 1.27 L (log(1.27 L) + 1)
  bool regulator_chain_holds = false;
  Real hkd_chain;                 // Paulin's bound at k = 1.62 L^2
  bool hkd_chain_holds = false;
};

/// Throws DomainError for |d| < 16.
KBoundsReport kbounds_report(const Real& abs_d);

/// 8.12 |d|^(3/2) (log|d|)^6 log log|d|.
Real beta_height_bound(const Real& abs_d);

/// Degrees and logarithmic heights for a linear form in two logarithms.
struct WaldschmidtParams {
  Real D0 = 2;
  Real D1 = 2;
  Real D2 = 2;
  Real D = 8;
  Real log_A1 = 0;
  Real log_A2 = 0;
  Real log_B = 0;

  Real S0() const { return D0 + log_B; }
  Real S1() const { return D1 + log_A1; }
  Real S2() const { return D2 + log_A2; }
  Real T() const;
};

/// E with |Lambda| > exp(-E). Throws DomainError on non-positive S_j or degrees.
Real waldschmidt_lower(const WaldschmidtParams& p);

/// Degrees 2, 2, 2, 8; A1 = exp(regulator bound), A2 = 1, B = beta_height_bound.
WaldschmidtParams reference_instantiation(const Real& abs_d);

/// 1.2e16 (log|d|)^3 log log|d|.
Real simplified_exponent(const Real& abs_d);

/// 5e15 sqrt|d| (log|d|)^5 log log|d|. Throws DomainError for |d| < 16.
Real theorem_threshold(const Real& abs_d);

struct FinalInequality {
  Real C;
  Real lhs;
  Real rhs;
  bool violated = false;
};

/// C (log|d|)^3 loglog|d| against 4.8e15 (log|d|)^3 loglog|d| + 1.24 log 51.6 + 1.24 log|d|.
/// Throws DomainError below kVerifiedFloor.
FinalInequality final_inequality_check(const Real& abs_d, const Real& C = Real(kTheoremConstant));

struct HypothesisChecks {
  Int abs_d = 0;
  std::uint64_t P = 0;
  bool p_is_prime = false;
  bool p_large = false;  // P > 2 sqrt|d|
  bool divisor_gap = false;  // every divisor < sqrt|d|/2 or > 2 sqrt|d|
  std::optional<bool> no_form_aba;       // empty when enumeration is infeasible
  std::optional<bool> minima_divide_d;
  std::optional<bool> omega_within_bound;  // only for |d| >= kVerifiedFloor
  unsigned omega = 0;
};

/// Throws DomainError unless P divides d.
HypothesisChecks hypothesis_checks(Int d, std::uint64_t P);

/// Linear-form contradiction at P = C sqrt|d| L^5 LL under a choice of constants.
struct Contradiction {
  std::string name;
  Real upper_exponent;  // |Lambda| <= exp(-upper_exponent)
  Real lower_exponent;  // |Lambda| >  exp(-lower_exponent)
  bool contradiction = false;  // upper_exponent > lower_exponent
};

/// Two evaluations of one constant that the argument states inconsistently.
struct Discrepancy {
  std::string name;
  std::string note;
  std::vector<std::pair<std::string, Real>> values;
};

struct BoundReport {
  Real abs_d;
  std::optional<Int> d_exact;
  std::optional<std::uint64_t> P;
  KBoundsReport kbounds;
  Real omega_bound;       // log|d| / log log|d|
  Real omega_robin;       // omega_rhs(|d|)
  Real sigma_bound;
  Real pn_bound;          // pn_rhs(omega_index)
  Real B_height;
  WaldschmidtParams waldschmidt;
  Real waldschmidt_T;
  Real waldschmidt_exponent;
  Real waldschmidt_display_exponent;  // the simplified display with (1 + log A1)
  Real simplified_exponent;
  bool exponent_within_simplified = false;
  Real threshold_P;
  std::optional<FinalInequality> final_inequality;
  std::vector<Contradiction> contradictions;
  std::vector<Discrepancy> discrepancies;
  std::optional<HypothesisChecks> hypotheses;
};

BoundReport bound_report(const Real& abs_d);
/// Adds hypothesis checks for an exact d and prime factor P.
BoundReport bound_report(Int d, std::optional<std::uint64_t> P);

struct ThresholdReport {
  Real abs_d;
  Real log_d;
  Real loglog_d;
  Real threshold_P;
};

ThresholdReport threshold_report(const Real& abs_d);

}  // namespace idoneal::bounds
