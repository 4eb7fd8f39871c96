#include "core/bounds.hpp"

#include "core/arith.hpp"
#include "core/errors.hpp"
#include "core/forms.hpp"

namespace idoneal::bounds {

namespace {

Real c(const char* literal) { return Real(literal); }

void require_at_least(const Real& n, int floor, const char* what) {
  if (n < floor) throw DomainError(std::string(what) + " needs n >= " + std::to_string(floor));
}

struct Logs {
  Real L;
  Real LL;
};

Logs logs_of(const Real& abs_d) {
  require_at_least(abs_d, 16, "bound evaluation");
  const Real L = log(abs_d);
  return {L, log(L)};
}

}  // namespace

Real omega_rhs(const Real& n) {
  require_at_least(n, 3, "omega bound");
  const Real L = log(n);
  const Real LL = log(L);
  return L / LL + c("1.45743") * L / (LL * LL);
}

Real sigma_rhs(const Real& n) {
  require_at_least(n, 3, "sigma bound");
  const Real LL = log(log(n));
  return n * (exp(euler_gamma()) * LL + c("0.649") / LL);
}

Real pn_rhs(const Real& n) {
  require_at_least(n, 6, "prime bound");
  const Real L = log(n);
  return n * (L + log(L));
}

ArithBounds arith_bounds(std::uint64_t n) {
  const Real x(n);
  ArithBounds out{omega_rhs(x), sigma_rhs(x), std::nullopt};
  if (n >= 6) out.pn_rhs = pn_rhs(x);
  return out;
}

KBoundsReport kbounds_report(const Real& abs_d) {
  const auto [L, LL] = logs_of(abs_d);
  KBoundsReport r;
  r.log_d = L;
  r.loglog_d = LL;
  r.q_bound = c("1.27") * L;
  r.k_bound = c("1.62") * L * L;
  r.hk_bound = c("0.64") * L;
  r.regulator_bound = c("1.69") * L * LL;
  r.hkd_bound = c("1.01") * sqrt(abs_d) * L * L;
  r.hkd_bound_statement = c("1.01") * sqrt(abs_d) * L;
  r.heightQ_bound = c("2.61") * pow(L, 4);
  r.heightQ_bound_statement = c("2.16") * pow(L, 4);
  r.c_bound = c("1.84") * abs_d * LL;

  r.omega_index = static_cast<std::uint64_t>(floor(L / LL).convert_to<double>()) + 4;
  r.q_chain = pn_rhs(Real(r.omega_index));
  r.q_chain_holds = r.q_chain <= r.q_bound;
  r.regulator_chain = r.q_bound * (log(r.q_bound) + 1);
  r.regulator_chain_holds = r.regulator_chain <= r.regulator_bound;
  const Real kd = r.k_bound * abs_d;
  r.hkd_chain = sqrt(kd) * (2 + log(kd)) / real_pi();
  r.hkd_chain_holds = r.hkd_chain <= r.hkd_bound;
  return r;
}

Real beta_height_bound(const Real& abs_d) {
  const auto [L, LL] = logs_of(abs_d);
  return c("8.12") * pow(abs_d, Real(3) / 2) * pow(L, 6) * LL;
}

Real WaldschmidtParams::T() const {
  return 4 + S0() / D0 + log(D * D * (S1() / D1) * (S2() / D2));
}

Real waldschmidt_lower(const WaldschmidtParams& p) {
  if (p.D0 <= 0 || p.D1 <= 0 || p.D2 <= 0 || p.D <= 0) throw DomainError("degrees must be positive");
  if (p.S0() <= 0 || p.S1() <= 0 || p.S2() <= 0) throw DomainError("S0, S1, S2 must be positive");
  const Real T = p.T();
  return c("5e8") * pow(p.D, 4) * (p.S1() / p.D1) * (p.S2() / p.D2) * T * T;
}

WaldschmidtParams reference_instantiation(const Real& abs_d) {
  WaldschmidtParams p;
  p.log_A1 = kbounds_report(abs_d).regulator_bound;
  p.log_A2 = 0;
  p.log_B = log(beta_height_bound(abs_d));
  return p;
}

Real simplified_exponent(const Real& abs_d) {
  const auto [L, LL] = logs_of(abs_d);
  return c("1.2e16") * L * L * L * LL;
}

Real theorem_threshold(const Real& abs_d) {
  const auto [L, LL] = logs_of(abs_d);
  return Real(kTheoremConstant) * sqrt(abs_d) * pow(L, 5) * LL;
}

FinalInequality final_inequality_check(const Real& abs_d, const Real& C) {
  if (abs_d < Real(kVerifiedFloor)) throw DomainError("final inequality needs |d| >= 9.8e18");
  const auto [L, LL] = logs_of(abs_d);
  FinalInequality f;
  f.C = C;
  f.lhs = C * L * L * L * LL;
  f.rhs = c("4.8e15") * L * L * L * LL + c("1.24") * log(c("51.6")) + c("1.24") * L;
  f.violated = f.lhs > f.rhs;
  return f;
}

HypothesisChecks hypothesis_checks(Int d, std::uint64_t P) {
  const Int abs_d = abs(d);
  if (abs_d == 0 || P < 2 || abs_d % static_cast<Int>(P) != 0) throw DomainError("P must divide d");
  HypothesisChecks h;
  h.abs_d = abs_d;
  h.P = P;
  h.p_is_prime = arith::is_prime(P);
  h.p_large = static_cast<Int>(P) * static_cast<Int>(P) > 4 * abs_d;
  if (abs_d <= Int(UINT64_MAX)) {
    const auto n = static_cast<std::uint64_t>(abs_d);
    h.divisor_gap = true;
    for (std::uint64_t t : arith::divisors(n)) {
      const Int t2 = static_cast<Int>(t) * static_cast<Int>(t);
      if (!(4 * t2 < abs_d || t2 > 4 * abs_d)) h.divisor_gap = false;
    }
    h.omega = arith::omega(n);
    if (abs_d >= static_cast<Int>(9'800'000'000'000'000'000ULL)) {
      const Real L = log(to_real(abs_d));
      h.omega_within_bound = Real(h.omega) <= L / log(L);
    }
  }
  if (abs_d <= forms::kEnumerationLimit && (d % 4 == 0 || mod_floor(d, 4) == 1)) {
    bool aba = false;
    bool divide = true;
    for (const auto& f : forms::enumerate_reduced(forms::Discriminant(-abs_d))) {
      if (f.a == f.c) aba = true;
      if (abs_d % f.a != 0) divide = false;
    }
    h.no_form_aba = !aba;
    h.minima_divide_d = divide;
  }
  return h;
}

namespace {

Contradiction make_contradiction(std::string name, Real upper, Real lower) {
  Contradiction out{std::move(name), std::move(upper), std::move(lower), false};
  out.contradiction = out.upper_exponent > out.lower_exponent;
  return out;
}

std::vector<Contradiction> contradictions(const Real& L, const Real& LL, const Real& E) {
  const Real pi = real_pi();
  const Real C(kTheoremConstant);
  const Real L3 = L * L * L;
  const Real lower_simplified = c("1.2e16") * L3 * LL;
  std::vector<Contradiction> out;
  out.push_back(make_contradiction("displayed_1.24_without_loglog",
                                   pi * C * L3 / c("1.24") - L - log(c("50.4")), lower_simplified));
  out.push_back(make_contradiction("1.24_with_loglog", pi * C * L3 * LL / c("1.24") - L - log(c("52.6")),
                                   lower_simplified));
  out.push_back(make_contradiction("1.69_with_loglog", pi * C * L3 * LL / c("1.69") - L - log(c("52.6")),
                                   lower_simplified));
  out.push_back(make_contradiction("1.69_against_theorem_exponent",
                                   pi * C * L3 * LL / c("1.69") - L - log(c("52.6")), E));
  return out;
}

std::vector<Discrepancy> discrepancies(const Real& abs_d, const KBoundsReport& l1, const WaldschmidtParams& w,
                                       const Real& E, const Real& E_display) {
  const Real L = l1.log_d;
  const Real LL = l1.loglog_d;
  const Real pi = real_pi();
  std::vector<Discrepancy> out;
  out.push_back({"height_Q_constant", "stated 2.16 (log|d|)^4, proof and height table 2.61 (log|d|)^4",
                 {{"statement", l1.heightQ_bound_statement}, {"proof", l1.heightQ_bound}}});
  out.push_back({"hkd_exponent", "stated 1.01 sqrt|d| log|d|, proof 1.01 sqrt|d| (log|d|)^2",
                 {{"statement", l1.hkd_bound_statement}, {"proof", l1.hkd_bound}}});
  out.push_back({"k_height_constant", "k bound gives k <= 1.62 (log|d|)^2, height table uses 1.69 (log|d|)^2",
                 {{"k_bound", l1.k_bound}, {"table", c("1.69") * L * L}}});
  out.push_back({"remainder_exponent_constant",
                 "remainder exponent uses 1.24 and 1.69 on consecutive lines; 1.2e16 * const / pi is the "
                 "coefficient the final inequality needs",
                 {{"coefficient_1.24", c("1.2e16") * c("1.24") / pi},
                  {"coefficient_1.69", c("1.2e16") * c("1.69") / pi},
                  {"stated", c("4.8e15")},
                  {"C", Real(kTheoremConstant)}}});
  out.push_back({"upper_bound_constant", "upper bound constant appears as 52.6, 50.4 and 51.6; 165/pi from h(d) < sqrt|d|, |Q| >= 1/2",
                 {{"derived", Real(165) / pi}, {"linear_form", c("52.6")}, {"upper_bound", c("50.4")},
                  {"final_inequality", c("51.6")}}});
  out.push_back({"upper_bound_loglog", "upper bound display has exponent pi C (log|d|)^3 / 1.24 without log log|d|",
                 {{"without", pi * Real(kTheoremConstant) * L * L * L / c("1.24")},
                  {"with", pi * Real(kTheoremConstant) * L * L * L * LL / c("1.24")}}});
  out.push_back({"waldschmidt_T_form", "T = 4 + S0/D0 + log(D^2 S1/D1 S2/D2) versus 5 + log B / 2 + log(32 S1)",
                 {{"theorem", w.T()}, {"instantiated", 5 + w.log_B / 2 + log(32 * w.S1())}}});
  out.push_back({"waldschmidt_S1_factor", "display uses (1 + log A1) where S1/D1 = 1 + log A1 / 2",
                 {{"theorem", E}, {"display", E_display}}});
  out.push_back({"S0_definition", "instantiation writes S0 = 2 + B; the theorem defines S0 = D0 + log B",
                 {{"D0_plus_log_B", w.S0()}, {"log_of_2_plus_B", log(2 + beta_height_bound(abs_d))}}});
  WaldschmidtParams w2 = w;
  w2.log_A2 = pi / 2;
  out.push_back({"A2_exp_log_i", "A2 = 1 but the theorem needs A2 >= exp|log i| = exp(pi/2)",
                 {{"A2_1", E}, {"A2_exp_pi_over_2", waldschmidt_lower(w2)}}});
  out.push_back({"omega_bound", "omega(d) <= log|d|/log log|d| versus the two-term Robin bound",
                 {{"one_term", L / LL}, {"robin", omega_rhs(abs_d)}}});
  out.push_back({"q_chain", "p_(omega+4) <= (omega+4)(log(omega+4) + log log(omega+4)) <= 1.27 log|d|",
                 {{"index", Real(l1.omega_index)}, {"chain", l1.q_chain}, {"bound", l1.q_bound}}});
  return out;
}

}  // namespace

BoundReport bound_report(const Real& abs_d) {
  BoundReport r;
  r.abs_d = abs_d;
  r.kbounds = kbounds_report(abs_d);
  const Real& L = r.kbounds.log_d;
  const Real& LL = r.kbounds.loglog_d;
  r.omega_bound = L / LL;
  r.omega_robin = omega_rhs(abs_d);
  r.sigma_bound = sigma_rhs(abs_d);
  r.pn_bound = r.kbounds.q_chain;
  r.B_height = beta_height_bound(abs_d);
  r.waldschmidt = reference_instantiation(abs_d);
  r.waldschmidt_T = r.waldschmidt.T();
  r.waldschmidt_exponent = waldschmidt_lower(r.waldschmidt);
  const Real logA1 = r.waldschmidt.log_A1;
  const Real t_display = 5 + r.waldschmidt.log_B / 2 + log(64 + 32 * logA1);
  r.waldschmidt_display_exponent = c("5e8") * pow(Real(8), 4) * (1 + logA1) * t_display * t_display;
  r.simplified_exponent = simplified_exponent(abs_d);
  r.exponent_within_simplified = r.waldschmidt_exponent <= r.simplified_exponent;
  r.threshold_P = theorem_threshold(abs_d);
  if (abs_d >= Real(kVerifiedFloor)) r.final_inequality = final_inequality_check(abs_d);
  r.contradictions = contradictions(L, LL, r.waldschmidt_exponent);
  r.discrepancies = discrepancies(abs_d, r.kbounds, r.waldschmidt, r.waldschmidt_exponent,
                                  r.waldschmidt_display_exponent);
  return r;
}

BoundReport bound_report(Int d, std::optional<std::uint64_t> P) {
  BoundReport r = bound_report(to_real(abs(d)));
  r.d_exact = d;
  if (P) {
    r.P = P;
    r.hypotheses = hypothesis_checks(d, *P);
  }
  return r;
}

ThresholdReport threshold_report(const Real& abs_d) {
  const auto [L, LL] = logs_of(abs_d);
  return {abs_d, L, LL, theorem_threshold(abs_d)};
}

}  // namespace idoneal::bounds
