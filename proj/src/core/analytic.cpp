#include "core/analytic.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <map>
#include <mpfr.h>
#include <numeric>
#include <tuple>

#include "core/arith.hpp"
#include "core/errors.hpp"

namespace idoneal::analytic {

namespace {

constexpr std::uint64_t kMaxRealDiscriminant = 1'000'000'000;

// Asymptotic terms kept in the digamma expansion used for the series tail.
constexpr unsigned kDigammaTerms = 12;

// RAII wrapper so the hot loops can use in-place mpfr calls.
class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, mpfr_get_prec(Real(0).backend().data())); mpfr_set_ui(v_, 0, MPFR_RNDN); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  Real value() const {
    Real r;
    mpfr_set(r.backend().data(), v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

Real sqrt_real(std::uint64_t n) { return sqrt(Real(n)); }

std::uint64_t as_u64(Int v) {
  if (v < 0 || v > Int(UINT64_MAX)) throw TooLargeError("value exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> odd_primes_not_dividing(Int d, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; out.size() < count; p += 2) {
    if (!arith::is_prime(p)) continue;
    if (d % static_cast<Int>(p) != 0) out.push_back(p);
  }
  return out;
}

}  // namespace

int kronecker(Int top, Int bottom) { return arith::kronecker(top, bottom); }

AuxiliaryK choose_k(forms::Discriminant d) {
  const auto q = odd_primes_not_dividing(d.value(), 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (q[i] % 4 == q[j] % 4) return AuxiliaryK{q[i], q[j], q[i] * q[j]};
    }
  }
  throw VerificationError("no two of three odd primes agree mod 4");
}

AuxiliaryK aux_from_k(forms::Discriminant d, std::uint64_t k) {
  if (k % 4 != 1) throw DomainError("k must be 1 mod 4");
  const auto f = arith::factorize(k);
  if (f.size() != 2 || f[0].exponent != 1 || f[1].exponent != 1 || f[0].prime == 2) {
    throw DomainError("k must be a product of two distinct odd primes");
  }
  if (gcd(static_cast<Int>(k), d.value()) != 1) throw DomainError("gcd(k, d) must be 1");
  return AuxiliaryK{f[0].prime, f[1].prime, k};
}

UnitData fundamental_unit(std::uint64_t k) {
  if (k <= 1 || k % 4 != 1 || !arith::is_squarefree(k)) {
    throw DomainError("fundamental_unit needs squarefree k > 1 with k = 1 (mod 4)");
  }
  // Continued fraction of (1 + sqrt k) / 2 in (P + sqrt k) / Q form.
  const std::int64_t s = static_cast<std::int64_t>(isqrt_u64(k));
  const std::int64_t kk = static_cast<std::int64_t>(k);
  std::int64_t P = 1;
  std::int64_t Q = 2;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  const BigInt bk = k;
  for (std::uint64_t iter = 0; iter < 100'000'000; ++iter) {
    if (Q <= 0) throw VerificationError("continued fraction left the reduced range");
    const std::int64_t a = (P + s) / Q;
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    const BigInt x = 2 * p - q;
    const BigInt norm = x * x - bk * q * q;
    if (x > 0 && (norm == 4 || norm == -4)) {
      UnitData u;
      u.k = k;
      u.x = x;
      u.y = q;
      u.norm = norm == 4 ? 1 : -1;
      u.log_epsilon = log((to_real(x) + to_real(q) * sqrt_real(k)) / 2);
      return u;
    }
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    P = a * Q - P;
    Q = (kk - P * P) / Q;
  }
  throw VerificationError("fundamental unit search did not terminate");
}

std::uint64_t narrow_class_number(std::uint64_t D) {
  if (D > kMaxRealDiscriminant) throw TooLargeError("discriminant too large for form cycles");
  if (D % 4 == 2 || D % 4 == 3) throw DomainError("not a discriminant");
  const std::int64_t s = static_cast<std::int64_t>(isqrt_u64(D));
  if (static_cast<std::uint64_t>(s * s) == D) throw DomainError("square discriminant");
  const std::int64_t DD = static_cast<std::int64_t>(D);

  using Form = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  std::map<Form, bool> seen;
  for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
    const std::int64_t n = (DD - b * b) / 4;
    for (std::uint64_t t : arith::divisors(static_cast<std::uint64_t>(n))) {
      const std::int64_t ti = static_cast<std::int64_t>(t);
      if (2 * ti + b <= s || 2 * ti - b > s) continue;
      for (std::int64_t a : {ti, -ti}) {
        const std::int64_t c = -n / a;
        if (std::gcd(std::gcd(ti, b), c < 0 ? -c : c) != 1) continue;
        seen.emplace(Form{a, b, c}, false);
      }
    }
  }
  std::uint64_t cycles = 0;
  for (auto& [start, visited] : seen) {
    if (visited) continue;
    ++cycles;
    Form f = start;
    while (true) {
      auto it = seen.find(f);
      if (it == seen.end()) throw VerificationError("reduction cycle left the reduced set");
      if (it->second) break;
      it->second = true;
      const auto [a, b, c] = f;
      (void)a;
      const std::int64_t m = 2 * (c < 0 ? -c : c);
      std::int64_t r = (s - (-b)) % m;
      if (r < 0) r += m;
      const std::int64_t b2 = s - r;
      f = Form{c, b2, (b2 * b2 - DD) / (4 * c)};
    }
  }
  return cycles;
}

std::uint64_t real_class_number(std::uint64_t k) {
  const UnitData u = fundamental_unit(k);
  const std::uint64_t narrow = narrow_class_number(k);
  return u.norm == -1 ? narrow : narrow / 2;
}

Real l1_series(std::uint64_t k) {
  const Real pi = real_pi();
  Real sum = 0;
  for (std::uint64_t a = 1; a < k; ++a) {
    const int chi = arith::kronecker(static_cast<Int>(k), static_cast<Int>(a));
    if (chi == 0) continue;
    const Real term = log(sin(pi * a / k));
    if (chi > 0) sum += term; else sum -= term;
  }
  return -sum / sqrt_real(k);
}

SeriesValue dirichlet_l1(Int D, unsigned blocks) {
  if (blocks == 0) throw DomainError("need at least one block");
  const std::uint64_t m = as_u64(abs(D));
  std::vector<std::int8_t> chi(m);
  for (std::uint64_t a = 0; a < m; ++a) chi[a] = static_cast<std::int8_t>(arith::kronecker(D, static_cast<Int>(a)));

  Mpfr sum, t, y, inv, inv2, poly, acc_log, acc_inv, acc_poly;
  const std::uint64_t n_max = static_cast<std::uint64_t>(blocks) * m;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const int c = chi[n % m];
    if (c == 0) continue;
    mpfr_set_ui(t.get(), 1, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), n, MPFR_RNDN);
    if (c > 0) mpfr_add(sum.get(), sum.get(), t.get(), MPFR_RNDN);
    else mpfr_sub(sum.get(), sum.get(), t.get(), MPFR_RNDN);
  }

  // Tail: sum_{n > Jm} chi(n)/n = -(1/m) sum_a chi(a) psi(J + a/m), with
  // psi(y) = log y - 1/(2y) - sum_j B_2j / (2j y^2j) + R, |R| below the next term.
  std::vector<Real> coeff(kDigammaTerms + 1);
  for (unsigned j = 1; j <= kDigammaTerms; ++j) {
    coeff[j] = boost::math::bernoulli_b2n<Real>(static_cast<int>(j)) / (2 * j);
  }
  std::vector<Mpfr> c_raw(kDigammaTerms + 1);
  for (unsigned j = 1; j <= kDigammaTerms; ++j) mpfr_set(c_raw[j].get(), coeff[j].backend().data(), MPFR_RNDN);

  const std::uint64_t jm = static_cast<std::uint64_t>(blocks) * m;
  for (std::uint64_t a = 1; a < m; ++a) {
    const int c = chi[a];
    if (c == 0) continue;
    // log(J + a/m) - log J = log1p(a / (J m)); the constant cancels since sum chi = 0.
    mpfr_set_ui(t.get(), a, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), jm, MPFR_RNDN);
    mpfr_log1p(t.get(), t.get(), MPFR_RNDN);
    mpfr_set_ui(y.get(), a, MPFR_RNDN);
    mpfr_div_ui(y.get(), y.get(), m, MPFR_RNDN);
    mpfr_add_ui(y.get(), y.get(), blocks, MPFR_RNDN);
    mpfr_ui_div(inv.get(), 1, y.get(), MPFR_RNDN);
    mpfr_sqr(inv2.get(), inv.get(), MPFR_RNDN);
    mpfr_set(poly.get(), c_raw[kDigammaTerms].get(), MPFR_RNDN);
    for (unsigned j = kDigammaTerms - 1; j >= 1; --j) {
      mpfr_mul(poly.get(), poly.get(), inv2.get(), MPFR_RNDN);
      mpfr_add(poly.get(), poly.get(), c_raw[j].get(), MPFR_RNDN);
    }
    mpfr_mul(poly.get(), poly.get(), inv2.get(), MPFR_RNDN);
    if (c > 0) {
      mpfr_add(acc_log.get(), acc_log.get(), t.get(), MPFR_RNDN);
      mpfr_add(acc_inv.get(), acc_inv.get(), inv.get(), MPFR_RNDN);
      mpfr_add(acc_poly.get(), acc_poly.get(), poly.get(), MPFR_RNDN);
    } else {
      mpfr_sub(acc_log.get(), acc_log.get(), t.get(), MPFR_RNDN);
      mpfr_sub(acc_inv.get(), acc_inv.get(), inv.get(), MPFR_RNDN);
      mpfr_sub(acc_poly.get(), acc_poly.get(), poly.get(), MPFR_RNDN);
    }
  }
  const Real psi_sum = acc_log.value() - acc_inv.value() / 2 - acc_poly.value();
  SeriesValue out;
  out.value = sum.value() - psi_sum / m;
  const unsigned next = kDigammaTerms + 1;
  out.tail_bound = abs(boost::math::bernoulli_b2n<Real>(static_cast<int>(next))) /
                   (2 * next * pow(Real(blocks), 2 * next));
  out.terms = n_max;
  return out;
}

LValues l_values(forms::Discriminant d, const AuxiliaryK& aux) {
  if (gcd(static_cast<Int>(aux.k), d.value()) != 1) throw DomainError("gcd(k, d) must be 1");
  LValues out;
  out.unit = fundamental_unit(aux.k);
  out.narrow_class_number_k = narrow_class_number(aux.k);
  out.class_number_k = out.unit.norm == -1 ? out.narrow_class_number_k : out.narrow_class_number_k / 2;
  const Real root_k = sqrt_real(aux.k);
  out.l1_formula = 2 * Real(out.class_number_k) * out.unit.log_epsilon / root_k;
  out.l1_series = l1_series(aux.k);

  const Int kd = static_cast<Int>(aux.k) * d.value();
  out.class_number_kd = forms::class_number(forms::Discriminant(kd));
  out.l2_formula = Real(out.class_number_kd) * real_pi() / sqrt(to_real(abs(kd)));
  const SeriesValue s = dirichlet_l1(kd);
  out.l2_series = s.value;
  out.l2_tail_bound = s.tail_bound;
  out.l2_terms = s.terms;

  const Real tol = Real(kSeriesTolerance);
  if (abs(out.l1_formula - out.l1_series) > tol * abs(out.l1_formula)) {
    throw VerificationError("L(1, chi) formula and series disagree for k = " + std::to_string(aux.k));
  }
  if (abs(out.l2_formula - out.l2_series) > tol * abs(out.l2_formula)) {
    throw VerificationError("L(1, chi chi') formula and series disagree for kd = " + to_string(kd));
  }
  return out;
}

CValue c_value(forms::Discriminant d, const AuxiliaryK& aux) {
  CValue out;
  out.sum = 0;
  for (const auto& f : forms::enumerate_reduced(d)) {
    const int chi = arith::kronecker(static_cast<Int>(aux.k), f.a);
    if (chi == 0) continue;
    out.sum += Rational(chi, to_bigint(f.a));
  }
  const Rational scaled = out.sum * Rational(to_bigint(d.value()));
  if (boost::multiprecision::denominator(scaled) == 1) out.c = boost::multiprecision::numerator(scaled);
  return out;
}

CValue c_value(forms::Discriminant d) { return c_value(d, choose_k(d)); }

Rational principal_q(const AuxiliaryK& aux) {
  Rational q = 1;
  for (const auto& pp : arith::factorize(aux.k)) {
    const BigInt p2 = BigInt(pp.prime) * pp.prime;
    q *= Rational(p2 - 1, p2);
  }
  return q;
}

Real principal_term(forms::Discriminant d, const AuxiliaryK& aux) {
  const Real pi = real_pi();
  return pi * pi / 6 * to_real(principal_q(aux) * c_value(d, aux).sum);
}

Real a0_sum(forms::Discriminant d, std::uint64_t k) {
  const auto f = arith::factorize(k);
  if (f.size() != 1) return Real(0);
  const std::uint64_t p = f[0].prime;
  Real chi_sum = 0;
  for (const auto& form : forms::enumerate_reduced(d)) chi_sum += arith::kronecker(static_cast<Int>(k), form.a);
  return -2 * real_pi() / (Real(k) * sqrt(to_real(d.magnitude()))) * chi_sum * log(Real(p));
}

Real a0_sum(forms::Discriminant d, const AuxiliaryK& aux) { return a0_sum(d, aux.k); }

Real remainder_bound_for_minima(const Real& abs_d, std::uint64_t k, const std::vector<Int>& minima) {
  const Real pi = real_pi();
  const Real root = sqrt(abs_d);
  Real total = 0;
  for (Int a : minima) {
    const Real x = exp(-pi * root / (Real(k) * to_real(a)));
    total += 2 * x / ((1 - x) * (1 - x));
  }
  return 4 * pi / root * total;
}

Real remainder_bound(forms::Discriminant d, const AuxiliaryK& aux) {
  std::vector<Int> minima;
  for (const auto& f : forms::enumerate_reduced(d)) minima.push_back(f.a);
  return remainder_bound_for_minima(to_real(d.magnitude()), aux.k, minima);
}

IdentityReport verify_identity(forms::Discriminant d, const AuxiliaryK& aux) {
  IdentityReport r{d, aux, l_values(d, aux), 0, 0, 0, principal_q(aux), c_value(d, aux), 0, 0, 0, false};
  r.lhs_formula = r.l.l1_formula * r.l.l2_formula;
  r.lhs_series = r.l.l1_series * r.l.l2_series;
  r.series_gap = abs(r.lhs_formula - r.lhs_series) / abs(r.lhs_formula);
  if (r.series_gap > Real(kSeriesTolerance)) throw VerificationError("L-value products disagree");
  const Real pi = real_pi();
  r.principal = pi * pi / 6 * to_real(r.q * r.c.sum);
  r.a0_sum = a0_sum(d, aux);
  r.remainder_bound = remainder_bound(d, aux);
  r.verdict = abs(r.lhs_formula - r.principal - r.a0_sum) <= r.remainder_bound;
  return r;
}

IdentityReport verify_identity(forms::Discriminant d) { return verify_identity(d, choose_k(d)); }

}  // namespace idoneal::analytic
