// Acceptance suite: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "core/analytic.hpp"
#include "core/arith.hpp"
#include "core/bounds.hpp"
#include "core/forms.hpp"
#include "core/report.hpp"
#include "core/sieve.hpp"
#include "core/survivor.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace idoneal;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
  bool soft = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + IDONEAL_CLI + "\" " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

sieve::SieveConfig small_config(std::uint64_t limit) {
  sieve::SieveConfig c;
  c.p1_primes = {3, 5, 7};
  c.p2_primes = {11, 13, 17};
  c.sieve_lo_index = 8;
  c.sieve_hi_index = 25;
  c.small_cutoff = 40000;
  c.limit = limit;
  return c;
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  const auto [code, out] = run_cli("idoneal --max-n 2000");
  const double secs = seconds_since(t0);
  if (code != 0) return {false, "cli exit " + std::to_string(code)};
  const auto numbers = json::parse(out)["numbers"].get<std::vector<std::uint64_t>>();
  std::vector<std::uint64_t> want;
  for (std::int64_t n = 1; n <= 2000; ++n) {
    if (oracle::all_ambiguous(4 * n)) want.push_back(static_cast<std::uint64_t>(n));
  }
  const bool ok = numbers == want && numbers.size() == 65 && numbers.back() == 1848 && secs < 5;
  return {ok, std::to_string(numbers.size()) + " numbers, largest " +
                  (numbers.empty() ? std::string("-") : std::to_string(numbers.back())) + ", oracle " +
                  (numbers == want ? "agrees" : "disagrees") + ", " + fmt(secs, 3) + " s"};
}

Verdict criterion2() {
  const std::uint64_t limit = 1'000'000;
  const auto t0 = Clock::now();
  const auto outcome = sieve::run_sieve(small_config(limit), {.threads = 1});
  const auto verdicts = survivor::check_survivors(outcome, true);
  const double secs = seconds_since(t0);
  const std::set<std::uint64_t> got(verdicts.one_class_per_genus.begin(), verdicts.one_class_per_genus.end());

  const auto census = oracle::census(static_cast<std::int64_t>(limit));
  std::set<std::uint64_t> want;
  for (std::uint64_t n = 3; n <= limit; ++n) {
    if (oracle::valid_magnitude(n) && census.forms[n] == census.ambiguous[n]) want.insert(n);
  }
  std::size_t diff = 0;
  for (auto n : got) diff += want.count(n) == 0;
  for (auto n : want) diff += got.count(n) == 0;
  return {diff == 0 && outcome.complete && secs < 600,
          std::to_string(got.size()) + " flagged, oracle " + std::to_string(want.size()) + ", " +
              std::to_string(diff) + " discrepancies, pipeline " + fmt(secs, 3) + " s single-threaded"};
}

bool reduced(const forms::QuadForm& f) {
  const Int a = f.a, b = f.b, c = f.c;
  if (a <= 0) return false;
  if (!(-a < b && b <= a && a <= c)) return false;
  return !(a == c && b < 0);
}

Verdict criterion3() {
  const sieve::SievePlan plan{sieve::SieveConfig{}};
  const auto& cfg = plan.config();
  std::uint64_t checked = 0, proper = 0, naive_mismatch = 0, drawn = 0;
  while (checked < 100'000) {
    ++drawn;
    const std::uint64_t n = oracle::random_magnitude(cfg.small_cutoff + 1, 9'800'000'000'000'000'000ull);
    const std::uint32_t p = plan.credit_prime(n);
    if (p != sieve::credit_prime_naive(cfg, n)) ++naive_mismatch;
    if (p == 0) continue;
    if (static_cast<Int>(n) <= 4 * static_cast<Int>(p) * p) continue;
    ++checked;
    const Int d = -static_cast<Int>(n);
    const auto w = sieve::witness_form(forms::Discriminant(d), p);
    const auto& f = w.form;
    const bool disc = f.b * f.b - 4 * f.a * f.c == d;
    const bool amb = f.b == 0 || f.b == f.a || f.a == f.c;
    if (w.proper && disc && reduced(f) && !amb && f.a == static_cast<Int>(p)) ++proper;
  }
  return {proper == checked && naive_mismatch == 0,
          std::to_string(proper) + "/" + std::to_string(checked) + " witnesses reduced and non-ambiguous (" +
              std::to_string(drawn) + " draws, " + std::to_string(naive_mismatch) + " verdict mismatches)"};
}

Verdict criterion4() {
  const sieve::SieveConfig cfg;
  unsigned __int128 want = 32;
  for (auto p : {3u, 5u, 7u, 11u, 13u, 17u, 19u}) want *= p;
  for (auto p : {23u, 29u, 31u, 37u, 41u, 43u, 47u}) want *= p;
  const UInt got = cfg.coverage();
  const unsigned __int128 floor = 9'800'000'000'000'000'000ull;
  return {got == want && got > floor, "32 P1 P2 = " + to_string(static_cast<Int>(got)) + " > 9800000000000000000"};
}

Verdict criterion5() {
  std::vector<std::int64_t> ds{4, 20, 24, 163};
  std::vector<std::int64_t> extra{3, 7, 8, 15, 23, 47, 71, 84, 120, 260, 420, 795, 1411, 2563, 5460, 9995};
  ds.insert(ds.end(), extra.begin(), extra.end());
  std::size_t ok = 0;
  double worst = 0;
  for (auto n : ds) {
    const auto r = analytic::verify_identity(forms::Discriminant(-n));
    const double gap = abs(r.lhs_formula - r.lhs_series).convert_to<double>() / abs(r.lhs_formula).convert_to<double>();
    worst = std::max(worst, gap);
    if (r.verdict && gap <= 1e-8) ++ok;
  }
  return {ok == ds.size() && ds.size() >= 20,
          std::to_string(ok) + "/" + std::to_string(ds.size()) + " pairs verified, worst relative gap " + fmt(worst, 3)};
}

// Exact comparison falls back to 60-digit arithmetic whenever the double margin is thin.
template <class Exact, class Rhs>
bool at_most(Exact lhs, double rhs_double, const Rhs& rhs_real) {
  const double l = static_cast<double>(lhs);
  if (l < rhs_double * (1 - 1e-9)) return true;
  return to_real(static_cast<Int>(lhs)) <= rhs_real();
}

Verdict criterion6() {
  const auto t0 = Clock::now();
  std::uint64_t violations = 0, checks = 0;

  const std::uint32_t N = 1'000'000;
  const auto spf = oracle::spf_table(N);
  for (std::uint32_t n = 3; n <= N; ++n) {
    const auto [w, s] = oracle::omega_sigma(n, spf);
    const double x = n, L = std::log(x), LL = std::log(L);
    const double omega_d = L / LL + 1.45743 * L / (LL * LL);
    const double sigma_d = x * (std::exp(0.57721566490153286) * LL + 0.649 / LL);
    violations += !at_most(w, omega_d, [&] { return bounds::omega_rhs(Real(n)); });
    violations += !at_most(s, sigma_d, [&] { return bounds::sigma_rhs(Real(n)); });
    checks += 2;
  }

  std::vector<bool> composite(1'600'000, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i < composite.size(); ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j < composite.size(); j += i) composite[j] = true;
  }
  for (std::uint64_t n = 6; n <= 100'000; ++n) {
    const double x = n;
    violations += !at_most(primes[n - 1], x * (std::log(x) + std::log(std::log(x))),
                           [&] { return bounds::pn_rhs(Real(n)); });
    ++checks;
  }

  std::uint64_t pell_cross = 0;
  for (std::uint64_t k = 5; k <= 10'000; k += 4) {
    if (!oracle::squarefree(k)) continue;
    const auto u = analytic::fundamental_unit(k);
    if (u.x * u.x - BigInt(k) * u.y * u.y != 4 * u.norm) ++violations;
    const auto [px, py] = oracle::pell4(k, 200'000);
    if (px != 0) {
      ++pell_cross;
      if (BigInt(px) != u.x || BigInt(py) != u.y) ++violations;
    }
    const double R = u.log_epsilon.convert_to<double>();
    double L = 0;
    for (std::uint64_t a = 1; a < k; ++a) {
      const int chi = oracle::kronecker(static_cast<std::int64_t>(k), static_cast<std::int64_t>(a));
      if (chi != 0) L -= chi * std::log(std::sin(std::numbers::pi * a / k));
    }
    const double sk = std::sqrt(static_cast<double>(k));
    L /= sk;
    const auto h = static_cast<std::uint64_t>(std::llround(sk * L / (2 * R)));
    if (h != analytic::real_class_number(k)) ++violations;
    if (static_cast<double>(h) > sk / 2) ++violations;
    if (!(u.log_epsilon <= sqrt(Real(k)) * (log(Real(k)) / 2 + 1))) ++violations;
    checks += 4;
  }

  const std::int64_t M = 10'000'000;
  const auto table = forms::census_table(M, true);
  for (std::int64_t n = 3; n <= M; ++n) {
    if (!oracle::valid_magnitude(n)) continue;
    const double x = n;
    const double rhs = std::sqrt(x) * (2 + std::log(x)) / std::numbers::pi;
    if (!(table[n].class_number < rhs * (1 - 1e-9))) {
      const Real r = sqrt(Real(n)) * (2 + log(Real(n))) / real_pi();
      if (!(Real(table[n].class_number) < r)) ++violations;
    }
    ++checks;
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 900,
          std::to_string(violations) + " violations in " + std::to_string(checks) + " checks (" +
              std::to_string(pell_cross) + " units cross-checked by Pell search), " + fmt(secs, 3) + " s"};
}

Verdict criterion7() {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  const Dec abs_d("9.8e18");
  const Dec L = log(abs_d), LL = log(L);
  const Dec logB = log(Dec("8.12")) + Dec(3) / 2 * L + 6 * LL + log(LL);
  const Dec S1 = 2 + Dec("1.69") * L * LL;
  const Dec S0 = 2 + logB;
  const Dec T = 4 + S0 / 2 + log(Dec(64) * (S1 / 2) * 1);
  const Dec independent = Dec("5e8") * 4096 * (S1 / 2) * 1 * T * T;

  const Real real_abs_d("9.8e18");
  const Real E = bounds::waldschmidt_lower(bounds::reference_instantiation(real_abs_d));
  const Real simplified = bounds::simplified_exponent(real_abs_d);
  const auto fin = bounds::final_inequality_check(real_abs_d);
  const double e = E.convert_to<double>(), ind = independent.convert_to<double>();
  const double rel = std::abs(e - ind) / ind;
  return {rel <= 0.05 && E <= simplified && fin.violated,
          "E = " + fmt(e, 6) + " (independent " + fmt(ind, 6) + ", rel " + fmt(rel, 2) + "), simplified exponent " +
              fmt(simplified.convert_to<double>(), 4) + ", final inequality lhs " + fmt(fin.lhs.convert_to<double>(), 5) +
              " vs rhs " + fmt(fin.rhs.convert_to<double>(), 5) + (fin.violated ? " violated" : " holds")};
}

Verdict criterion8() {
  sieve::SieveConfig cfg;
  cfg.p1_primes = {3, 5, 7, 11, 13};
  cfg.p2_primes = {17, 29, 43};
  cfg.sieve_lo_index = 16;
  cfg.sieve_hi_index = 169;
  cfg.limit = 10'000'000'000ull;
  cfg.small_cutoff = 4'072'324;  // 4 * 1009^2
  cfg.p2_tally = sieve::P2Tally::kAggregate;
  const sieve::SievePlan plan(cfg);
  const auto t0 = Clock::now();
  const auto out = sieve::run_sieve(plan, {.threads = 1});
  const double secs = seconds_since(t0);
  const double decided = static_cast<double>(out.tested_count) / secs;
  const double inner = static_cast<double>(out.bits_visited) / secs;
  return {std::min(decided, inner) >= 5e7,
          fmt(decided, 4) + " candidates decided/s and " + fmt(inner, 4) + " bit-table candidate tests/s on one worker (" +
              std::to_string(out.tested_count) + " candidates, " + std::to_string(out.bits_visited) +
              " bits in the inner loop, " + fmt(secs, 4) + " s, " + std::to_string(out.survivors.size()) +
              " survivors), target 5e7",
          true};
}

Verdict criterion9() {
  const auto cfg = small_config(1'000'000);
  auto render = [](const sieve::SieveOutcome& o) { return sieve::survivors_csv(o.survivors) + report::dump(report::summary_json(o)); };
  const std::string base = render(sieve::run_sieve(cfg, {.threads = 1}));
  const bool t4 = render(sieve::run_sieve(cfg, {.threads = 4})) == base;
  const bool t16 = render(sieve::run_sieve(cfg, {.threads = 16})) == base;

  const fs::path ckpt = fs::temp_directory_path() / "idoneal_acceptance_ckpt.json";
  fs::remove(ckpt);
  fs::remove(ckpt.string() + ".survivors");
  sieve::RunOptions opts{.threads = 4, .checkpoint = ckpt, .block_size = 1, .max_blocks = 3};
  const auto partial = sieve::run_sieve(cfg, opts);
  opts.max_blocks.reset();
  opts.threads = 16;
  const bool resumed = !partial.complete && render(sieve::run_sieve(cfg, opts)) == base;
  fs::remove(ckpt);
  fs::remove(ckpt.string() + ".survivors");

  const auto [c1, o1] = run_cli("sieve --limit 1e6 --threads 1 --out - -q --p1 3,5,7 --p2 11,13,17 --sieve-primes 8..25 --small-cutoff 40000");
  const auto [c16, o16] = run_cli("sieve --limit 1e6 --threads 16 --out - -q --p1 3,5,7 --p2 11,13,17 --sieve-primes 8..25 --small-cutoff 40000");
  const bool cli = c1 == 0 && c16 == 0 && o1 == o16 && !o1.empty();
  return {t4 && t16 && resumed && cli, std::string("4 workers ") + (t4 ? "identical" : "differ") + ", 16 workers " +
                                           (t16 ? "identical" : "differ") + ", interrupt and resume " +
                                           (resumed ? "identical" : "differs") + ", cli " + (cli ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 0x1d0ea1;
  std::vector<int> only;
  app.add_option("--seed", seed, "Seed for sampled criteria")->capture_default_str();
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);
  oracle::rng().seed(seed);

  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const char* status = v.pass ? "PASS" : (v.soft ? "FAIL (soft target)" : "FAIL");
    std::cout << "criterion " << id << ": " << status << " | " << v.detail << " [" << fmt(seconds_since(t0), 3)
              << " s]" << std::endl;
    if (!v.pass && !v.soft) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
