#include "core/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "core/errors.hpp"

namespace idoneal::report {

using nlohmann::json;

json integer_json(Int v) {
  if (v >= 0 && v <= Int(UINT64_MAX)) return static_cast<std::uint64_t>(v);
  if (v < 0 && v >= Int(INT64_MIN)) return static_cast<std::int64_t>(v);
  return to_string(v);
}

namespace {

json integer(Int v) { return integer_json(v); }

json integer(const BigInt& v) {
  if (v >= 0 && v <= BigInt(UINT64_MAX)) return v.convert_to<std::uint64_t>();
  if (v < 0 && v >= BigInt(INT64_MIN)) return v.convert_to<std::int64_t>();
  return v.str();
}

json real(const Real& v, int digits) { return to_display_double(v, digits); }

json rational(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1 ? boost::multiprecision::numerator(q).str() : q.str();
}

json bool_or_null(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const forms::QuadForm& f) { return json::array({integer(f.a), integer(f.b), integer(f.c)}); }

json to_json(const forms::GenusReport& r) {
  json forms_array = json::array();
  for (const auto& f : r.forms) forms_array.push_back(to_json(f));
  return json{{"d", integer(r.d.value())},
              {"class_number", r.class_number},
              {"genus_count", r.genus_count ? json(*r.genus_count) : json(nullptr)},
              {"forms", forms_array},
              {"ambiguous_count", r.ambiguous_count},
              {"one_class_per_genus", r.one_class_per_genus},
              {"is_fundamental", r.is_fundamental}};
}

json to_json(const analytic::IdentityReport& r, int digits) {
  const auto& l = r.l;
  return json{
      {"d", integer(r.d.value())},
      {"k", r.aux.k},
      {"q1", r.aux.q1},
      {"q2", r.aux.q2},
      {"lhs_formula", real(r.lhs_formula, digits)},
      {"lhs_series", real(r.lhs_series, digits)},
      {"series_relative_gap", real(r.series_gap, 3)},
      {"principal", real(r.principal, digits)},
      {"Q", rational(r.q)},
      {"chi_sum", rational(r.c.sum)},
      {"C", r.c.c ? integer(*r.c.c) : json(nullptr)},
      {"a0_sum", real(r.a0_sum, digits)},
      {"remainder_bound", real(r.remainder_bound, digits)},
      {"residual", real(abs(r.lhs_formula - r.principal - r.a0_sum), digits)},
      {"verdict", r.verdict},
      {"L1", json{{"formula", real(l.l1_formula, digits)},
                  {"series", real(l.l1_series, digits)},
                  {"class_number_k", l.class_number_k},
                  {"narrow_class_number_k", l.narrow_class_number_k},
                  {"unit_x", integer(l.unit.x)},
                  {"unit_y", integer(l.unit.y)},
                  {"unit_norm", l.unit.norm},
                  {"log_epsilon", real(l.unit.log_epsilon, digits)}}},
      {"L2", json{{"formula", real(l.l2_formula, digits)},
                  {"series", real(l.l2_series, digits)},
                  {"class_number_kd", l.class_number_kd},
                  {"series_terms", l.l2_terms},
                  {"tail_bound", real(l.l2_tail_bound, 3)}}}};
}

namespace {

json kbounds_json(const bounds::KBoundsReport& l, int digits) {
  return json{{"log_d", real(l.log_d, digits)},
              {"loglog_d", real(l.loglog_d, digits)},
              {"q_bound", real(l.q_bound, digits)},
              {"k_bound", real(l.k_bound, digits)},
              {"hk_bound", real(l.hk_bound, digits)},
              {"regulator_bound", real(l.regulator_bound, digits)},
              {"hkd_bound", real(l.hkd_bound, digits)},
              {"hkd_bound_statement", real(l.hkd_bound_statement, digits)},
              {"heightQ_bound", real(l.heightQ_bound, digits)},
              {"heightQ_bound_statement", real(l.heightQ_bound_statement, digits)},
              {"c_bound", real(l.c_bound, digits)},
              {"omega_index", l.omega_index},
              {"q_chain", real(l.q_chain, digits)},
              {"q_chain_holds", l.q_chain_holds},
              {"regulator_chain", real(l.regulator_chain, digits)},
              {"regulator_chain_holds", l.regulator_chain_holds},
              {"hkd_chain", real(l.hkd_chain, digits)},
              {"hkd_chain_holds", l.hkd_chain_holds}};
}

json hypotheses_json(const bounds::HypothesisChecks& h) {
  return json{{"abs_d", integer(h.abs_d)},
              {"P", h.P},
              {"p_is_prime", h.p_is_prime},
              {"p_large", h.p_large},
              {"divisor_gap", h.divisor_gap},
              {"no_form_aba", bool_or_null(h.no_form_aba)},
              {"minima_divide_d", bool_or_null(h.minima_divide_d)},
              {"omega", h.omega},
              {"omega_within_bound", bool_or_null(h.omega_within_bound)}};
}

}  // namespace

json to_json(const bounds::BoundReport& r, int digits) {
  json out;
  out["abs_d"] = real(r.abs_d, digits);
  out["d"] = r.d_exact ? integer(*r.d_exact) : json(nullptr);
  out["P"] = r.P ? json(*r.P) : json(nullptr);
  const auto& l = r.kbounds;
  out["kbounds"] = kbounds_json(l, digits);
  out["k_bound"] = real(l.k_bound, digits);
  out["hk_bound"] = real(l.hk_bound, digits);
  out["regulator_bound"] = real(l.regulator_bound, digits);
  out["hkd_bound"] = real(l.hkd_bound, digits);
  out["heightQ_bound"] = real(l.heightQ_bound, digits);
  out["c_bound"] = real(l.c_bound, digits);
  out["omega_bound"] = real(r.omega_bound, digits);
  out["omega_robin"] = real(r.omega_robin, digits);
  out["sigma_bound"] = real(r.sigma_bound, digits);
  out["pn_bound"] = real(r.pn_bound, digits);
  out["B_height"] = real(r.B_height, digits);
  out["log_B"] = real(r.waldschmidt.log_B, digits);
  const auto& w = r.waldschmidt;
  out["waldschmidt"] = json{{"D0", real(w.D0, digits)},     {"D1", real(w.D1, digits)},
                            {"D2", real(w.D2, digits)},     {"D", real(w.D, digits)},
                            {"log_A1", real(w.log_A1, digits)}, {"log_A2", real(w.log_A2, digits)},
                            {"S0", real(w.S0(), digits)},   {"S1", real(w.S1(), digits)},
                            {"S2", real(w.S2(), digits)},   {"T", real(r.waldschmidt_T, digits)}};
  out["waldschmidt_exponent"] = real(r.waldschmidt_exponent, digits);
  out["waldschmidt_display_exponent"] = real(r.waldschmidt_display_exponent, digits);
  out["paper_exponent"] = real(r.simplified_exponent, digits);
  out["exponent_within_simplified"] = r.exponent_within_simplified;
  out["threshold_P"] = real(r.threshold_P, digits);
  if (r.final_inequality) {
    const auto& f = *r.final_inequality;
    out["final_inequality"] = json{{"C", real(f.C, digits)},
                                   {"lhs", real(f.lhs, digits)},
                                   {"rhs", real(f.rhs, digits)},
                                   {"violated", f.violated}};
    out["inequality_violated"] = f.violated;
  } else {
    out["final_inequality"] = nullptr;
    out["inequality_violated"] = nullptr;
  }
  json contra = json::array();
  for (const auto& c : r.contradictions) {
    contra.push_back(json{{"name", c.name},
                          {"upper_exponent", real(c.upper_exponent, digits)},
                          {"lower_exponent", real(c.lower_exponent, digits)},
                          {"contradiction", c.contradiction}});
  }
  out["contradictions"] = contra;
  json disc = json::array();
  for (const auto& d : r.discrepancies) {
    json values = json::object();
    for (const auto& [name, v] : d.values) values[name] = real(v, digits);
    disc.push_back(json{{"name", d.name}, {"note", d.note}, {"values", values}});
  }
  out["discrepancies"] = disc;
  out["hypotheses"] = r.hypotheses ? hypotheses_json(*r.hypotheses) : json(nullptr);
  return out;
}

json to_json(const bounds::ThresholdReport& r, int digits) {
  return json{{"abs_d", real(r.abs_d, digits)},
              {"log_d", real(r.log_d, digits)},
              {"loglog_d", real(r.loglog_d, digits)},
              {"threshold_P", real(r.threshold_P, digits)}};
}

json summary_json(const sieve::SieveOutcome& o) {
  json tally = json::object();
  for (const auto& [p, n] : o.per_prime_tally) tally[std::to_string(p)] = n;
  std::uint64_t direct = 0;
  for (const auto& row : o.survivors) direct += row.passed_sieve ? 0 : 1;
  return json{{"config_hash", o.config_hash},
              {"survivor_count", o.survivors.size()},
              {"direct_count", direct},
              {"eliminated_count", o.eliminated_count},
              {"tested_count", o.tested_count},
              {"per_prime_tally", tally},
              {"p2_uncredited", o.p2_uncredited},
              {"words_visited", o.words_visited},
              {"bits_visited", o.bits_visited},
              {"outer_index", o.outer_index},
              {"outer_total", o.outer_total},
              {"complete", o.complete}};
}

namespace {

// nlohmann's float printer is not always shortest; to_chars is.
void emit(const json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) { out += "null"; return; }
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      std::string text(buf, res.ptr);
      if (text.find_first_of(".en") == std::string::npos) text += ".0";
      out += text;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  emit(j, 0, out);
  return out + "\n";
}

void write_report(const std::string& content, const std::filesystem::path& path) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace idoneal::report
