#include "idoneal/idoneal.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/analytic.hpp"
#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/forms.hpp"
#include "core/report.hpp"
#include "core/sieve.hpp"
#include "core/survivor.hpp"

using namespace idoneal;

struct idn_sieve_config {
  sieve::SieveConfig config;
};

struct idn_sieve_outcome {
  sieve::SieveOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
idn_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return IDN_OK;
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return IDN_ERR_INVALID_ARGUMENT;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return IDN_ERR_DOMAIN;
  } catch (const TooLargeError& e) {
    g_last_error = e.what();
    return IDN_ERR_TOO_LARGE;
  } catch (const ConfigError& e) {
    g_last_error = e.what();
    return IDN_ERR_CONFIG;
  } catch (const CheckpointMismatch& e) {
    g_last_error = e.what();
    return IDN_ERR_CHECKPOINT_MISMATCH;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return IDN_ERR_IO;
  } catch (const VerificationError& e) {
    g_last_error = e.what();
    return IDN_ERR_VERIFICATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IDN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return IDN_ERR_INTERNAL;
  }
}

template <class T>
void need(T* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Int parse(const char* text, const char* name) {
  need(text, name);
  try {
    return parse_int(text);
  } catch (const DomainError& e) {
    throw InvalidArgument(std::string(name) + ": " + e.what());
  }
}

forms::Discriminant parse_disc(const char* text) { return forms::Discriminant(parse(text, "d")); }

int display_digits(int digits) {
  if (digits == 0) return report::kDefaultDisplayDigits;
  if (digits < 1 || digits > static_cast<int>(kWorkingDigits)) {
    throw InvalidArgument("digits must be between 1 and " + std::to_string(kWorkingDigits));
  }
  return digits;
}

forms::QuadForm form_of(const int64_t f[3]) { return forms::QuadForm{f[0], f[1], f[2]}; }

// Accepts "20", "-20" or "9.8e18"; exact when the text is an integer.
struct Magnitude {
  Real value;
  std::optional<Int> exact;
};

Magnitude parse_magnitude(const char* text) {
  need(text, "abs_d");
  std::string s(text);
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.erase(0, 1);
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
    const Int v = parse(s.c_str(), "abs_d");
    return {to_real(v), v};
  }
  try {
    return {parse_real(s), std::nullopt};
  } catch (const DomainError& e) {
    throw InvalidArgument(e.what());
  }
}

}  // namespace

extern "C" {

const char* idn_last_error(void) { return g_last_error.c_str(); }
const char* idn_version(void) { return IDN_VERSION_STRING; }
void idn_string_free(char* s) { std::free(s); }
void idn_u64_array_free(uint64_t* a) { std::free(a); }

idn_status idn_class_number(const char* d, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = forms::class_number(parse_disc(d));
  });
}

idn_status idn_genus_report_json(const char* d, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    *out_json = dup(report::dump(report::to_json(forms::genus_report(parse_disc(d)))));
  });
}

idn_status idn_reduce(const int64_t form[3], int64_t out[3]) {
  return guarded([&] {
    need(form, "form");
    need(out, "out");
    const auto r = forms::reduce(form_of(form));
    for (Int v : {r.a, r.b, r.c}) {
      if (v > INT64_MAX || v < INT64_MIN) throw TooLargeError("reduced form exceeds 64 bits");
    }
    out[0] = static_cast<int64_t>(r.a);
    out[1] = static_cast<int64_t>(r.b);
    out[2] = static_cast<int64_t>(r.c);
  });
}

idn_status idn_is_reduced(const int64_t form[3], int* out) {
  return guarded([&] {
    need(form, "form");
    need(out, "out");
    *out = forms::is_reduced(form_of(form)) ? 1 : 0;
  });
}

idn_status idn_is_ambiguous(const int64_t form[3], int* out) {
  return guarded([&] {
    need(form, "form");
    need(out, "out");
    *out = forms::is_ambiguous(form_of(form)) ? 1 : 0;
  });
}

idn_status idn_idoneal_scan(uint64_t max_n, uint64_t** out, size_t* count) {
  return guarded([&] {
    need(out, "out");
    need(count, "count");
    const auto values = survivor::idoneal_scan(max_n);
    auto* buf = static_cast<uint64_t*>(std::malloc(std::max<std::size_t>(1, values.size()) * sizeof(uint64_t)));
    if (buf == nullptr) throw std::bad_alloc();
    std::copy(values.begin(), values.end(), buf);
    *out = buf;
    *count = values.size();
  });
}

idn_status idn_kronecker(const char* top, const char* bottom, int* out) {
  return guarded([&] {
    need(out, "out");
    *out = analytic::kronecker(parse(top, "top"), parse(bottom, "bottom"));
  });
}

idn_status idn_crt(uint64_t r1, uint64_t m1, uint64_t r2, uint64_t m2, char** out) {
  return guarded([&] {
    need(out, "out");
    if (m1 == 0 || m2 == 0) throw DomainError("moduli must be positive");
    *out = dup(to_string(sieve::crt_combine(r1 % m1, m1, r2 % m2, m2)));
  });
}

idn_status idn_sha256_hex(const void* data, size_t size, char** out) {
  return guarded([&] {
    need(out, "out");
    if (size > 0) need(data, "data");
    *out = dup(sieve::sha256_hex(std::string(static_cast<const char*>(data), size)));
  });
}

idn_status idn_choose_k(const char* d, uint64_t out[3]) {
  return guarded([&] {
    need(out, "out");
    const auto aux = analytic::choose_k(parse_disc(d));
    out[0] = aux.q1;
    out[1] = aux.q2;
    out[2] = aux.k;
  });
}

idn_status idn_identity_json(const char* d, uint64_t k, int digits, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    const int shown = display_digits(digits);
    const auto disc = parse_disc(d);
    const auto aux = k == 0 ? analytic::choose_k(disc) : analytic::aux_from_k(disc, k);
    *out_json = dup(report::dump(report::to_json(analytic::verify_identity(disc, aux), shown)));
  });
}

idn_status idn_bounds_json(const char* abs_d, uint64_t P, int digits, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    const int shown = display_digits(digits);
    const Magnitude m = parse_magnitude(abs_d);
    bounds::BoundReport r;
    if (m.exact) {
      r = bounds::bound_report(-*m.exact, P == 0 ? std::nullopt : std::optional<std::uint64_t>(P));
    } else {
      if (P != 0) throw InvalidArgument("hypothesis checks need an exact integer d");
      r = bounds::bound_report(m.value);
    }
    *out_json = dup(report::dump(report::to_json(r, shown)));
  });
}

idn_status idn_threshold_json(const char* abs_d, int digits, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    const int shown = display_digits(digits);
    *out_json = dup(report::dump(report::to_json(bounds::threshold_report(parse_magnitude(abs_d).value), shown)));
  });
}

idn_status idn_sieve_config_new(idn_sieve_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new idn_sieve_config{};
  });
}

void idn_sieve_config_free(idn_sieve_config* cfg) { delete cfg; }

idn_status idn_sieve_config_set_p1(idn_sieve_config* cfg, const uint32_t* primes, size_t count) {
  return guarded([&] {
    need(cfg, "cfg");
    if (count > 0) need(primes, "primes");
    cfg->config.p1_primes.assign(primes, primes + count);
  });
}

idn_status idn_sieve_config_set_p2(idn_sieve_config* cfg, const uint32_t* primes, size_t count) {
  return guarded([&] {
    need(cfg, "cfg");
    if (count > 0) need(primes, "primes");
    cfg->config.p2_primes.assign(primes, primes + count);
  });
}

idn_status idn_sieve_config_set_sieve_range(idn_sieve_config* cfg, uint32_t lo_index, uint32_t hi_index) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->config.sieve_lo_index = lo_index;
    cfg->config.sieve_hi_index = hi_index;
  });
}

idn_status idn_sieve_config_set_limit(idn_sieve_config* cfg, uint64_t limit) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->config.limit = limit;
  });
}

idn_status idn_sieve_config_set_small_cutoff(idn_sieve_config* cfg, uint64_t cutoff) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->config.small_cutoff = cutoff;
  });
}

idn_status idn_sieve_config_set_cadence(idn_sieve_config* cfg, uint32_t cadence) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->config.cadence = cadence;
  });
}

idn_status idn_sieve_config_set_p2_tally(idn_sieve_config* cfg, idn_p2_tally mode) {
  return guarded([&] {
    need(cfg, "cfg");
    switch (mode) {
      case IDN_P2_TALLY_AUTO: cfg->config.p2_tally = sieve::P2Tally::kAuto; break;
      case IDN_P2_TALLY_EXACT: cfg->config.p2_tally = sieve::P2Tally::kExact; break;
      case IDN_P2_TALLY_AGGREGATE: cfg->config.p2_tally = sieve::P2Tally::kAggregate; break;
      default: throw InvalidArgument("unknown p2 tally mode");
    }
  });
}

idn_status idn_sieve_config_validate(const idn_sieve_config* cfg) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->config.validate();
  });
}

idn_status idn_sieve_config_json(const idn_sieve_config* cfg, char** out_json) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out_json, "out_json");
    *out_json = dup(cfg->config.canonical_json());
  });
}

idn_status idn_sieve_config_hash(const idn_sieve_config* cfg, char** out_hex) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out_hex, "out_hex");
    *out_hex = dup(cfg->config.hash());
  });
}

idn_status idn_sieve_config_coverage(const idn_sieve_config* cfg, char** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = dup(to_string(cfg->config.coverage()));
  });
}

void idn_run_options_init(idn_run_options* opts) {
  if (opts != nullptr) *opts = idn_run_options{1, nullptr, 0, 0, nullptr, nullptr};
}

idn_status idn_sieve_run(const idn_sieve_config* cfg, const idn_run_options* opts, idn_sieve_outcome** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    sieve::RunOptions run;
    if (opts != nullptr) {
      run.threads = opts->threads == 0 ? 1 : opts->threads;
      if (opts->checkpoint_path != nullptr) run.checkpoint = std::filesystem::path(opts->checkpoint_path);
      run.block_size = opts->block_size;
      if (opts->max_blocks != 0) run.max_blocks = opts->max_blocks;
      if (opts->progress != nullptr) {
        const idn_progress_fn fn = opts->progress;
        void* user = opts->progress_user;
        run.progress = [fn, user](const sieve::Progress& p) {
          fn(p.outer_done, p.outer_total, p.sieve_survivors, user);
        };
      }
    }
    auto result = std::make_unique<idn_sieve_outcome>();
    result->outcome = sieve::run_sieve(cfg->config, run);
    *out = result.release();
  });
}

void idn_sieve_outcome_free(idn_sieve_outcome* o) { delete o; }

int idn_sieve_outcome_complete(const idn_sieve_outcome* o) { return o != nullptr && o->outcome.complete ? 1 : 0; }

size_t idn_sieve_outcome_survivor_count(const idn_sieve_outcome* o) {
  return o == nullptr ? 0 : o->outcome.survivors.size();
}

idn_status idn_sieve_outcome_survivors(const idn_sieve_outcome* o, uint64_t* abs_d, uint8_t* passed_sieve) {
  return guarded([&] {
    need(o, "outcome");
    for (std::size_t i = 0; i < o->outcome.survivors.size(); ++i) {
      if (abs_d != nullptr) abs_d[i] = o->outcome.survivors[i].abs_d;
      if (passed_sieve != nullptr) passed_sieve[i] = o->outcome.survivors[i].passed_sieve ? 1 : 0;
    }
  });
}

idn_status idn_sieve_outcome_summary_json(const idn_sieve_outcome* o, char** out_json) {
  return guarded([&] {
    need(o, "outcome");
    need(out_json, "out_json");
    *out_json = dup(report::dump(report::summary_json(o->outcome)));
  });
}

idn_status idn_sieve_outcome_csv(const idn_sieve_outcome* o, char** out_csv) {
  return guarded([&] {
    need(o, "outcome");
    need(out_csv, "out_csv");
    *out_csv = dup(sieve::survivors_csv(o->outcome.survivors));
  });
}

idn_status idn_sieve_outcome_check_json(const idn_sieve_outcome* o, int use_prefilter, char** out_json) {
  return guarded([&] {
    need(o, "outcome");
    need(out_json, "out_json");
    if (!o->outcome.complete) throw DomainError("sieve run is incomplete");
    const auto v = survivor::check_survivors(o->outcome, use_prefilter != 0);
    nlohmann::json j{{"checked", v.checked},
                     {"prefiltered", v.prefiltered},
                     {"one_class_per_genus", v.one_class_per_genus},
                     {"one_class_per_genus_count", v.one_class_per_genus.size()},
                     {"fundamental_one_class_per_genus", v.fundamental_one_class_per_genus},
                     {"fundamental_one_class_per_genus_count", v.fundamental_one_class_per_genus.size()}};
    *out_json = dup(report::dump(j));
  });
}

idn_status idn_witness_json(const char* d, uint32_t p, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    const auto disc = parse_disc(d);
    const auto w = sieve::witness_form(disc, p);
    nlohmann::json j{{"d", report::integer_json(disc.value())},
                     {"p", p},
                     {"form", report::to_json(w.form)},
                     {"reduced", forms::is_reduced(w.form)},
                     {"ambiguous", forms::is_reduced(w.form) && forms::is_ambiguous(w.form)},
                     {"proper", w.proper}};
    *out_json = dup(report::dump(j));
  });
}

}  // extern "C"
