// idoneal: command-line front end over the C API.

#include <idoneal/idoneal.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

enum Exit : int { kOk = 0, kUsage = 1, kCheckpoint = 2, kVerification = 3, kIncomplete = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(idn_status s) {
  switch (s) {
    case IDN_OK: return kOk;
    case IDN_ERR_CHECKPOINT_MISMATCH: return kCheckpoint;
    case IDN_ERR_VERIFICATION:
    case IDN_ERR_INTERNAL: return kVerification;
    default: return kUsage;
  }
}

void check(idn_status s) {
  if (s != IDN_OK) throw Failure{exit_for(s), idn_last_error()};
}

struct CString {
  char* p = nullptr;
  ~CString() { idn_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

std::string sha256(const std::string& text) {
  CString out;
  check(idn_sha256_hex(text.data(), text.size(), &out.p));
  return out.str();
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Destination for reports. In replay mode nothing is written; only digests are kept.
class Sink {
 public:
  explicit Sink(bool dry) : dry_(dry) {}

  void write(const std::string& path, const std::string& content) {
    outputs_.push_back({{"path", path}, {"sha256", sha256(content)}, {"bytes", content.size()}});
    if (dry_) return;
    if (path == "-") {
      std::cout << content << std::flush;
      return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kUsage, "cannot open " + path + " for writing"};
    out << content;
    out.close();
    if (!out) throw Failure{kUsage, "failed writing " + path};
  }

  const json& outputs() const { return outputs_; }
  bool dry() const { return dry_; }

 private:
  bool dry_;
  json outputs_ = json::array();
};

struct RunRecord {
  json config = json::object();
  std::string config_hash;
  json summary = json::object();
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// "1000000", "1e6" or "1_000_000".
std::uint64_t parse_count(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != '_') s.push_back(c);
  }
  std::uint64_t mant = 0;
  std::size_t i = 0;
  if (s.empty()) throw CLI::ValidationError("empty number");
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    if (mant > (UINT64_MAX - 9) / 10) throw CLI::ValidationError("number too large: " + text);
    mant = mant * 10 + static_cast<unsigned>(s[i] - '0');
  }
  if (i == 0) throw CLI::ValidationError("not a number: " + text);
  if (i == s.size()) return mant;
  if (s[i] != 'e' && s[i] != 'E') throw CLI::ValidationError("not a number: " + text);
  ++i;
  if (i == s.size()) throw CLI::ValidationError("not a number: " + text);
  unsigned exp = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])) || exp > 30) throw CLI::ValidationError("not a number: " + text);
    exp = exp * 10 + static_cast<unsigned>(s[i] - '0');
  }
  for (unsigned k = 0; k < exp; ++k) {
    if (mant > UINT64_MAX / 10) throw CLI::ValidationError("number too large: " + text);
    mant *= 10;
  }
  return mant;
}

unsigned default_threads() {
  if (const char* env = std::getenv("IDONEAL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct SieveArgs {
  std::string limit = "1000000";
  unsigned threads = 0;
  std::string checkpoint;
  std::string out = "-";
  std::string summary;
  std::vector<std::uint32_t> p1;
  std::vector<std::uint32_t> p2;
  std::string sieve_primes;
  std::string small_cutoff;
  std::uint32_t cadence = 0;
  std::string p2_tally = "auto";
  std::uint64_t block_size = 0;
  std::uint64_t max_blocks = 0;
  bool full_check = false;
  bool no_prefilter = false;
  bool quiet = false;
};

struct ConfigHandle {
  idn_sieve_config* p = nullptr;
  ~ConfigHandle() { idn_sieve_config_free(p); }
};

struct OutcomeHandle {
  idn_sieve_outcome* p = nullptr;
  ~OutcomeHandle() { idn_sieve_outcome_free(p); }
};

void progress_line(std::uint64_t done, std::uint64_t total, std::uint64_t survivors, void*) {
  std::cerr << "\rsieve: " << done << "/" << total << " outer blocks, " << survivors << " survivors" << std::flush;
  if (done == total) std::cerr << "\n";
}

int run_sieve_cmd(const SieveArgs& a, Sink& sink, RunRecord& rec) {
  ConfigHandle cfg;
  check(idn_sieve_config_new(&cfg.p));
  if (!a.p1.empty()) check(idn_sieve_config_set_p1(cfg.p, a.p1.data(), a.p1.size()));
  if (!a.p2.empty()) check(idn_sieve_config_set_p2(cfg.p, a.p2.data(), a.p2.size()));
  if (!a.sieve_primes.empty()) {
    const auto dots = a.sieve_primes.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--sieve-primes expects LO..HI");
    const auto lo = parse_count(a.sieve_primes.substr(0, dots));
    const auto hi = parse_count(a.sieve_primes.substr(dots + 2));
    if (lo > UINT32_MAX || hi > UINT32_MAX) throw CLI::ValidationError("--sieve-primes index too large");
    check(idn_sieve_config_set_sieve_range(cfg.p, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)));
  }
  check(idn_sieve_config_set_limit(cfg.p, parse_count(a.limit)));
  if (!a.small_cutoff.empty()) check(idn_sieve_config_set_small_cutoff(cfg.p, parse_count(a.small_cutoff)));
  if (a.cadence != 0) check(idn_sieve_config_set_cadence(cfg.p, a.cadence));
  idn_p2_tally tally = IDN_P2_TALLY_AUTO;
  if (a.p2_tally == "exact") tally = IDN_P2_TALLY_EXACT;
  else if (a.p2_tally == "aggregate") tally = IDN_P2_TALLY_AGGREGATE;
  check(idn_sieve_config_set_p2_tally(cfg.p, tally));
  check(idn_sieve_config_validate(cfg.p));

  CString cfg_json, hash;
  check(idn_sieve_config_json(cfg.p, &cfg_json.p));
  check(idn_sieve_config_hash(cfg.p, &hash.p));
  rec.config = json::parse(cfg_json.str());
  rec.config_hash = hash.str();

  idn_run_options opts;
  idn_run_options_init(&opts);
  opts.threads = a.threads == 0 ? default_threads() : a.threads;
  opts.checkpoint_path = a.checkpoint.empty() ? nullptr : a.checkpoint.c_str();
  opts.block_size = a.block_size;
  opts.max_blocks = a.max_blocks;
  if (!a.quiet && !sink.dry()) opts.progress = progress_line;

  OutcomeHandle outcome;
  check(idn_sieve_run(cfg.p, &opts, &outcome.p));

  CString summary;
  check(idn_sieve_outcome_summary_json(outcome.p, &summary.p));
  json s = json::parse(summary.str());
  const bool complete = idn_sieve_outcome_complete(outcome.p) != 0;
  if (complete && a.full_check) {
    CString verdicts;
    check(idn_sieve_outcome_check_json(outcome.p, a.no_prefilter ? 0 : 1, &verdicts.p));
    s["full_check"] = json::parse(verdicts.str());
  }
  rec.summary = s;
  if (complete) {
    CString csv;
    check(idn_sieve_outcome_csv(outcome.p, &csv.p));
    sink.write(a.out, csv.str());
  }
  if (!a.summary.empty()) {
    sink.write(a.summary, dump(s));
  } else if (a.out != "-") {
    sink.write("-", dump(s));
  }
  if (!complete) {
    std::cerr << "sieve stopped early at outer index " << s["outer_index"] << " of " << s["outer_total"]
              << "; rerun with the same --checkpoint to resume\n";
    return kIncomplete;
  }
  return kOk;
}

std::string report_from(idn_status s, CString& out) {
  check(s);
  return out.str();
}

// Sets up the subcommands on `app`; `action` is filled with the one to run.
struct Commands {
  SieveArgs sieve;
  std::string check_d;
  std::string idoneal_max_n = "2000";
  std::string idoneal_format = "json";
  std::string identity_d;
  std::uint64_t identity_k = 0;
  std::string bounds_d;
  std::uint64_t bounds_p = 0;
  std::string threshold_d;
  std::string witness_d;
  std::uint32_t witness_p = 0;
  std::string replay_manifest;
  int prec = 12;
  std::string out = "-";
  std::string manifest;
};

void add_output_options(CLI::App* sub, Commands& c, bool with_prec) {
  sub->add_option("--out,-o", c.out, "Report destination ('-' for standard output)");
  if (with_prec) {
    sub->add_option("--prec", c.prec, "Significant digits shown for real values")
        ->check(CLI::Range(1, 60))
        ->capture_default_str();
  }
}

int dispatch(CLI::App& app, Commands& c, Sink& sink, RunRecord& rec) {
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "sieve") return run_sieve_cmd(c.sieve, sink, rec);
  if (name == "check") {
    CString out;
    sink.write(c.out, report_from(idn_genus_report_json(c.check_d.c_str(), &out.p), out));
    rec.config = {{"d", c.check_d}};
    return kOk;
  }
  if (name == "idoneal") {
    const std::uint64_t max_n = parse_count(c.idoneal_max_n);
    std::uint64_t* values = nullptr;
    std::size_t count = 0;
    check(idn_idoneal_scan(max_n, &values, &count));
    std::vector<std::uint64_t> v(values, values + count);
    idn_u64_array_free(values);
    rec.config = {{"max_n", max_n}, {"format", c.idoneal_format}};
    rec.summary = {{"count", count}};
    if (c.idoneal_format == "csv") {
      std::string csv = "n\n";
      for (auto n : v) csv += std::to_string(n) + "\n";
      sink.write(c.out, csv);
    } else {
      sink.write(c.out, dump(json{{"max_n", max_n}, {"count", count}, {"numbers", v}}));
    }
    return kOk;
  }
  if (name == "identity") {
    CString out;
    sink.write(c.out, report_from(idn_identity_json(c.identity_d.c_str(), c.identity_k, c.prec, &out.p), out));
    rec.config = {{"d", c.identity_d}, {"k", c.identity_k}, {"prec", c.prec}};
    return kOk;
  }
  if (name == "bounds") {
    CString out;
    sink.write(c.out, report_from(idn_bounds_json(c.bounds_d.c_str(), c.bounds_p, c.prec, &out.p), out));
    rec.config = {{"d", c.bounds_d}, {"P", c.bounds_p}, {"prec", c.prec}};
    return kOk;
  }
  if (name == "threshold") {
    CString out;
    sink.write(c.out, report_from(idn_threshold_json(c.threshold_d.c_str(), c.prec, &out.p), out));
    rec.config = {{"d", c.threshold_d}, {"prec", c.prec}};
    return kOk;
  }
  if (name == "witness") {
    CString out;
    sink.write(c.out, report_from(idn_witness_json(c.witness_d.c_str(), c.witness_p, &out.p), out));
    rec.config = {{"d", c.witness_d}, {"p", c.witness_p}};
    return kOk;
  }
  throw Failure{kUsage, "unknown subcommand " + name};
}

void build(CLI::App& app, Commands& c) {
  app.require_subcommand(1);
  app.add_option("--manifest", c.manifest, "Write a run manifest (JSON) to this path");

  auto* s = app.add_subcommand("sieve", "Eliminate discriminants with the bit-packed sieve; writes survivor CSV");
  auto& a = c.sieve;
  s->add_option("--limit", a.limit, "Largest |d| to test (accepts 1e10 notation)")->capture_default_str();
  s->add_option("--threads", a.threads, "Worker threads (default: $IDONEAL_THREADS or all cores)");
  s->add_option("--checkpoint", a.checkpoint, "Checkpoint file; an existing one is resumed");
  s->add_option("--out,-o", a.out, "Survivor CSV destination")->capture_default_str();
  s->add_option("--summary", a.summary, "Summary JSON destination (default: stdout when --out is a file)");
  s->add_option("--p1", a.p1, "First-stage primes")->delimiter(',');
  s->add_option("--p2", a.p2, "Second-stage primes")->delimiter(',');
  s->add_option("--sieve-primes", a.sieve_primes, "Sieve prime indices LO..HI, 1-based (default 16..169)");
  s->add_option("--small-cutoff", a.small_cutoff, "|d| at or below this is checked directly");
  s->add_option("--cadence", a.cadence, "ORs between all-ones word checks");
  s->add_option("--p2-tally", a.p2_tally, "Second-stage tally mode")
      ->check(CLI::IsMember({"auto", "exact", "aggregate"}))
      ->capture_default_str();
  s->add_option("--block-size", a.block_size, "Outer indices per checkpoint block (0: automatic)");
  s->add_option("--max-blocks", a.max_blocks, "Stop after this many blocks (resume later)");
  s->add_flag("--full-check", a.full_check, "Run exact enumeration on every survivor");
  s->add_flag("--no-prefilter", a.no_prefilter, "Skip the residue prefilter during --full-check");
  s->add_flag("--quiet,-q", a.quiet, "No progress output");

  auto* chk = app.add_subcommand("check", "Genus report of one discriminant");
  chk->add_option("D", c.check_d, "Negative discriminant")->required();
  add_output_options(chk, c, false);

  auto* ido = app.add_subcommand("idoneal", "Idoneal numbers n <= max-n");
  ido->add_option("--max-n", c.idoneal_max_n, "Upper bound")->capture_default_str();
  ido->add_option("--format", c.idoneal_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  add_output_options(ido, c, false);

  auto* idt = app.add_subcommand("identity", "L-value identity check for (d, k)");
  idt->add_option("--d", c.identity_d, "Negative discriminant")->required();
  idt->add_option("--k", c.identity_k, "Auxiliary modulus (default: chosen from d)");
  add_output_options(idt, c, true);

  auto* bnd = app.add_subcommand("bounds", "Evaluate every explicit bound at |d|");
  bnd->add_option("--d", c.bounds_d, "Discriminant or |d| (e.g. 9.8e18)")->required();
  bnd->add_option("--P", c.bounds_p, "Prime factor of d for the hypothesis checks");
  add_output_options(bnd, c, true);

  auto* thr = app.add_subcommand("threshold", "Prime-factor threshold of the main theorem");
  thr->add_option("--d", c.threshold_d, "Discriminant or |d|")->required();
  add_output_options(thr, c, true);

  auto* wit = app.add_subcommand("witness", "Non-ambiguous reduced form (p, b, k) from a sieve prime");
  wit->add_option("--d", c.witness_d, "Negative discriminant")->required();
  wit->add_option("--p", c.witness_p, "Odd prime with d a nonzero square mod p")->required();
  add_output_options(wit, c, false);

  auto* rep = app.add_subcommand("replay", "Re-run a manifest and compare report digests");
  rep->add_option("MANIFEST", c.replay_manifest, "Manifest written by --manifest")->required();
}

int run_command(const std::vector<std::string>& args, Sink& sink, json* manifest_out);

int replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kUsage, "cannot read manifest " + path};
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw Failure{kUsage, "malformed manifest " + path + ": " + e.what()};
  }
  if (!m.contains("argv") || !m.contains("outputs")) throw Failure{kUsage, "manifest lacks argv or outputs"};
  const auto args = m["argv"].get<std::vector<std::string>>();
  Sink sink(true);
  const int code = run_command(args, sink, nullptr);
  json rows = json::array();
  bool identical = code == m.value("exit_code", 0);
  const auto& expected = m["outputs"];
  const auto& actual = sink.outputs();
  if (expected.size() != actual.size()) identical = false;
  for (std::size_t i = 0; i < std::max(expected.size(), actual.size()); ++i) {
    json row;
    row["path"] = i < expected.size() ? expected[i]["path"] : actual[i]["path"];
    row["expected"] = i < expected.size() ? expected[i]["sha256"] : json(nullptr);
    row["actual"] = i < actual.size() ? actual[i]["sha256"] : json(nullptr);
    row["match"] = row["expected"] == row["actual"];
    if (!row["match"].get<bool>()) identical = false;
    rows.push_back(row);
  }
  std::cout << dump(json{{"manifest", path}, {"exit_code", code}, {"outputs", rows}, {"identical", identical}});
  return identical ? kOk : kVerification;
}

int run_command(const std::vector<std::string>& args, Sink& sink, json* manifest_out) {
  CLI::App app{"Idoneal discriminant sieve and explicit-bound verifier", "idoneal"};
  Commands c;
  build(app, c);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (app.got_subcommand("replay")) return replay(c.replay_manifest);

  const std::string started = now_utc();
  RunRecord rec;
  int code = kOk;
  try {
    code = dispatch(app, c, sink, rec);
  } catch (const CLI::ValidationError& e) {
    throw Failure{kUsage, e.what()};
  }
  if (!c.manifest.empty() || manifest_out != nullptr) {
    json m{{"command", app.get_subcommands().front()->get_name()},
           {"argv", args},
           {"config", rec.config},
           {"config_hash", rec.config_hash.empty() ? sha256(rec.config.dump()) : rec.config_hash},
           {"started_at", started},
           {"finished_at", now_utc()},
           {"outputs", sink.outputs()},
           {"summary", rec.summary},
           {"exit_code", code}};
    if (manifest_out != nullptr) *manifest_out = m;
    if (!c.manifest.empty() && !sink.dry()) {
      std::ofstream out(c.manifest, std::ios::trunc);
      if (!out) throw Failure{kUsage, "cannot write manifest " + c.manifest};
      out << dump(m);
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Sink sink(false);
  try {
    return run_command(args, sink, nullptr);
  } catch (const Failure& f) {
    std::cerr << "idoneal: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "idoneal: " << e.what() << "\n";
    return kVerification;
  }
}
