#include "kurepa/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "kurepa/congruence.hpp"
#include "kurepa/exact.hpp"
#include "kurepa/report.hpp"
#include "kurepa/search.hpp"
#include "kurepa/stabilization.hpp"

namespace kurepa::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "plain";
  std::string out;
  unsigned jobs = 1;
  bool resume = false;
};

class Stopwatch {
 public:
  std::uint64_t ms() const {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Writes `text` to --out when given, else to the stream.
void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
  } else {
    write_atomic(g.out, text);
  }
}

std::string envelope_text(ReportEnvelope env) { return env.to_json().dump(2) + "\n"; }

u64 count_failures(std::span<const CheckResult> results) {
  u64 n = 0;
  for (const auto& r : results) n += r.passed ? 0 : 1;
  return n;
}

std::string describe(const CheckResult& r) {
  std::ostringstream s;
  s << r.name << " subject=" << r.subject;
  if (r.aux) s << " aux=" << *r.aux;
  if (r.modulus != 0) s << " mod=" << r.modulus;
  s << " lhs=" << r.lhs << " rhs=" << r.rhs << " (" << to_string(r.polarity) << ", " << to_string(r.relation)
    << ") " << (r.passed ? "PASS" : "FAIL");
  return s.str();
}

// ---- seq -------------------------------------------------------------------

std::pair<u64, u64> parse_range(const std::string& text) {
  auto parse = [&](const std::string& s) -> u64 {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad range '" + text + "', expected A..B or N");
    }
    return std::stoull(s);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const u64 v = parse(text);
    return {v, v};
  }
  const u64 from = parse(text.substr(0, dots)), to = parse(text.substr(dots + 2));
  if (from > to) throw UsageError("range start exceeds end in '" + text + "'");
  return {from, to};
}

std::vector<std::string> exact_values(const std::string& kind, u64 to) {
  const u64 guard = kind == "bell" ? kExactBellMax : kExactSeqMax;
  if (to > guard) {
    throw UsageError("exact " + kind + " values are limited to n <= " + std::to_string(guard) +
                     "; pass --mod for residues");
  }
  std::vector<ArbInt> v;
  if (kind == "left-factorial") v = left_factorial_prefix(to);
  else if (kind == "subfactorial") v = subfactorial_prefix(to);
  else if (kind == "bell") v = bell_prefix(to);
  else v = floor_fact_over_e_prefix(to);
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

std::vector<std::string> residue_values(const std::string& kind, u64 to, u64 modulus) {
  if (modulus < 2 || modulus > Modulus::kMax) throw UsageError("--mod must lie in [2, 2^63]");
  const Modulus m(modulus);
  std::vector<u64> v;
  if (kind == "left-factorial") {
    v = left_factorial_residues(m, to);
  } else if (kind == "subfactorial") {
    v = subfactorial_residues(m, to);
  } else if (kind == "bell") {
    v = bell_mod(modulus, to + 1);
  } else {
    v = subfactorial_residues(m, to);
    for (u64 n = 0; n <= to; ++n) v[n] = m.sub(v[n], parity_delta(n).value);
  }
  std::vector<std::string> out;
  for (u64 x : v) out.push_back(std::to_string(x));
  return out;
}

int cmd_seq(const Globals& g, const std::string& kind, const std::string& range, std::optional<u64> modulus,
            std::ostream& out) {
  Stopwatch clock;
  const auto [from, to] = parse_range(range);
  auto values = modulus ? residue_values(kind, to, *modulus) : exact_values(kind, to);

  std::string text;
  if (g.format == "json") {
    json vals = json::array();
    for (u64 n = from; n <= to; ++n) vals.push_back(values[n]);
    ReportEnvelope env{"seq",
                       {{"kind", kind}, {"from", from}, {"to", to}, {"mod", modulus ? json(*modulus) : json(nullptr)}},
                       clock.ms(),
                       {{"kind", kind}, {"from", from}, {"values", vals}},
                       0};
    text = envelope_text(env);
  } else if (g.format == "csv") {
    std::ostringstream s;
    s << "n,value\n";
    for (u64 n = from; n <= to; ++n) s << n << ',' << values[n] << '\n';
    text = s.str();
  } else {
    std::ostringstream s;
    for (u64 n = from; n <= to; ++n) s << (n == from ? "" : ",") << values[n];
    s << '\n';
    text = s.str();
  }
  emit(g, out, text);
  return kOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& suite, u64 primes_to, u64 n_to, std::ostream& out) {
  Stopwatch clock;
  SuiteOptions opts;
  opts.primes_to = primes_to;
  opts.n_to = n_to;
  opts.jobs = g.jobs;
  if (suite != "all") opts.families.push_back(suite);
  std::vector<CheckResult> results;
  try {
    results = run_suite(opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const u64 failures = count_failures(results);

  std::string text;
  if (g.format == "json") {
    json payload = json::array();
    for (const auto& r : results) payload.push_back(to_json(r));
    text = envelope_text({"verify", {{"suite", suite}, {"primes_to", primes_to}, {"n_to", n_to}},
                          clock.ms(), {{"results", payload}}, failures});
  } else if (g.format == "csv") {
    text = checks_csv(results);
  } else {
    std::ostringstream s;
    for (const auto& r : results) {
      if (!r.passed) s << describe(r) << '\n';
    }
    s << "checks: " << results.size() << " passed: " << results.size() - failures << " failed: " << failures << '\n';
    text = s.str();
  }
  emit(g, out, text);
  return failures == 0 ? kOk : kCheckFailed;
}

// ---- pairs -----------------------------------------------------------------

int cmd_pairs(const Globals& g, u64 p, unsigned max_power, std::ostream& out) {
  Stopwatch clock;
  if (p < 3 || !is_prime(p)) throw UsageError(std::to_string(p) + " is not an odd prime");
  if (max_power != 0 && !pow_fits(p, max_power)) {
    throw UsageError(std::to_string(p) + "^" + std::to_string(max_power) + " exceeds 2^63");
  }
  const auto rec = find_pairs(p, max_power);
  std::vector<CheckResult> checks;
  for (const auto& pair : rec.pairs) {
    for (auto& c : check_theorem_3_2(pair)) checks.push_back(std::move(c));
  }
  checks.push_back(check_gap_property(rec));
  checks.push_back(check_index_bound(rec));
  const u64 failures = count_failures(checks);

  std::string text;
  if (g.format == "json") {
    json cj = json::array();
    for (const auto& c : checks) cj.push_back(to_json(c));
    text = envelope_text({"pairs", {{"prime", p}, {"max_power", max_power}}, clock.ms(),
                          {{"record", to_json(rec)}, {"checks", cj}}, failures});
  } else if (g.format == "csv") {
    const PrimeIndexRecord one[] = {rec};
    text = pairs_csv(one);
  } else {
    std::ostringstream s;
    s << "p=" << p << " index=" << rec.index() << '\n';
    for (const auto& pair : rec.pairs) s << "(" << pair.p << "," << pair.n << ") order " << pair.order << '\n';
    for (const auto& c : checks) {
      if (!c.passed) s << describe(c) << '\n';
    }
    text = s.str();
  }
  emit(g, out, text);
  return failures == 0 ? kOk : kCheckFailed;
}

// ---- scan ------------------------------------------------------------------

json scan_data(u64 limit, const ScanResult& res) {
  json records = json::array();
  for (const auto& r : res.records) records.push_back(to_json(r));
  return json{{"limit", limit}, {"records", records}, {"distribution", to_json(res.report)}};
}

std::vector<CheckResult> scan_checks(const ScanResult& res) {
  std::vector<CheckResult> checks;
  for (const auto& rec : res.records) {
    for (const auto& pair : rec.pairs) {
      for (auto& c : check_theorem_3_2(pair)) checks.push_back(std::move(c));
    }
    checks.push_back(check_gap_property(rec));
    checks.push_back(check_index_bound(rec));
  }
  checks.push_back(simple_power_audit(res.records, res.report.limit + 1).result);
  return checks;
}

std::string distribution_plain(const DistributionReport& rep) {
  std::ostringstream s;
  s << "odd primes <= " << rep.limit << ": N = " << rep.total << ", max index " << rep.max_index() << '\n';
  s << "r\tN_r\tN_r/N\n";
  for (const auto& [r, count] : rep.histogram) s << r << '\t' << count << '\t' << rep.ratio(r).decimal(5) << '\n';
  return s.str();
}

int cmd_scan(const Globals& g, u64 limit, std::size_t chunk, std::optional<std::size_t> stop_after,
             std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  if (limit < 3) throw UsageError("scan limit must be >= 3");
  if (g.resume && g.out.empty()) throw UsageError("--resume needs --out DIR");

  ScanOptions opts;
  opts.jobs = g.jobs;
  opts.chunk_primes = chunk;
  opts.stop_after = stop_after;
  fs::path dir;
  fs::path ckpt;
  if (!g.out.empty()) {
    dir = g.out;
    fs::create_directories(dir);
    ckpt = dir / "scan.ckpt";
    if (g.resume && fs::exists(ckpt)) {
      opts.resume = parse_checkpoint(read_file(ckpt));
      err << "resuming after " << opts.resume.size() << " primes\n";
    }
    opts.on_progress = [&](std::span<const PrimeIndexRecord> recs) { write_atomic(ckpt, checkpoint_text(recs)); };
  }

  ScanResult res;
  try {
    res = scan_range(limit, opts);
  } catch (const KHViolation& e) {
    err << "KH violation: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!res.complete) {
    err << "scan stopped after " << res.records.size() << " primes; rerun with --resume\n";
    return kOk;
  }

  const auto checks = scan_checks(res);
  const u64 failures = count_failures(checks);
  ReportEnvelope env{"scan", {{"limit", limit}, {"jobs", g.jobs}, {"resume", g.resume}}, clock.ms(),
                     scan_data(limit, res), failures};
  if (!dir.empty()) {
    write_atomic(dir / "pairs.csv", pairs_csv(res.records));
    write_atomic(dir / "distribution.csv", distribution_csv(res.report));
    write_atomic(dir / "scan.json", scan_data(limit, res).dump(2) + "\n");
    write_atomic(dir / "report.json", envelope_text(env));
    write_atomic(ckpt, checkpoint_text(res.records));
  }

  if (g.format == "json") {
    out << envelope_text(env);
  } else if (g.format == "csv") {
    out << pairs_csv(res.records);
  } else {
    out << distribution_plain(res.report);
    for (const auto& c : checks) {
      if (!c.passed) out << describe(c) << '\n';
    }
  }
  return failures == 0 ? kOk : kCheckFailed;
}

// ---- stabilize -------------------------------------------------------------

int cmd_stabilize(const Globals& g, u64 p, unsigned r, std::optional<u64> window, std::ostream& out) {
  Stopwatch clock;
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
  if (r < 1) throw UsageError("power must be >= 1");
  if (!pow_fits(p, r)) throw UsageError(std::to_string(p) + "^" + std::to_string(r) + " exceeds 2^63");
  const u64 w = window.value_or(2 * p);
  if (w < 1) throw UsageError("window must be >= 1");
  const auto cert = verify_stabilization(p, r, w);
  const auto bound = check_l_r_bound(p, r);
  const u64 failures = bound.passed ? 0 : 1;

  std::string text;
  if (g.format == "json") {
    text = envelope_text({"stabilize", {{"prime", p}, {"power", r}, {"window", w}}, clock.ms(),
                          {{"certificate", to_json(cert)}, {"l_r_bound", to_json(bound)}}, failures});
  } else if (g.format == "csv") {
    std::ostringstream s;
    s << "p,r,l_r,threshold,modulus,stable_value,window,first_stable,ord_at_threshold\n"
      << cert.p << ',' << cert.r << ',' << cert.l_r << ',' << cert.threshold << ',' << cert.modulus << ','
      << cert.stable_value << ',' << cert.window << ',' << cert.first_stable << ',' << cert.ord_at_threshold << '\n';
    text = s.str();
  } else {
    std::ostringstream s;
    s << "p=" << cert.p << " r=" << cert.r << " l_r=" << cert.l_r << " threshold=" << cert.threshold
      << " stable value=" << cert.stable_value << " (mod " << cert.modulus << ")\n"
      << "checked through n=" << cert.threshold + cert.window << "; ord_p(" << cert.threshold
      << "!)=" << cert.ord_at_threshold << "; first stable index observed " << cert.first_stable << '\n';
    if (!bound.passed) s << describe(bound) << '\n';
    text = s.str();
  }
  emit(g, out, text);
  return failures == 0 ? kOk : kCheckFailed;
}

// ---- zivkovic --------------------------------------------------------------

int cmd_zivkovic(const Globals& g, u64 p, u64 n_max, std::ostream& out) {
  Stopwatch clock;
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
  if (!pow_fits(p, 3)) throw UsageError(std::to_string(p) + "^3 exceeds 2^63");
  const auto hits = order_two_search(p, n_max);
  std::optional<PrimeIndexRecord> rec;
  if (p >= 3) rec = find_pairs(p);

  std::string text;
  if (g.format == "json") {
    json hj = json::array();
    for (const auto& h : hits) hj.push_back({{"n", h.n}, {"order", h.order}});
    text = envelope_text({"zivkovic", {{"prime", p}, {"n_max", n_max}}, clock.ms(),
                          {{"order_two", hj}, {"record", rec ? to_json(*rec) : json(nullptr)}}, 0});
  } else if (g.format == "csv") {
    std::ostringstream s;
    s << "n,order\n";
    for (const auto& h : hits) s << h.n << ',' << h.order << '\n';
    text = s.str();
  } else {
    std::ostringstream s;
    s << "p=" << p << " n<=" << n_max << ": " << hits.size() << " index(es) with p^2 | K(n)\n";
    for (const auto& h : hits) s << "  K(" << h.n << ") order " << h.order << '\n';
    if (rec) {
      s << "Kurepa pairs of " << p << ":";
      for (const auto& pair : rec->pairs) s << " (" << pair.n << ", order " << pair.order << ")";
      s << '\n';
    }
    text = s.str();
  }
  emit(g, out, text);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Left factorial, subfactorial and Bell number toolkit: congruence checks and Kurepa pair scans",
               args.empty() ? "kurepa" : args[0]};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"plain", "csv", "json"}));
  app.add_option("--out", g.out, "Output file (scan: output directory)");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--resume", g.resume, "Resume a scan from the checkpoint in --out");

  std::string seq_kind, seq_range;
  std::optional<u64> seq_mod;
  auto* seq = app.add_subcommand("seq", "Print K(n), S(n), Bell numbers or floor(n!/e)")->fallthrough();
  seq->add_option("kind", seq_kind)->required()->check(
      CLI::IsMember({"left-factorial", "subfactorial", "bell", "floor-e"}));
  seq->add_option("range", seq_range, "A..B or N")->required();
  seq->add_option("--mod", seq_mod, "Reduce modulo M (streams residues, no size guard)");

  std::string suite = "all";
  u64 primes_to = 1000, n_to = 200;
  std::vector<std::string> suite_names{"all"};
  for (auto f : suite_families()) suite_names.emplace_back(f);
  auto* verify = app.add_subcommand("verify", "Run congruence checks")->fallthrough();
  verify->add_option("suite", suite)->check(CLI::IsMember(suite_names));
  verify->add_option("--primes-to", primes_to, "Odd primes up to this bound");
  verify->add_option("--n-to", n_to, "n-indexed checks for 1..N");

  u64 pair_prime = 0;
  unsigned max_power = 0;
  auto* pairs = app.add_subcommand("pairs", "Kurepa pairs of one prime")->fallthrough();
  pairs->add_option("prime", pair_prime)->required();
  pairs->add_option("--max-power", max_power, "Cap order refinement at this power (default: largest in bounds)");

  u64 scan_limit = 10000;
  std::size_t chunk = 64;
  std::optional<std::size_t> stop_after;
  auto* scan = app.add_subcommand("scan", "Index distribution over all odd primes up to LIMIT")->fallthrough();
  scan->add_option("limit", scan_limit, "Upper bound (default 10000)");
  scan->add_option("--checkpoint-every", chunk, "Primes per checkpoint")->check(CLI::PositiveNumber);
  scan->add_option("--stop-after", stop_after, "Stop once this many primes are recorded")->group("");

  u64 stab_prime = 0;
  unsigned stab_power = 1;
  std::optional<u64> window;
  auto* stabilize = app.add_subcommand("stabilize", "Certify that K(n) mod p^r becomes constant")->fallthrough();
  stabilize->add_option("prime", stab_prime)->required();
  stabilize->add_option("power", stab_power)->required();
  stabilize->add_option("--window", window, "Values checked past the threshold (default 2p)");

  u64 ziv_prime = 54503, ziv_n_max = 50000;
  auto* zivkovic = app.add_subcommand("zivkovic", "Search n with p^2 | K(n)")->fallthrough();
  zivkovic->add_option("--prime", ziv_prime);
  zivkovic->add_option("--n-max", ziv_n_max);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*seq) return cmd_seq(g, seq_kind, seq_range, seq_mod, out);
    if (*verify) return cmd_verify(g, suite, primes_to, n_to, out);
    if (*pairs) return cmd_pairs(g, pair_prime, max_power, out);
    if (*scan) return cmd_scan(g, scan_limit, chunk, stop_after, out, err);
    if (*stabilize) return cmd_stabilize(g, stab_prime, stab_power, window, out);
    if (*zivkovic) return cmd_zivkovic(g, ziv_prime, ziv_n_max, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModulusOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace kurepa::cli
