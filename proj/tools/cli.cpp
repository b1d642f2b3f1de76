#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "lforge/corpus.hpp"
#include "lforge/json_io.hpp"
#include "lforge/liaison.hpp"

namespace lforge::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Flags {
  std::string input;
  std::optional<std::size_t> t;
  std::optional<std::uint64_t> seed;
  std::string field;
  bool json = false;
  std::string out_path;
  bool force_char2 = false;
  std::string only;
  std::string kind;
  std::string corpus_action;
  std::string corpus_name;
};

struct Loaded {
  std::optional<PolyMatrix> matrix;
  std::optional<json> certificate;
  std::optional<std::size_t> t;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<Field> parse_field(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "q") return Field::rationals();
  if (s.rfind("zp:", 0) == 0) {
    try {
      return Field::prime(static_cast<std::uint32_t>(std::stoul(s.substr(3))));
    } catch (const std::exception& e) {
      throw UsageError("bad --field value '" + s + "': " + e.what());
    }
  }
  throw UsageError("bad --field value '" + s + "' (expected q or zp:<p>)");
}

/// Accepts a file path or corpus:<name>[/<extra matrix>].
Loaded load_input(const Flags& f) {
  auto field = parse_field(f.field);
  Loaded l;
  if (f.input.rfind("corpus:", 0) == 0) {
    std::string spec = f.input.substr(7);
    std::string extra;
    if (auto slash = spec.find('/'); slash != std::string::npos) {
      extra = spec.substr(slash + 1);
      spec = spec.substr(0, slash);
    }
    CorpusOptions opts;
    opts.field = field;
    CorpusEntry e = builtin(spec, opts);
    if (extra.empty()) {
      l.matrix = e.matrix;
    } else {
      auto it = e.extras.find(extra);
      if (it == e.extras.end()) throw UnknownEntry("corpus entry " + spec + " has no matrix " + extra);
      l.matrix = it->second;
    }
    l.t = e.t;
    return l;
  }
  std::ifstream in(f.input);
  if (!in) throw std::ios_base::failure("cannot read " + f.input);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = parse_json_text(buf.str());
  if (j.is_object() && j.contains("result") && is_certificate(j.at("result"))) j = j.at("result");
  if (is_certificate(j)) {
    l.certificate = j;
    return l;
  }
  PolyMatrix m = matrix_from_json(j);
  if (field) m = m.over_field(*field);
  l.matrix = m;
  if (j.contains("t") && j.at("t").is_number_unsigned()) l.t = j.at("t").get<std::size_t>();
  return l;
}

std::size_t resolve_t(const Flags& f, const Loaded& l) {
  if (f.t) return *f.t;
  if (l.t) return *l.t;
  throw UsageError("no minor size given: pass --t or include \"t\" in the input");
}

std::uint64_t resolve_seed(const Flags& f) {
  if (f.seed) return *f.seed;
  if (const char* env = std::getenv("LIAISON_FORGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("LIAISON_FORGE_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  json timing = json::object();
  json result;
  std::vector<std::string> warnings;

  json to_json() const {
    return json{{"tool", "liaison-forge"}, {"version", LFORGE_VERSION}, {"command", command},
                {"seed", seed},         {"timing_ms", timing},         {"result", result},
                {"warnings", warnings}};
  }
};

void emit(const Flags& f, const Report& r, const std::string& human, std::ostream& out) {
  std::string report = r.to_json().dump(2) + "\n";
  if (!f.out_path.empty()) {
    std::ofstream o(f.out_path);
    if (!o) throw std::ios_base::failure("cannot write " + f.out_path);
    o << report;
  }
  out << (f.json ? report : human);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Commands

int cmd_classify(const Flags& f, const std::string& echo, std::ostream& out) {
  auto start = Clock::now();
  Loaded l = load_input(f);
  if (!l.matrix) throw UsageError("classify expects a matrix, not a certificate");
  std::size_t t = resolve_t(f, l);
  Report r{echo, resolve_seed(f)};
  r.timing["parse"] = ms_since(start);
  start = Clock::now();
  ClassificationReport c = classify(*l.matrix, t);
  r.timing["heights"] = ms_since(start);
  r.result = classification_to_json(c);
  std::ostringstream h;
  h << "verdict: " << to_string(c.verdict) << "\n"
    << "  t-homogeneous:  " << yes_no(c.t_homogeneous) << "\n"
    << "  saturated:      " << yes_no(c.saturated) << "\n"
    << "  codimension:    " << c.actual_codim << " (maximal " << c.expected_codim << ")\n";
  if (!c.reason.empty()) h << "  reason: " << c.reason << "\n";
  emit(f, r, h.str(), out);
  return c.verdict == Verdict::Neither ? kNegative : kPass;
}

std::string heights_table(const ChainCertificate& c) {
  std::ostringstream h;
  h << std::left << std::setw(6) << "step" << std::setw(4) << "t" << std::setw(4) << "a" << std::setw(11)
    << "ht ItM" << std::setw(11) << "ht ItO" << std::setw(13) << "ht It-1(N)" << std::setw(13) << "ht It-1(O)"
    << std::setw(6) << "seed" << "identities\n";
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const auto& s = c.steps[k];
    h << std::left << std::setw(6) << k << std::setw(4) << s.t << std::setw(4) << s.a << std::setw(11)
      << s.heights.ht_ItM << std::setw(11) << s.heights.ht_ItO << std::setw(13) << s.heights.ht_It1N
      << std::setw(13) << s.heights.ht_It1O << std::setw(6) << s.seed_used << s.identities_checked - s.identities_failed
      << "/" << s.identities_checked << " hold\n";
  }
  return h.str();
}

int cmd_chain(const Flags& f, const std::string& echo, std::ostream& out) {
  auto start = Clock::now();
  Loaded l = load_input(f);
  if (!l.matrix) throw UsageError("chain expects a matrix, not a certificate");
  std::size_t t = resolve_t(f, l);
  Report r{echo, resolve_seed(f)};
  r.timing["parse"] = ms_since(start);
  DescentOptions opts;
  opts.force_char2 = f.force_char2;
  if (opts.force_char2 && l.matrix->ring()->field().characteristic() == 2)
    r.warnings.push_back("characteristic 2 forced; the descent is not expected to hold");
  start = Clock::now();
  ChainCertificate c = biliaison_chain(*l.matrix, t, r.seed, opts);
  double total = ms_since(start), heights = 0, identities = 0;
  for (const auto& s : c.steps) {
    heights += s.heights_ms;
    identities += s.identities_ms;
    if (s.retries > 0) r.warnings.push_back("step used " + std::to_string(s.retries) + " genericity retries");
    r.warnings.insert(r.warnings.end(), s.warnings.begin(), s.warnings.end());
  }
  r.timing["heights"] = heights;
  r.timing["identities"] = identities;
  r.timing["gb"] = total - heights - identities;
  r.result = chain_to_json(c);

  std::size_t failed = 0;
  for (const auto& s : c.steps) failed += s.identities_failed;
  std::ostringstream h;
  h << "chain of " << c.steps.size() << " step(s), seed " << r.seed << "\n" << heights_table(c);
  h << "terminal ideal: mu = " << c.terminal_mu << ", height = " << c.terminal_height
    << (c.terminal_is_ci ? ", complete intersection" : ", not a complete intersection") << "\n";
  for (const auto& w : r.warnings) h << "warning: " << w << "\n";
  emit(f, r, h.str(), out);
  return failed == 0 && c.terminal_is_ci ? kPass : kNegative;
}

int verify_certificate(const Flags& f, const Report& base, const json& cert, std::ostream& out) {
  Report r = base;
  auto start = Clock::now();
  auto steps = steps_from_certificate(cert);
  r.timing["parse"] = ms_since(start);
  start = Clock::now();
  json results = json::array();
  std::ostringstream h;
  std::size_t failed = 0;
  bool bases_ok = true;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    // The embedded basis must at least generate an ideal containing I_t(O).
    if (!ideal_contains(steps[k].gb_Y, minor_ideal(steps[k].O, steps[k].t))) {
      bases_ok = false;
      results.push_back({{"step", k}, {"basis_valid", false}});
      h << "step " << k << ": embedded basis does not contain I_t(O)\n";
      continue;
    }
    CrossCheck c = verify_cross_identities(steps[k].M, steps[k].t, steps[k].gb_Y);
    failed += c.failed;
    results.push_back({{"step", k}, {"basis_valid", true}, {"checked", c.checked}, {"failed", c.failed},
                       {"witnesses", c.witnesses}, {"recorded_failed", steps[k].identities_failed}});
    h << "step " << k << ": " << c.checked - c.failed << "/" << c.checked << " identities hold (embedded basis)\n";
  }
  r.timing["identities"] = ms_since(start);
  r.result = json{{"kind", "cross"}, {"source", "certificate"}, {"steps", results}, {"failed", failed},
                  {"bases_valid", bases_ok}};
  emit(f, r, h.str(), out);
  return failed == 0 && bases_ok ? kPass : kNegative;
}

json sylvester_check(const PolyMatrix& m, std::size_t& checked, std::size_t& failed, std::vector<std::string>& wit) {
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t a = 1; a < limit; ++a)
    for (const auto& R : combinations(m.rows(), a - 1))
      for (const auto& C : combinations(m.cols(), a - 1))
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t k = i + 1; k < m.rows(); ++k) {
            if (std::find(R.begin(), R.end(), i) != R.end() || std::find(R.begin(), R.end(), k) != R.end()) continue;
            for (std::size_t j = 0; j < m.cols(); ++j)
              for (std::size_t l = j + 1; l < m.cols(); ++l) {
                if (std::find(C.begin(), C.end(), j) != C.end() || std::find(C.begin(), C.end(), l) != C.end())
                  continue;
                ++checked;
                if (!sylvester_defect(m, {R, C, i, k, j, l}).is_zero()) {
                  ++failed;
                  wit.push_back("a=" + std::to_string(a) + " i=" + std::to_string(i + 1) + " k=" +
                                std::to_string(k + 1) + " j=" + std::to_string(j + 1) + " l=" + std::to_string(l + 1));
                }
              }
          }
  return json{{"checked", checked}, {"failed", failed}, {"witnesses", wit}};
}

int cmd_verify(const Flags& f, const std::string& echo, std::ostream& out) {
  auto start = Clock::now();
  Loaded l = load_input(f);
  Report r{echo, resolve_seed(f)};
  r.timing["parse"] = ms_since(start);
  if (l.certificate) {
    if (f.kind != "cross") throw UsageError("certificates can only be re-verified with 'verify cross'");
    return verify_certificate(f, r, *l.certificate, out);
  }
  const PolyMatrix& m = *l.matrix;
  std::ostringstream h;
  bool pass = false;
  start = Clock::now();
  if (f.kind == "cross") {
    std::size_t t = resolve_t(f, l);
    GroebnerBasis g = buchberger(minor_ideal(delete_last_row(m), t));
    r.timing["gb"] = ms_since(start);
    start = Clock::now();
    CrossCheck c = verify_cross_identities(m, t, g);
    r.timing["identities"] = ms_since(start);
    r.result = json{{"kind", "cross"}, {"checked", c.checked}, {"failed", c.failed}, {"witnesses", c.witnesses}};
    h << c.checked - c.failed << "/" << c.checked << " cross-minor identities hold\n";
    for (const auto& w : c.witnesses) h << "  fails: " << w << "\n";
    pass = c.failed == 0;
  } else if (f.kind == "sylvester") {
    std::size_t checked = 0, failed = 0;
    std::vector<std::string> wit;
    r.result = sylvester_check(m, checked, failed, wit);
    r.result["kind"] = "sylvester";
    r.timing["identities"] = ms_since(start);
    h << checked - failed << "/" << checked << " Sylvester identities hold exactly\n";
    for (const auto& w : wit) h << "  fails: " << w << "\n";
    pass = failed == 0;
  } else if (f.kind == "ht1") {
    std::size_t t = resolve_t(f, l);
    Ht1Result c = check_ht1(m, t, r.seed);
    r.timing["heights"] = ms_since(start);
    r.warnings = c.warnings;
    r.result = json{{"kind", "ht1"},        {"ht_ItM", c.ht_ItM}, {"ht_ItO", c.ht_ItO},
                    {"delta", c.delta},     {"ok", c.ok},         {"seed_used", c.seed_used}};
    h << "ht I_t(M) = " << c.ht_ItM << ", ht I_t(O) = " << c.ht_ItO << ", difference " << c.delta
      << (c.ok ? " <= 1\n" : " > 1\n");
    pass = c.ok;
  } else if (f.kind == "subm") {
    std::size_t t = resolve_t(f, l);
    SubmResult c = check_subm(m, t);
    r.timing["heights"] = ms_since(start);
    r.result = json{{"kind", "subm"}, {"c", c.c}, {"ht_It1O", c.ht_It1O}, {"ht_It1N", c.ht_It1N},
                    {"condition2", c.condition2}, {"sufficient", c.sufficient}};
    h << "c = " << c.c << "\n"
      << "  ht I_{t-1}(O) = " << c.ht_It1O << " (need >= " << c.c + 1 << "): condition2 " << yes_no(c.condition2)
      << "\n  ht I_{t-1}(N) = " << c.ht_It1N << " (need = " << c.c + 1 << "): sufficient " << yes_no(c.sufficient)
      << "\n";
    pass = c.condition2;
  } else if (f.kind == "subsd") {
    std::size_t t = resolve_t(f, l);
    SubsdResult c = check_subsd(m, t);
    r.timing["heights"] = ms_since(start);
    r.result = json{{"kind", "subsd"}, {"c", c.c}, {"ht_It1M", c.ht_It1M}, {"ht_It1O", c.ht_It1O},
                    {"condition2", c.condition2}, {"sufficient", c.sufficient}};
    h << "c + 1 = " << c.c + 1 << "\n"
      << "  ht I_{t-1}(M) = " << c.ht_It1M << " (need >= " << c.c + 2 << "): condition2 " << yes_no(c.condition2)
      << "\n  ht I_{t-1}(O) = " << c.ht_It1O << " (need >= " << c.c + 2 << "): sufficient " << yes_no(c.sufficient)
      << "\n";
    pass = c.condition2;
  } else {
    throw UsageError("unknown check '" + f.kind + "'");
  }
  emit(f, r, h.str(), out);
  return pass ? kPass : kNegative;
}

int cmd_corpus(const Flags& f, const std::string& echo, std::ostream& out) {
  Report r{echo, resolve_seed(f)};
  CorpusOptions opts;
  opts.field = parse_field(f.field);
  if (f.corpus_action == "list") {
    auto names = builtin_names();
    r.result = names;
    std::string h;
    for (const auto& n : names) h += n + "\n";
    emit(f, r, h, out);
    return kPass;
  }
  if (f.corpus_action == "dump") {
    if (f.corpus_name.empty()) throw UsageError("corpus dump needs an entry name");
    json j = corpus_entry_to_json(builtin(f.corpus_name, opts));
    if (!f.out_path.empty()) {
      std::ofstream o(f.out_path);
      if (!o) throw std::ios_base::failure("cannot write " + f.out_path);
      o << j.dump(2) << "\n";
    } else {
      out << j.dump(2) << "\n";
    }
    return kPass;
  }
  if (f.corpus_action != "run") throw UsageError("corpus action must be list, dump or run");
  auto start = Clock::now();
  json entries = json::array();
  std::ostringstream h;
  std::size_t total = 0;
  int code = kPass;
  for (const auto& name : builtin_names()) {
    if (!f.only.empty() && name.find(f.only) == std::string::npos) continue;
    if (name == "bruns_char2" && opts.field) continue;
    auto e_start = Clock::now();
    auto outcomes = run_entry(builtin(name, opts), r.seed);
    json checks = json::array();
    for (const auto& c : outcomes) {
      ++total;
      checks.push_back({{"key", c.key}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
      if (!c.pass && code == kPass) {
        code = kNegative;
        h << "MISMATCH " << name << "." << c.key << "\n  - expected: " << c.expected << "\n  + actual:   " << c.actual
          << "\n";
      }
    }
    entries.push_back({{"name", name}, {"checks", checks}, {"ms", ms_since(e_start)}});
    if (code != kPass) break;
    h << "ok  " << std::left << std::setw(20) << name << outcomes.size() << " checks\n";
  }
  r.timing["total"] = ms_since(start);
  r.result = json{{"entries", entries}, {"checks", total}, {"pass", code == kPass}};
  if (code == kPass) h << total << " checks passed\n";
  emit(f, r, h.str(), out);
  return code;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "liaison-forge";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric determinantal ideals: classification, biliaison chains and identity checks",
               "liaison-forge"};
  app.set_version_flag("--version", std::string(LFORGE_VERSION));
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub, bool matrix_input) {
    if (matrix_input)
      sub->add_option("input", f.input, "matrix JSON file, certificate JSON, or corpus:<name>[/<matrix>]")->required();
    sub->add_option("--t", f.t, "minor size");
    sub->add_option("--seed", f.seed, "seed for generic draws (default 0, or LIAISON_FORGE_SEED)");
    sub->add_option("--field", f.field, "coefficient field: q or zp:<p>");
    sub->add_flag("--json", f.json, "emit the JSON report");
    sub->add_option("--out", f.out_path, "also write the JSON report to this path");
  };

  auto* classify_cmd = app.add_subcommand("classify", "classify a symmetric or almost-symmetric matrix");
  common(classify_cmd, true);
  auto* chain_cmd = app.add_subcommand("chain", "run the descending biliaison chain");
  common(chain_cmd, true);
  chain_cmd->add_flag("--force-char2", f.force_char2, "run the descent in characteristic 2 anyway");
  auto* verify_cmd = app.add_subcommand("verify", "run one family of identity or height checks");
  verify_cmd->add_option("kind", f.kind, "cross | sylvester | ht1 | subm | subsd")
      ->required()
      ->check(CLI::IsMember({"cross", "sylvester", "ht1", "subm", "subsd"}));
  common(verify_cmd, true);
  auto* corpus_cmd = app.add_subcommand("corpus", "list, dump or run the built-in examples");
  corpus_cmd->add_option("action", f.corpus_action, "list | dump | run")
      ->required()
      ->check(CLI::IsMember({"list", "dump", "run"}));
  corpus_cmd->add_option("name", f.corpus_name, "entry name for dump");
  corpus_cmd->add_option("--only", f.only, "run only entries whose name contains this text");
  common(corpus_cmd, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const std::string echo = join(args);
  try {
    if (classify_cmd->parsed()) return cmd_classify(f, echo, out);
    if (chain_cmd->parsed()) return cmd_chain(f, echo, out);
    if (verify_cmd->parsed()) return cmd_verify(f, echo, out);
    return cmd_corpus(f, echo, out);
  } catch (const CharTwoRefused& e) {
    err << "refused (characteristic 2): " << e.what() << "\n";
    return kRefused;
  } catch (const PreconditionFailed& e) {
    err << "refused (precondition): " << e.what() << "\n";
    return kRefused;
  } catch (const ChainObstruction& e) {
    err << "obstruction" << (e.step ? " at step " + std::to_string(*e.step) : "") << ": ht I_t(O) = " << e.ht_ItO
        << ", ht I_{t-1}(N) = " << e.ht_It1N << "\n"
        << e.what() << "\n";
    return kObstruction;
  } catch (const GenericityExhausted& e) {
    err << "obstruction (genericity exhausted)" << (e.step ? " at step " + std::to_string(*e.step) : "") << ": "
        << e.what() << "\n";
    return kObstruction;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const StructureError& e) {
    err << "structure error: " << e.what() << "\n";
  } catch (const RingMismatch& e) {
    err << "ring mismatch: " << e.what() << "\n";
  } catch (const UnknownEntry& e) {
    err << "corpus error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace lforge::cli
