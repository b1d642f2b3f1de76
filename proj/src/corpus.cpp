#include "lforge/corpus.hpp"

#include <charconv>
#include <functional>
#include <random>
#include <sstream>

#include "lforge/liaison.hpp"

namespace lforge {

std::string ExpectedValue::to_string() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<V, std::int64_t>) return std::to_string(v);
        else return v;
      },
      value);
}

namespace {

constexpr std::uint32_t kDefaultPrime = 32003;
constexpr std::size_t kMaxSize = 4;

ExpectedValue stated(std::variant<std::int64_t, bool, std::string> v) { return {std::move(v), "stated"}; }
ExpectedValue formula(std::variant<std::int64_t, bool, std::string> v, std::string f) {
  return {std::move(v), "formula: " + std::move(f)};
}

Field default_field(const CorpusOptions& opts) { return opts.field.value_or(Field::prime(kDefaultPrime)); }

std::string var_name(std::size_t i, std::size_t j) { return "x" + std::to_string(i + 1) + std::to_string(j + 1); }

/// Parses "<prefix><a>_<b>" or "<prefix><a>"; returns the numbers.
std::optional<std::vector<std::size_t>> parse_params(const std::string& name, const std::string& prefix,
                                                     std::size_t count) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  std::vector<std::size_t> out;
  std::string rest = name.substr(prefix.size());
  std::stringstream ss(rest);
  std::string part;
  while (std::getline(ss, part, '_')) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size()) return std::nullopt;
    out.push_back(v);
  }
  if (out.size() != count) return std::nullopt;
  return out;
}

CorpusEntry make_entry(std::string name, PolyMatrix matrix, std::size_t t, std::string source) {
  Ring ring = matrix.ring();
  return CorpusEntry{std::move(name), ring, std::move(matrix), t, {}, std::nullopt, {}, std::move(source)};
}

CorpusEntry veronese(const CorpusOptions& opts) {
  Ring r = make_ring(6, default_field(opts));
  auto m = PolyMatrix::parse(r, {{"x0", "x1", "x2"}, {"x1", "x5", "x3"}, {"x2", "x3", "x4"}}, Structure::Symmetric);
  CorpusEntry e = make_entry("veronese", std::move(m), 2,
                             "Veronese surface in P^5: 2-minors of a symmetric 3x3 matrix of indeterminates");
  e.expected["verdict"] = stated(std::string("SymmetricDeterminantal"));
  e.expected["codim"] = stated(std::int64_t{3});
  e.expected["mu"] = stated(std::int64_t{6});
  e.expected["chain_length"] = stated(std::int64_t{1});
  e.expected["step_a"] = stated(std::string("1"));
  e.expected["step_heights"] = stated(std::string("(3,2,3)"));
  e.expected["identities_failed"] = stated(std::int64_t{0});
  e.expected["terminal_mu"] = stated(std::int64_t{3});
  e.expected["terminal_height"] = stated(std::int64_t{3});
  e.expected["terminal_is_ci"] = stated(true);
  return e;
}

CorpusEntry bruns_char2() {
  Ring r = make_ring({"x", "y", "z", "w"}, Field::prime(2));
  auto m = PolyMatrix::parse(r, {{"0", "x", "y"}, {"x", "0", "z"}, {"y", "z", "0"}}, Structure::Symmetric);
  CorpusEntry e = make_entry("bruns_char2", std::move(m), 2,
                             "symmetric 3x3 matrix with zero diagonal over Z/2; 2-minors give (x,y,z)^2");
  e.reference = IdealBasis::parse(r, {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"});
  e.expected["equals_reference"] = stated(true);
  e.expected["codim"] = stated(std::int64_t{3});
  e.expected["chain_refused"] = stated(std::string("CharTwoRefused"));
  e.expected["forced_chain"] = stated(std::string("ChainObstruction"));
  e.expected["forced_ht_ItO"] = stated(std::int64_t{1});
  return e;
}

CorpusEntry ht_example(const CorpusOptions& opts) {
  Ring r = make_ring(4, opts.field.value_or(Field::rationals()));
  auto m = PolyMatrix::parse(r, {{"x0", "x1", "x2"}, {"x1", "x0", "x3"}, {"x2", "x3", "x2"}}, Structure::Symmetric);
  CorpusEntry e = make_entry("ht_example", m, 2,
                             "height conditions on O, N and the transformed O', N' with a = 1 over K[x0..x3]");
  e.extras.emplace("M", m);
  e.extras.emplace("O", delete_last_row(m));
  e.extras.emplace("N", delete_last_column(delete_last_row(m)));
  // Congruence R1 += R2 + a*R3 (and on columns) with a = 1.
  auto mp = PolyMatrix::parse(r,
                              {{"2*x0 + 2*x1 + 3*x2 + 2*x3", "x0 + x1 + x3", "2*x2 + x3"},
                               {"x0 + x1 + x3", "x0", "x3"},
                               {"2*x2 + x3", "x3", "x2"}},
                              Structure::Symmetric);
  e.extras.emplace("Mprime", mp);
  e.extras.emplace("Oprime", delete_last_row(mp));
  e.extras.emplace("Nprime", delete_last_column(delete_last_row(mp)));
  e.expected["ht_I2_O"] = stated(std::int64_t{2});
  e.expected["ht_I1_O"] = stated(std::int64_t{4});
  e.expected["ht_I1_N"] = stated(std::int64_t{2});
  e.expected["ht_I1_Nprime"] = stated(std::int64_t{3});
  e.expected["subm_O_condition2"] = stated(true);
  e.expected["subm_O_sufficient"] = stated(false);
  e.expected["subm_Oprime_sufficient"] = stated(true);
  return e;
}

CorpusEntry generic_sym(std::size_t m, std::size_t t, const CorpusOptions& opts) {
  if (m < 1 || m > kMaxSize || t < 1 || t > m) throw UnknownEntry("generic_sym: need 1 <= t <= m <= 4");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) names.push_back(var_name(i, j));
  Ring r = make_ring(names, default_field(opts));
  std::vector<std::vector<std::string>> rows(m, std::vector<std::string>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rows[i][j] = var_name(std::min(i, j), std::max(i, j));
  std::string name = "generic_sym_" + std::to_string(m) + "_" + std::to_string(t);
  CorpusEntry e = make_entry(name, PolyMatrix::parse(r, rows, Structure::Symmetric), t,
                             "generic symmetric " + std::to_string(m) + "x" + std::to_string(m) +
                                 " matrix of indeterminates, minors of size " + std::to_string(t));
  std::int64_t codim = symmetric_codim(m, t);
  e.expected["codim"] = formula(codim, "C(m-t+2, 2)");
  // For t = 1 the minors are all the variables: the irrelevant ideal, whose
  // saturation is the unit ideal.
  e.expected["verdict"] = t == 1 ? formula(std::string("Neither"), "I_1 is the irrelevant ideal")
                                 : formula(std::string("SymmetricDeterminantal"), "codim = C(m-t+2, 2)");
  if (t >= 2 && t < m) e.expected["chain_length"] = formula(static_cast<std::int64_t>(t - 1), "t - 1");
  if (t < m) e.expected["terminal_is_ci"] = formula(true, "I_1 of a symmetric matrix of independent forms");
  return e;
}

CorpusEntry generic_almost(std::size_t m, std::size_t t, const CorpusOptions& opts) {
  if (m < 2 || m > kMaxSize || t < 1 || t + 1 > m) throw UnknownEntry("generic_almost: need 1 <= t <= m-1 <= 3");
  std::vector<std::string> names;
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = i; j < m; ++j) names.push_back(var_name(i, j));
  Ring r = make_ring(names, default_field(opts));
  std::vector<std::vector<std::string>> rows(m - 1, std::vector<std::string>(m));
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rows[i][j] = var_name(std::min(i, j), std::max(i, j));
  std::string name = "generic_almost_" + std::to_string(m) + "_" + std::to_string(t);
  CorpusEntry e = make_entry(name, PolyMatrix::parse(r, rows, Structure::AlmostSymmetric), t,
                             "generic almost-symmetric " + std::to_string(m - 1) + "x" + std::to_string(m) +
                                 " matrix of indeterminates, minors of size " + std::to_string(t));
  e.expected["codim"] = formula(symmetric_codim(m, t) - 1, "C(m-t+2, 2) - 1");
  e.expected["verdict"] = t == 1 ? formula(std::string("Neither"), "I_1 is the irrelevant ideal")
                                 : formula(std::string("AlmostSymmetricDeterminantal"), "codim = C(m-t+2, 2) - 1");
  return e;
}

CorpusEntry ci(std::size_t b, const CorpusOptions& opts) {
  if (b < 2 || b > kMaxSize) throw UnknownEntry("ci: need 2 <= b <= 4");
  const std::size_t n = b - 1;
  const std::size_t nforms = static_cast<std::size_t>(choose2(static_cast<std::int64_t>(b)));
  // One spare variable keeps the scheme nonempty (a linear space, not the
  // irrelevant ideal).
  const std::size_t nvars = nforms + 1;
  Ring r = make_ring(nvars, default_field(opts));
  const Field& f = r->field();
  std::mt19937_64 rng(0xC1 + b);
  std::uniform_int_distribution<int> dist(-kScalarBound, kScalarBound);
  std::vector<Polynomial> forms;
  for (std::size_t k = 0; k < nforms; ++k) {
    Polynomial p(r);
    for (std::size_t v = 0; v < nvars; ++v) p = p + Polynomial::variable(r, v).scaled(f.from_int(dist(rng)));
    forms.push_back(p);
  }
  std::vector<Polynomial> entries(n * n, Polynomial(r));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) entries[i * n + j] = entries[j * n + i] = forms[k];
  PolyMatrix m(r, n, n, entries, Structure::Symmetric);
  std::int64_t codim = choose2(static_cast<std::int64_t>(b));
  if (height(minor_ideal(m, 1)) != codim) throw std::logic_error("ci: drawn linear forms are dependent");
  CorpusEntry e = make_entry("ci_" + std::to_string(b), std::move(m), 1,
                             "complete intersection of C(b,2) generic linear forms in C(b,2)+1 variables as I_1 of a symmetric " +
                                 std::to_string(n) + "x" + std::to_string(n) + " matrix");
  e.expected["codim"] = formula(codim, "C(b, 2)");
  e.expected["mu"] = formula(codim, "C(b, 2)");
  e.expected["verdict"] = formula(std::string("SymmetricDeterminantal"), "codim = C(b, 2)");
  e.expected["chain_length"] = formula(std::int64_t{0}, "t = 1");
  e.expected["terminal_is_ci"] = formula(true, "mu = height");
  return e;
}

}  // namespace

CorpusEntry builtin(const std::string& name, const CorpusOptions& opts) {
  if (name == "veronese") return veronese(opts);
  if (name == "bruns_char2") {
    if (opts.field && !(*opts.field == Field::prime(2))) throw UnknownEntry("bruns_char2 is pinned to Z/2");
    return bruns_char2();
  }
  if (name == "ht_example") return ht_example(opts);
  if (auto p = parse_params(name, "generic_sym_", 2)) return generic_sym((*p)[0], (*p)[1], opts);
  if (auto p = parse_params(name, "generic_almost_", 2)) return generic_almost((*p)[0], (*p)[1], opts);
  if (auto p = parse_params(name, "ci_", 1)) return ci((*p)[0], opts);
  throw UnknownEntry("unknown corpus entry: " + name);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out{"veronese", "bruns_char2", "ht_example"};
  for (std::size_t m = 1; m <= kMaxSize; ++m)
    for (std::size_t t = 1; t <= m; ++t) out.push_back("generic_sym_" + std::to_string(m) + "_" + std::to_string(t));
  for (std::size_t m = 2; m <= kMaxSize; ++m)
    for (std::size_t t = 1; t < m; ++t) out.push_back("generic_almost_" + std::to_string(m) + "_" + std::to_string(t));
  for (std::size_t b = 2; b <= kMaxSize; ++b) out.push_back("ci_" + std::to_string(b));
  return out;
}

namespace {

std::string bool_text(bool b) { return b ? "true" : "false"; }

/// Splits "ht_I<k>_<extra>" into (k, extra).
std::optional<std::pair<std::size_t, std::string>> height_key(const std::string& key) {
  if (key.rfind("ht_I", 0) != 0) return std::nullopt;
  auto us = key.find('_', 4);
  if (us == std::string::npos) return std::nullopt;
  return std::make_pair(static_cast<std::size_t>(std::stoul(key.substr(4, us - 4))), key.substr(us + 1));
}

}  // namespace

std::vector<CheckOutcome> run_entry(const CorpusEntry& entry, std::uint64_t seed) {
  std::optional<IdealBasis> minors;
  auto ideal = [&]() -> const IdealBasis& {
    if (!minors) minors = minor_ideal(entry.matrix, entry.t);
    return *minors;
  };
  std::optional<ChainCertificate> chain;
  auto get_chain = [&]() -> const ChainCertificate& {
    if (!chain) chain = biliaison_chain(entry.matrix, entry.t, seed);
    return *chain;
  };
  auto extra = [&](const std::string& name) -> const PolyMatrix& {
    auto it = entry.extras.find(name);
    if (it == entry.extras.end()) throw std::logic_error("corpus entry lacks matrix " + name);
    return it->second;
  };

  auto actual_of = [&](const std::string& key) -> std::string {
    if (key == "codim") return std::to_string(height(ideal()));
    if (key == "mu") return std::to_string(minimal_generator_count(ideal()));
    if (key == "verdict") return to_string(classify(entry.matrix, entry.t).verdict);
    if (key == "equals_reference") return bool_text(ideal_equal(ideal(), *entry.reference));
    if (key == "chain_length") return std::to_string(get_chain().steps.size());
    if (key == "step_a") {
      std::string s;
      for (const auto& st : get_chain().steps) s += (s.empty() ? "" : ",") + std::to_string(st.a);
      return s;
    }
    if (key == "step_heights") {
      std::string s;
      for (const auto& st : get_chain().steps)
        s += (s.empty() ? "" : ";") + ("(" + std::to_string(st.heights.ht_ItM) + "," + std::to_string(st.heights.ht_ItO) +
                                       "," + std::to_string(st.heights.ht_It1N) + ")");
      return s;
    }
    if (key == "identities_failed") {
      std::size_t failed = 0;
      for (const auto& st : get_chain().steps) failed += st.identities_failed;
      return std::to_string(failed);
    }
    if (key == "terminal_mu") return std::to_string(get_chain().terminal_mu);
    if (key == "terminal_height") return std::to_string(get_chain().terminal_height);
    if (key == "terminal_is_ci") return bool_text(get_chain().terminal_is_ci);
    if (key == "chain_refused" || key == "forced_chain" || key == "forced_ht_ItO") {
      DescentOptions o;
      o.force_char2 = key != "chain_refused";
      try {
        biliaison_chain(entry.matrix, entry.t, seed, o);
        return "completed";
      } catch (const CharTwoRefused&) {
        return "CharTwoRefused";
      } catch (const ChainObstruction& e) {
        return key == "forced_ht_ItO" ? std::to_string(e.ht_ItO) : "ChainObstruction";
      } catch (const GenericityExhausted&) {
        return "GenericityExhausted";
      } catch (const PreconditionFailed&) {
        return "PreconditionFailed";
      }
    }
    if (auto hk = height_key(key)) return std::to_string(height(minor_ideal(extra(hk->second), hk->first)));
    if (key.rfind("subm_", 0) == 0) {
      auto us = key.find('_', 5);
      SubmResult r = check_subm(extra(key.substr(5, us - 5)), 2);
      return bool_text(key.substr(us + 1) == "condition2" ? r.condition2 : r.sufficient);
    }
    throw std::logic_error("unknown expected key " + key);
  };

  std::vector<CheckOutcome> out;
  for (const auto& [key, exp] : entry.expected) {
    CheckOutcome c{entry.name, key, exp.to_string(), "", false};
    try {
      c.actual = actual_of(key);
    } catch (const std::exception& e) {
      c.actual = std::string("error: ") + e.what();
    }
    c.pass = c.actual == c.expected;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace lforge
