#include "lforge/liaison.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

namespace lforge {

std::int64_t choose2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::int64_t symmetric_codim(std::size_t m, std::size_t t) {
  return choose2(static_cast<std::int64_t>(m) - static_cast<std::int64_t>(t) + 2);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SymmetricDeterminantal: return "SymmetricDeterminantal";
    case Verdict::AlmostSymmetricDeterminantal: return "AlmostSymmetricDeterminantal";
    case Verdict::Neither: return "Neither";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string render_tuple(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s;
}

std::vector<std::size_t> with_last(std::vector<std::size_t> v, std::size_t last) {
  v.push_back(last);
  return v;
}

int height_of_minors(const PolyMatrix& m, std::size_t t) {
  if (t > std::min(m.rows(), m.cols())) return 0;  // I_t = 0
  return height(minor_ideal(m, t));
}

ClassificationReport classify_common(const PolyMatrix& m, std::size_t t, std::int64_t expected, Verdict positive) {
  ClassificationReport r;
  r.structure_ok = true;
  r.expected_codim = expected;
  r.t_homogeneous = is_t_homogeneous(m, t);
  IdealBasis ideal = minor_ideal(m, t);
  if (!ideal.is_homogeneous()) {
    r.verdict = Verdict::Neither;
    r.reason = "ideal of minors is not homogeneous";
    return r;
  }
  r.actual_codim = height(ideal);
  r.saturated = ideal_contains(ideal, saturate_irrelevant(ideal));
  if (!r.t_homogeneous) r.reason = "matrix is not " + std::to_string(t) + "-homogeneous";
  else if (!r.saturated) r.reason = "ideal of minors is not saturated";
  else if (r.actual_codim != expected)
    r.reason = "codimension " + std::to_string(r.actual_codim) + " differs from expected " + std::to_string(expected);
  r.verdict = r.reason.empty() ? positive : Verdict::Neither;
  return r;
}

}  // namespace

bool no_invertible_entries(const PolyMatrix& m) {
  return std::none_of(m.entries().begin(), m.entries().end(),
                      [](const Polynomial& p) { return !p.is_zero() && p.is_constant(); });
}

ClassificationReport classify(const PolyMatrix& m, std::size_t t) {
  if (m.structure() == Structure::AlmostSymmetric) return classify_almost(m, t);
  if (m.structure() != Structure::Symmetric) throw StructureError("classify: general matrices are not classified");
  if (t < 1 || t > m.rows()) throw std::out_of_range("classify: t out of range");
  return classify_common(m, t, symmetric_codim(m.rows(), t), Verdict::SymmetricDeterminantal);
}

ClassificationReport classify_almost(const PolyMatrix& o, std::size_t t) {
  if (o.structure() != Structure::AlmostSymmetric) throw StructureError("classify_almost: matrix is not almost-symmetric");
  if (t < 1 || t > o.rows()) throw std::out_of_range("classify_almost: t out of range");
  return classify_common(o, t, symmetric_codim(o.cols(), t) - 1, Verdict::AlmostSymmetricDeterminantal);
}

// ---------------------------------------------------------------------------
// Identity checks

CrossCheck verify_cross_identities(const PolyMatrix& m, std::size_t t, const GroebnerBasis& g_Y) {
  if (m.rows() != m.cols()) throw StructureError("verify_cross_identities: matrix must be square");
  const std::size_t n = m.rows();
  if (t < 2 || t > n) throw std::out_of_range("verify_cross_identities: need 2 <= t <= m");
  if (!g_Y.ring()->compatible(*m.ring())) throw RingMismatch("verify_cross_identities: basis from a different ring");
  const Ring& gr = g_Y.ring();

  {
    std::vector<Polynomial> top(m.entries().begin(), m.entries().end() - static_cast<std::ptrdiff_t>(n));
    PolyMatrix o(m.ring(), n - 1, n, std::move(top));
    if (!ideal_contains(g_Y, minor_ideal(o, t)))
      throw std::invalid_argument("verify_cross_identities: basis does not contain I_t of the matrix without its last row");
  }

  const std::size_t last = n - 1;
  auto tuples = combinations(n - 1, t - 1);
  struct Minors {
    Polynomial with_last;
    Polynomial without;
  };
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  std::vector<Minors> cache;
  for (std::size_t a = 0; a < tuples.size(); ++a)
    for (std::size_t b = 0; b < tuples.size(); ++b) {
      keys.push_back({a, b});
      cache.push_back({minor(m, {with_last(tuples[a], last), with_last(tuples[b], last)}).in_ring(gr),
                       minor(m, {tuples[a], tuples[b]}).in_ring(gr)});
    }

  CrossCheck out;
  const std::size_t count = keys.size();
  out.checked = count * count;
  for (std::size_t p = 0; p < count; ++p)
    for (std::size_t q = p + 1; q < count; ++q) {
      Polynomial diff = cache[p].with_last * cache[q].without - cache[q].with_last * cache[p].without;
      if (diff.is_zero() || normal_form(diff, g_Y).is_zero()) continue;
      // The mirrored pair is the negative of this one; both fail.
      out.failed += 2;
      auto render = [&](std::size_t k) {
        return "(" + render_tuple(tuples[keys[k].first]) + ";" + render_tuple(tuples[keys[k].second]) + ")";
      };
      out.witnesses.push_back(render(p) + "," + render(q));
      out.witnesses.push_back(render(q) + "," + render(p));
    }
  std::sort(out.witnesses.begin(), out.witnesses.end());
  return out;
}

namespace {

void check_tuples(const PolyMatrix& m, const SylvesterTuples& tp) {
  const std::size_t a = tp.i.size();
  if (a == 0 || tp.j.size() != a || tp.k.size() != a || tp.l.size() != a)
    throw std::invalid_argument("sylvester_membership: tuples must be nonempty and of equal length");
  if (a + 1 > std::min(m.rows(), m.cols())) throw std::invalid_argument("sylvester_membership: a + 1 exceeds matrix size");
  auto valid = [](const std::vector<std::size_t>& v, std::size_t bound) {
    for (std::size_t x = 0; x < v.size(); ++x)
      if (v[x] >= bound || (x > 0 && v[x - 1] >= v[x])) return false;
    return true;
  };
  if (!valid(tp.i, m.rows()) || !valid(tp.k, m.rows()) || !valid(tp.j, m.cols()) || !valid(tp.l, m.cols()))
    throw std::invalid_argument("sylvester_membership: tuples must be strictly increasing and in range");
}

}  // namespace

bool sylvester_membership(const PolyMatrix& m, const SylvesterTuples& tp, const GroebnerBasis& g) {
  check_tuples(m, tp);
  Polynomial diff = minor(m, {tp.i, tp.j}) * minor(m, {tp.k, tp.l}) - minor(m, {tp.k, tp.j}) * minor(m, {tp.i, tp.l});
  return normal_form(diff.in_ring(g.ring()), g).is_zero();
}

bool sylvester_membership(const PolyMatrix& m, const SylvesterTuples& tp) {
  check_tuples(m, tp);
  return sylvester_membership(m, tp, buchberger(minor_ideal(m, tp.i.size() + 1)));
}

Polynomial sylvester_defect(const PolyMatrix& m, const SylvesterInstance& s) {
  auto distinct = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (s.rows_common.size() != s.cols_common.size()) throw std::invalid_argument("sylvester_defect: unequal common sets");
  if (!distinct(with_last(with_last(s.rows_common, s.row_i), s.row_k)) ||
      !distinct(with_last(with_last(s.cols_common, s.col_j), s.col_l)))
    throw std::invalid_argument("sylvester_defect: indices must be distinct");
  const auto& R = s.rows_common;
  const auto& C = s.cols_common;
  Polynomial lhs = ordered_minor(m, with_last(R, s.row_i), with_last(C, s.col_j)) *
                       ordered_minor(m, with_last(R, s.row_k), with_last(C, s.col_l)) -
                   ordered_minor(m, with_last(R, s.row_k), with_last(C, s.col_j)) *
                       ordered_minor(m, with_last(R, s.row_i), with_last(C, s.col_l));
  Polynomial rhs = ordered_minor(m, R, C) * ordered_minor(m, with_last(with_last(R, s.row_i), s.row_k),
                                                          with_last(with_last(C, s.col_j), s.col_l));
  return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Height criteria

Ht1Result check_ht1(const PolyMatrix& m, std::size_t t, std::uint64_t seed) {
  if (m.structure() != Structure::Symmetric) throw PreconditionFailed("check_ht1: matrix is not symmetric");
  if (t < 1 || t > m.rows()) throw std::out_of_range("check_ht1: t out of range");
  if (!is_t_homogeneous(m, t)) throw PreconditionFailed("check_ht1: matrix is not t-homogeneous");
  if (!no_invertible_entries(m)) throw PreconditionFailed("check_ht1: matrix has an invertible entry");
  if (m.rows() < 2) throw PreconditionFailed("check_ht1: matrix must have at least two rows");
  Ht1Result r;
  r.ht_ItM = height_of_minors(m, t);
  const std::size_t n = m.rows();
  std::optional<Congruence> chosen;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    Congruence c = generic_congruence(m, seed + attempt);
    r.seed_used = seed + attempt;
    bool good = !c.transformed.at(n - 1, n - 1).is_zero();
    for (auto& w : c.warnings)
      if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) r.warnings.push_back(w);
    chosen = std::move(c);
    if (good) break;
  }
  if (chosen->transformed.at(n - 1, n - 1).is_zero())
    r.warnings.push_back("F_mm is zero for every draw in the retry budget");
  PolyMatrix o = delete_last_row(chosen->transformed);
  r.ht_ItO = height_of_minors(o, t);
  r.delta = r.ht_ItM - r.ht_ItO;
  r.ok = r.delta <= 1;
  return r;
}

SubmResult check_subm(const PolyMatrix& o, std::size_t t) {
  if (o.structure() != Structure::AlmostSymmetric) throw StructureError("check_subm: matrix is not almost-symmetric");
  if (t < 2) throw std::invalid_argument("check_subm: t must be at least 2");
  if (t > o.rows()) throw std::out_of_range("check_subm: t out of range");
  SubmResult r;
  r.c = symmetric_codim(o.cols(), t) - 1;
  r.ht_It1O = height_of_minors(o, t - 1);
  r.ht_It1N = height_of_minors(delete_last_column(o), t - 1);
  r.condition2 = r.ht_It1O >= r.c + 1;
  r.sufficient = r.ht_It1N == r.c + 1;
  return r;
}

SubsdResult check_subsd(const PolyMatrix& m, std::size_t t) {
  if (m.structure() != Structure::Symmetric) throw StructureError("check_subsd: matrix is not symmetric");
  if (t < 2) throw std::invalid_argument("check_subsd: t must be at least 2");
  if (t > m.rows()) throw std::out_of_range("check_subsd: t out of range");
  SubsdResult r;
  r.c = symmetric_codim(m.rows(), t) - 1;
  r.ht_It1M = height_of_minors(m, t - 1);
  r.ht_It1O = height_of_minors(delete_last_row(m), t - 1);
  r.condition2 = r.ht_It1M >= r.c + 2;
  r.sufficient = r.ht_It1O >= r.c + 2;
  return r;
}

// ---------------------------------------------------------------------------
// Descent

StepCertificate descend_step(const PolyMatrix& m, std::size_t t, std::uint64_t seed, const DescentOptions& opts) {
  if (m.structure() != Structure::Symmetric) throw PreconditionFailed("descend_step: matrix is not symmetric");
  const std::size_t n = m.rows();
  if (t < 2 || t + 1 > n)
    throw PreconditionFailed("descend_step: need 2 <= t <= m-1 (t=" + std::to_string(t) + ", m=" + std::to_string(n) + ")");
  if (m.ring()->field().characteristic() == 2 && !opts.force_char2)
    throw CharTwoRefused("descend_step: characteristic 2 is refused; the symmetric descent needs char != 2");
  if (!no_invertible_entries(m)) throw PreconditionFailed("descend_step: matrix has an invertible entry");
  ClassificationReport report = classify(m, t);
  if (report.verdict != Verdict::SymmetricDeterminantal)
    throw PreconditionFailed("descend_step: input is not symmetric determinantal (" + report.reason + ")");

  const std::int64_t c = symmetric_codim(n, t) - 1;
  bool every_draw_deficient = true;
  std::ostringstream log;
  int last_ItO = 0, last_It1N = 0;
  std::vector<std::string> warnings;

  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    auto start = Clock::now();
    Congruence cong = generic_congruence(m, seed + attempt);
    for (auto& w : cong.warnings)
      if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    PolyMatrix o = delete_last_row(cong.transformed);
    PolyMatrix nn = delete_last_column(o);
    const Polynomial& fmm = cong.transformed.at(n - 1, n - 1);
    StepHeights h;
    h.ht_ItM = report.actual_codim;
    h.ht_ItO = height_of_minors(o, t);
    h.ht_It1N = height_of_minors(nn, t - 1);
    h.ht_It1O = height_of_minors(o, t - 1);
    double heights_ms = ms_since(start);
    last_ItO = h.ht_ItO;
    last_It1N = h.ht_It1N;
    bool deficient = h.ht_ItO < c || h.ht_It1N < c + 1;
    every_draw_deficient = every_draw_deficient && deficient;
    log << " seed " << seed + attempt << ": F_mm " << (fmm.is_zero() ? "= 0" : "!= 0") << ", ht I_t(O) = " << h.ht_ItO
        << ", ht I_{t-1}(N) = " << h.ht_It1N << ";";
    if (fmm.is_zero() || h.ht_ItO != c || h.ht_It1N != c + 1) continue;

    StepCertificate cert(cong.transformed, o, nn);
    cert.t = t;
    cert.seed_used = seed + attempt;
    cert.retries = attempt;
    cert.a = *fmm.total_degree();
    cert.heights = h;
    cert.c = c;
    cert.ht1_ok = h.ht_ItM - h.ht_ItO <= 1;
    cert.subm_condition2 = h.ht_It1O >= c + 1;
    cert.subm_sufficient = h.ht_It1N == c + 1;
    cert.heights_ms = heights_ms;
    cert.warnings = warnings;

    auto id_start = Clock::now();
    GroebnerBasis gY = buchberger(minor_ideal(o, t));
    CrossCheck cross = verify_cross_identities(cong.transformed, t, gY);
    cert.identities_ms = ms_since(id_start);
    cert.identities_checked = cross.checked;
    cert.identities_failed = cross.failed;
    cert.witnesses = std::move(cross.witnesses);
    cert.gb_Y = gY.elements();

    std::vector<std::size_t> base(t - 1);
    for (std::size_t i = 0; i < t - 1; ++i) base[i] = i;
    auto label = [&](const std::vector<std::size_t>& idx) {
      return "M_{" + render_tuple(idx) + ";" + render_tuple(idx) + "} = ";
    };
    std::vector<std::size_t> num_idx = with_last(base, n - 1);
    cert.quotient_numerator = label(num_idx) + minor(cong.transformed, {num_idx, num_idx}).to_string();
    cert.quotient_denominator = label(base) + minor(cong.transformed, {base, base}).to_string();
    return cert;
  }

  std::string detail = "descend_step: no draw in the retry budget met the descent heights (c = " + std::to_string(c) +
                       ", need ht I_t(O) = " + std::to_string(c) + " and ht I_{t-1}(N) = " + std::to_string(c + 1) +
                       ");" + log.str();
  if (every_draw_deficient) throw ChainObstruction(detail, last_ItO, last_It1N);
  throw GenericityExhausted(detail);
}

ChainCertificate biliaison_chain(const PolyMatrix& m, std::size_t t, std::uint64_t seed, const DescentOptions& opts) {
  if (m.structure() != Structure::Symmetric) throw PreconditionFailed("biliaison_chain: matrix is not symmetric");
  if (t < 1 || t > m.rows()) throw PreconditionFailed("biliaison_chain: t out of range");

  PolyMatrix current = m;
  std::size_t size = t;
  std::vector<StepCertificate> steps;
  // t = m gives a principal ideal; like t = 1 it is already a complete
  // intersection and the chain is empty.
  if (t > 1 && t < m.rows()) {
    for (std::size_t k = 0; size > 1; ++k) {
      try {
        steps.push_back(descend_step(current, size, seed + kRetryBudget * k, opts));
      } catch (LiaisonError& e) {
        e.step = k;
        throw;
      }
      current = steps.back().N;
      --size;
    }
  }

  IdealBasis terminal = minor_ideal(current, size);
  ChainCertificate chain(m, terminal);
  chain.t = t;
  chain.seed = seed;
  chain.steps = std::move(steps);
  if (terminal.is_zero()) throw PreconditionFailed("biliaison_chain: terminal ideal is zero");
  chain.terminal_mu = minimal_generator_count(terminal);
  chain.terminal_height = height(terminal);
  chain.terminal_is_ci = chain.terminal_mu == static_cast<std::size_t>(chain.terminal_height);
  return chain;
}

}  // namespace lforge
