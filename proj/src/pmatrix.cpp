#include "lforge/pmatrix.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "lforge/groebner.hpp"

namespace lforge {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::General: return "general";
    case Structure::Symmetric: return "symmetric";
    case Structure::AlmostSymmetric: return "almost_symmetric";
  }
  return "?";
}

Structure structure_from_string(const std::string& s) {
  if (s == "general") return Structure::General;
  if (s == "symmetric") return Structure::Symmetric;
  if (s == "almost_symmetric") return Structure::AlmostSymmetric;
  throw StructureError("unknown matrix structure '" + s + "'");
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries,
                       Structure structure)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), structure_(structure) {
  if (rows == 0 || cols == 0) throw StructureError("matrix dimensions must be positive");
  if (entries.size() != rows * cols) throw StructureError("entry count does not match dimensions");
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!e.ring()->compatible(*ring_)) throw RingMismatch("matrix entry from a different ring");
    entries_.push_back(e.in_ring(ring_));
  }
  auto symmetric_block = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  };
  switch (structure_) {
    case Structure::General: break;
    case Structure::Symmetric:
      if (rows_ != cols_) throw StructureError("symmetric matrix must be square");
      if (!symmetric_block(rows_)) throw StructureError("matrix tagged symmetric is not symmetric");
      break;
    case Structure::AlmostSymmetric:
      if (rows_ + 1 != cols_) throw StructureError("almost-symmetric matrix must be (m-1) x m");
      if (!symmetric_block(rows_)) throw StructureError("left block of almost-symmetric matrix is not symmetric");
      break;
  }
}

PolyMatrix PolyMatrix::parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows,
                             Structure structure) {
  if (rows.empty()) throw StructureError("matrix has no rows");
  std::size_t cols = rows.front().size();
  std::vector<Polynomial> entries;
  for (const auto& r : rows) {
    if (r.size() != cols) throw StructureError("ragged matrix rows");
    for (const auto& s : r) entries.push_back(parse_polynomial(s, ring));
  }
  return PolyMatrix(ring, rows.size(), cols, std::move(entries), structure);
}

PolyMatrix PolyMatrix::zero(const Ring& ring, std::size_t rows, std::size_t cols, Structure structure) {
  return PolyMatrix(ring, rows, cols, std::vector<Polynomial>(rows * cols, Polynomial(ring)), structure);
}

PolyMatrix PolyMatrix::transpose() const {
  std::vector<Polynomial> out;
  out.reserve(entries_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  Structure s = structure_ == Structure::Symmetric ? Structure::Symmetric : Structure::General;
  return PolyMatrix(ring_, cols_, rows_, std::move(out), s);
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw StructureError("matrix product: dimension mismatch");
  std::vector<Polynomial> out;
  out.reserve(rows_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Polynomial acc(ring_);
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero() || o.at(k, j).is_zero()) continue;
        acc = acc + at(i, k) * o.at(k, j).in_ring(ring_);
      }
      out.push_back(std::move(acc));
    }
  return PolyMatrix(ring_, rows_, o.cols_, std::move(out));
}

PolyMatrix PolyMatrix::with_structure(Structure s) const { return PolyMatrix(ring_, rows_, cols_, entries_, s); }

PolyMatrix PolyMatrix::in_ring(const Ring& target) const { return PolyMatrix(target, rows_, cols_, entries_, structure_); }

PolyMatrix PolyMatrix::over_field(const Field& field) const {
  for (const auto& e : entries_)
    for (const auto& t : e.terms())
      if (!ring_->field().is_integral(t.coeff))
        throw std::invalid_argument("cannot change field: entry has a non-integral coefficient");
  Ring target = make_ring(ring_->var_names(), field, ring_->order());
  std::vector<Polynomial> out;
  for (const auto& e : entries_) out.push_back(parse_polynomial(e.to_string(), target));
  return PolyMatrix(target, rows_, cols_, std::move(out), structure_);
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.structure_ == b.structure_ && a.entries_ == b.entries_;
}

// ---------------------------------------------------------------------------
// Determinants

std::optional<Polynomial> determinant_bareiss(std::vector<Polynomial> a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  Ring ring = a.front().ring();
  Polynomial prev = Polynomial::constant(ring, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Polynomial pivot = a[k * n + k];
    if (pivot.is_zero()) return std::nullopt;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = a[i * n + j] * pivot - a[i * n + k] * a[k * n + j];
        a[i * n + j] = divide_exact(num, prev);
      }
    }
    prev = pivot;
  }
  return a[n * n - 1];
}

Polynomial determinant_cofactor(const std::vector<Polynomial>& a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  if (n == 1) return a[0];
  Ring ring = a.front().ring();
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  Polynomial det(ring);
  std::vector<Polynomial> sub;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j].is_zero()) continue;
    sub.clear();
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) sub.push_back(a[r * n + c]);
    Polynomial term = a[j] * determinant_cofactor(sub, n - 1);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

Polynomial determinant(const std::vector<Polynomial>& square, std::size_t n) {
  if (auto d = determinant_bareiss(square, n)) return *d;
  return determinant_cofactor(square, n);
}

Polynomial ordered_minor(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor: unequal row and column counts");
  if (rows.empty()) return Polynomial::constant(m.ring(), 1);
  for (auto r : rows)
    if (r >= m.rows()) throw std::out_of_range("minor: row index out of range");
  for (auto c : cols)
    if (c >= m.cols()) throw std::out_of_range("minor: column index out of range");
  std::vector<Polynomial> sub;
  sub.reserve(rows.size() * cols.size());
  for (auto r : rows)
    for (auto c : cols) sub.push_back(m.at(r, c));
  return determinant(sub, rows.size());
}

Polynomial minor(const PolyMatrix& m, const MinorIndex& idx) {
  auto increasing = [](const std::vector<std::size_t>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(idx.rows) || !increasing(idx.cols)) throw std::invalid_argument("minor: indices must be strictly increasing");
  return ordered_minor(m, idx.rows, idx.cols);
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

IdealBasis minor_ideal(const PolyMatrix& m, std::size_t t) {
  if (t < 1 || t > std::min(m.rows(), m.cols())) throw std::out_of_range("minor_ideal: t out of range");
  std::vector<Polynomial> gens;
  for (const auto& rows : combinations(m.rows(), t))
    for (const auto& cols : combinations(m.cols(), t)) {
      Polynomial p = minor(m, {rows, cols});
      if (p.is_zero()) continue;
      Polynomial neg = -p;
      bool duplicate = std::any_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return g == p || g == neg; });
      if (!duplicate) gens.push_back(std::move(p));
    }
  return IdealBasis(m.ring(), std::move(gens));
}

// ---------------------------------------------------------------------------
// Gradings

std::optional<DegreeGrading> infer_grading(const PolyMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  // Nodes 0..R-1 are rows, R..R+C-1 columns; value = d_i or e_j.
  std::vector<std::optional<std::int64_t>> value(R + C);
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj(R + C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      const Polynomial& e = m.at(i, j);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous()) return std::nullopt;
      auto d = static_cast<std::int64_t>(*e.total_degree());
      adj[i].push_back({R + j, d});
      adj[R + j].push_back({i, d});
    }
  for (std::size_t start = 0; start < R + C; ++start) {
    if (value[start]) continue;
    std::vector<std::size_t> component;
    std::deque<std::size_t> queue{start};
    value[start] = 0;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      component.push_back(u);
      for (auto [v, d] : adj[u]) {
        std::int64_t want = d - *value[u];
        if (!value[v]) {
          value[v] = want;
          queue.push_back(v);
        } else if (*value[v] != want) {
          return std::nullopt;
        }
      }
    }
    // Normalize so the smallest row degree in the component is 0; a
    // component without rows pins its lone column at 0.
    std::optional<std::int64_t> min_row;
    for (auto u : component)
      if (u < R) min_row = min_row ? std::min(*min_row, *value[u]) : *value[u];
    if (min_row) {
      for (auto u : component) value[u] = u < R ? *value[u] - *min_row : *value[u] + *min_row;
    }
  }
  DegreeGrading g;
  for (std::size_t i = 0; i < R; ++i) g.row_degrees.push_back(*value[i]);
  for (std::size_t j = 0; j < C; ++j) g.col_degrees.push_back(*value[R + j]);
  g.consistent = true;
  return g;
}

bool is_t_homogeneous(const PolyMatrix& m, std::size_t t) {
  if (t < 1 || t > std::min(m.rows(), m.cols())) throw std::out_of_range("is_t_homogeneous: t out of range");
  if (infer_grading(m)) return true;
  for (std::size_t s = 1; s <= t; ++s)
    for (const auto& rows : combinations(m.rows(), s))
      for (const auto& cols : combinations(m.cols(), s))
        if (!minor(m, {rows, cols}).is_homogeneous()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Row and column deletion

PolyMatrix delete_last_row(const PolyMatrix& m) {
  if (m.structure() != Structure::Symmetric) throw StructureError("delete_last_row: matrix is not symmetric");
  if (m.rows() < 2) throw StructureError("delete_last_row: a 1x1 matrix has no almost-symmetric submatrix");
  std::vector<Polynomial> out(m.entries().begin(), m.entries().end() - static_cast<std::ptrdiff_t>(m.cols()));
  return PolyMatrix(m.ring(), m.rows() - 1, m.cols(), std::move(out), Structure::AlmostSymmetric);
}

PolyMatrix delete_last_column(const PolyMatrix& o) {
  if (o.structure() != Structure::AlmostSymmetric)
    throw StructureError("delete_last_column: matrix is not almost-symmetric");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < o.rows(); ++i)
    for (std::size_t j = 0; j + 1 < o.cols(); ++j) out.push_back(o.at(i, j));
  return PolyMatrix(o.ring(), o.rows(), o.cols() - 1, std::move(out), Structure::Symmetric);
}

// ---------------------------------------------------------------------------
// Congruences

PolyMatrix apply_congruence(const PolyMatrix& m, const PolyMatrix& p) {
  if (m.rows() != m.cols()) throw StructureError("apply_congruence: matrix must be square");
  if (p.rows() != m.rows() || p.cols() != m.cols()) throw StructureError("apply_congruence: transform has wrong size");
  PolyMatrix prod = p.transpose() * m * p;
  Structure s = m.structure() == Structure::Symmetric ? Structure::Symmetric : Structure::General;
  return prod.with_structure(s);
}

namespace {

class ScalarDraw {
 public:
  explicit ScalarDraw(std::uint64_t seed) : rng_(seed) {}
  long next() {
    std::uniform_int_distribution<int> dist(-kScalarBound, kScalarBound - 1);
    int v = dist(rng_);
    return v >= 0 ? v + 1 : v;
  }

 private:
  std::mt19937_64 rng_;
};

void monomials_of_degree(std::size_t nvars, std::uint32_t degree, std::size_t from, Monomial cur,
                         std::vector<Monomial>& out) {
  if (from + 1 == nvars) {
    cur.set(from, degree);
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= degree; ++e) {
    Monomial next = cur;
    next.set(from, degree - e);
    monomials_of_degree(nvars, e, from + 1, next, out);
  }
}

Polynomial random_form(const Ring& ring, std::uint32_t degree, ScalarDraw& draw) {
  std::vector<Monomial> monos;
  monomials_of_degree(ring->num_vars(), degree, 0, Monomial{}, monos);
  std::vector<Term> terms;
  for (const auto& mono : monos) terms.push_back({ring->field().from_int(draw.next()), mono});
  return Polynomial(ring, std::move(terms));
}

}  // namespace

Congruence generic_congruence(const PolyMatrix& m, std::uint64_t seed) {
  if (m.structure() != Structure::Symmetric) throw StructureError("generic_congruence: matrix is not symmetric");
  auto grading = infer_grading(m);
  if (!grading) throw std::invalid_argument("generic_congruence: matrix has no consistent degree grading");
  const std::size_t n = m.rows();
  const Ring& ring = m.ring();
  const auto& d = grading->row_degrees;
  const auto& e = grading->col_degrees;

  // P[k][i] may be nonzero only when the row and column degree shifts agree
  // and are non-negative; equal-degree classes get invertible scalar blocks.
  auto shift = [&](std::size_t k, std::size_t i) -> std::optional<std::int64_t> {
    std::int64_t dr = d[i] - d[k], dc = e[i] - e[k];
    if (dr != dc || dr < 0) return std::nullopt;
    return dr;
  };

  ScalarDraw draw(seed);
  std::vector<Polynomial> p(n * n, Polynomial(ring));
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t k = 0; k < n; ++k)
      if (d[k] == d[i] && e[k] == e[i]) cls.push_back(k);
    for (auto k : cls) assigned[k] = true;
    for (;;) {
      std::vector<Polynomial> block;
      for (std::size_t a = 0; a < cls.size(); ++a)
        for (std::size_t b = 0; b < cls.size(); ++b) block.push_back(Polynomial::constant(ring, draw.next()));
      if (determinant(block, cls.size()).is_zero()) continue;
      for (std::size_t a = 0; a < cls.size(); ++a)
        for (std::size_t b = 0; b < cls.size(); ++b) p[cls[a] * n + cls[b]] = block[a * cls.size() + b];
      break;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      auto s = shift(k, i);
      if (s && *s > 0) p[k * n + i] = random_form(ring, static_cast<std::uint32_t>(*s), draw);
    }
  PolyMatrix transform(ring, n, n, std::move(p));
  Congruence out{apply_congruence(m, transform), transform, {}};
  if (ring->field().characteristic() == 2) {
    bool zero_diagonal = true;
    for (std::size_t i = 0; i < n; ++i) zero_diagonal &= m.at(i, i).is_zero();
    if (zero_diagonal)
      out.warnings.push_back(
          "characteristic 2 with zero diagonal: symmetric congruences keep every diagonal entry zero, so F_mm stays 0");
  }
  return out;
}

}  // namespace lforge
