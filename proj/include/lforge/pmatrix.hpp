#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lforge/ring.hpp"

namespace lforge {

class IdealBasis;

enum class Structure { General, Symmetric, AlmostSymmetric };

std::string to_string(Structure s);
Structure structure_from_string(const std::string& s);

class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rectangular matrix of polynomials, row-major. A Symmetric tag requires a
/// square symmetric matrix; AlmostSymmetric requires rows = cols - 1 with a
/// symmetric left rows x rows block. Tags are validated on construction.
class PolyMatrix {
 public:
  PolyMatrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries,
             Structure structure = Structure::General);
  /// Entries given as text in the polynomial grammar.
  static PolyMatrix parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows,
                          Structure structure = Structure::General);
  static PolyMatrix zero(const Ring& ring, std::size_t rows, std::size_t cols,
                         Structure structure = Structure::General);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Structure structure() const { return structure_; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  const std::vector<Polynomial>& entries() const { return entries_; }

  PolyMatrix transpose() const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  /// Same entries, new structure tag (validated).
  PolyMatrix with_structure(Structure s) const;
  PolyMatrix in_ring(const Ring& target) const;

  /// Reinterprets all entries over another field with the same variables
  /// by re-parsing their integer-coefficient text form.
  PolyMatrix over_field(const Field& field) const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
  Structure structure_;
};

/// Index sets of a minor; both strictly increasing and of equal length.
struct MinorIndex {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  friend auto operator<=>(const MinorIndex&, const MinorIndex&) = default;
};

/// Row degrees d and column degrees e with deg M[i][j] = d_i + e_j for
/// every nonzero entry.
struct DegreeGrading {
  std::vector<std::int64_t> row_degrees;
  std::vector<std::int64_t> col_degrees;
  bool consistent = true;
};

/// Determinant of a square polynomial matrix, exact.
Polynomial determinant(const std::vector<Polynomial>& square, std::size_t n);
/// Fraction-free Bareiss elimination without pivoting; nullopt when a zero
/// pivot blocks elimination.
std::optional<Polynomial> determinant_bareiss(std::vector<Polynomial> square, std::size_t n);
/// Laplace expansion along the first row.
Polynomial determinant_cofactor(const std::vector<Polynomial>& square, std::size_t n);

Polynomial minor(const PolyMatrix& m, const MinorIndex& idx);
/// Determinant of the submatrix whose rows and columns are taken in the
/// given order (indices distinct but not necessarily increasing).
Polynomial ordered_minor(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// Generators of I_t(M): every t x t minor, zeros dropped and duplicates
/// (equal up to sign) removed, in lexicographic MinorIndex order.
IdealBasis minor_ideal(const PolyMatrix& m, std::size_t t);

std::optional<DegreeGrading> infer_grading(const PolyMatrix& m);
bool is_t_homogeneous(const PolyMatrix& m, std::size_t t);

PolyMatrix delete_last_row(const PolyMatrix& symmetric);
PolyMatrix delete_last_column(const PolyMatrix& almost_symmetric);

struct Congruence {
  PolyMatrix transformed;  // P^T M P
  PolyMatrix transform;    // P
  std::vector<std::string> warnings;
};

/// Scalars for generic draws come from {-bound..bound} \ {0}.
inline constexpr int kScalarBound = 16;

/// M' = P^T M P for a random graded invertible P drawn from `seed`.
Congruence generic_congruence(const PolyMatrix& m, std::uint64_t seed);
/// M' = P^T M P for a caller-supplied square P.
PolyMatrix apply_congruence(const PolyMatrix& m, const PolyMatrix& p);

}  // namespace lforge
