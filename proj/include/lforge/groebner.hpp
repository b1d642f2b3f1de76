#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lforge/ring.hpp"

namespace lforge {

/// Generator list of an ideal. Zero generators are dropped on construction.
class IdealBasis {
 public:
  explicit IdealBasis(Ring ring) : ring_(std::move(ring)) {}
  IdealBasis(Ring ring, std::vector<Polynomial> generators);

  static IdealBasis parse(const Ring& ring, const std::vector<std::string>& generators);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_homogeneous() const;

  IdealBasis operator+(const IdealBasis& o) const;
  IdealBasis in_ring(const Ring& target) const;

 private:
  Ring ring_;
  std::vector<Polynomial> gens_;
};

/// Reduced Groebner basis: monic elements sorted by ascending leading
/// monomial, so the element list is canonical for the ideal and order.
class GroebnerBasis {
 public:
  GroebnerBasis(Ring ring, std::vector<Polynomial> reduced);

  const Ring& ring() const { return ring_; }
  const MonomialOrder& order() const { return ring_->order(); }
  const std::vector<Polynomial>& elements() const { return elems_; }
  const std::vector<Monomial>& leading_monomials() const { return lms_; }
  bool is_unit() const;
  bool is_zero() const { return elems_.empty(); }

 private:
  Ring ring_;
  std::vector<Polynomial> elems_;
  std::vector<Monomial> lms_;
};

struct BuchbergerOptions {
  /// For homogeneous input only: ignore S-pairs above this degree. The
  /// result is then a basis up to that degree, not a full basis.
  std::optional<std::uint32_t> degree_bound;
};

GroebnerBasis buchberger(const IdealBasis& ideal, const MonomialOrder& order, const BuchbergerOptions& opts = {});
/// Uses the ideal's ring order.
GroebnerBasis buchberger(const IdealBasis& ideal);

/// Complete remainder of f on division by G. Throws RingMismatch if f is
/// not in G's ring (variables, field and order).
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g);
/// Remainder with respect to an arbitrary generator list (not necessarily a
/// Groebner basis); all polynomials must share one ring.
Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& divisors);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Dimension of R/<G>: largest set of variables containing the support of
/// no leading monomial. -1 for the unit ideal.
int krull_dimension(const GroebnerBasis& g);
/// num_vars - krull_dimension. Homogeneous input only (std::invalid_argument
/// otherwise). The unit ideal reports num_vars + 1.
int height(const IdealBasis& ideal);

/// (I : f) and (I : f^inf). f must be nonzero.
IdealBasis ideal_quotient(const IdealBasis& ideal, const Polynomial& f);
IdealBasis saturate_by(const IdealBasis& ideal, const Polynomial& f);
/// (I : x_var^inf) for homogeneous I, via a reverse-lex basis with the
/// variable placed last.
IdealBasis saturate_by_variable(const IdealBasis& ideal, std::size_t var);
/// I : m^inf for the irrelevant ideal m = (x_0, ..., x_n).
IdealBasis saturate_irrelevant(const IdealBasis& ideal);
IdealBasis intersect(const IdealBasis& a, const IdealBasis& b);
/// Drops the first `count` variables of an elimination basis.
IdealBasis eliminate(const IdealBasis& ideal, std::size_t count);

bool ideal_contains(const IdealBasis& big, const IdealBasis& small);
bool ideal_equal(const IdealBasis& a, const IdealBasis& b);
bool ideal_contains(const GroebnerBasis& big, const IdealBasis& small);

/// Size of a minimal homogeneous generating set.
std::size_t minimal_generator_count(const IdealBasis& ideal);
/// mu(I) == height(I). Throws std::invalid_argument for the zero or unit ideal.
bool is_complete_intersection(const IdealBasis& ideal);

}  // namespace lforge
