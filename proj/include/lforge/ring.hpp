#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace lforge {

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Coefficient fields

/// A field element. Prime-field residues live in the integer alternative,
/// rationals in the mpq alternative; which one is used is decided by the
/// owning Field, never mixed within a ring.
using Scalar = std::variant<std::int64_t, mpq_class>;

class Field {
 public:
  enum class Kind { Rationals, Prime };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is prime and below 2^31.
  static Field prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_prime_field() const { return kind_ == Kind::Prime; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_mpz(const mpz_class& v) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool equal(const Scalar& a, const Scalar& b) const;
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws std::domain_error on zero.
  Scalar inv(const Scalar& a) const;

  /// Prime-field residues render in the symmetric range (-p/2, p/2].
  std::string to_string(const Scalar& a) const;
  /// True when the element is an integer (always for prime fields).
  bool is_integral(const Scalar& a) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  std::int64_t reduce(std::int64_t v) const;

  Kind kind_;
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Monomials and orders

inline constexpr std::size_t kMaxVars = 32;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const std::vector<std::uint32_t>& exponents);

  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }
  /// Bit i set iff variable i occurs.
  std::uint32_t support() const { return support_; }

  void set(std::size_t i, std::uint32_t v);

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Precondition: divides(other) is false is a logic error.
  Monomial quotient_of(const Monomial& dividend) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const { return (support_ & other.support_) == 0; }

  std::vector<std::uint32_t> exponents(std::size_t num_vars) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
  std::uint32_t support_ = 0;
};

class MonomialOrder {
 public:
  enum class Kind { GrevLex, Lex, Elimination };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  /// Eliminates the first `block` variables: block-1 grevlex, then block-2 grevlex.
  static MonomialOrder elimination(std::size_t block) { return MonomialOrder(Kind::Elimination, block); }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  /// Three-way comparison over the first num_vars variables.
  int compare(const Monomial& a, const Monomial& b, std::size_t num_vars) const;

  std::string name() const;
  /// Accepts "grevlex", "lex", "elim:<k>".
  static MonomialOrder from_name(std::string_view s);

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind k, std::size_t b) : kind_(k), block_(b) {}
  Kind kind_;
  std::size_t block_;
};

// ---------------------------------------------------------------------------
// Rings

class PolyRing {
 public:
  PolyRing(std::vector<std::string> var_names, Field field, MonomialOrder order = MonomialOrder::grevlex());

  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& var_names() const { return names_; }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> var_index(std::string_view name) const;

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, names_.size()); }

  /// Same variables and field; the order may differ.
  bool compatible(const PolyRing& other) const { return names_ == other.names_ && field_ == other.field_; }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.names_ == b.names_ && a.field_ == b.field_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> names_;
  Field field_;
  MonomialOrder order_;
};

using Ring = std::shared_ptr<const PolyRing>;

Ring make_ring(std::vector<std::string> var_names, Field field, MonomialOrder order = MonomialOrder::grevlex());
/// Variables x0..x{n-1}.
Ring make_ring(std::size_t num_vars, Field field, MonomialOrder order = MonomialOrder::grevlex());
Ring with_order(const Ring& ring, MonomialOrder order);

// ---------------------------------------------------------------------------
// Polynomials

struct Term {
  Scalar coeff;
  Monomial mono;
};

/// Sparse polynomial; terms are strictly descending in the ring order with
/// no zero coefficients, so structural equality is mathematical equality.
class Polynomial {
 public:
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
  /// Normalizes: sorts, merges equal monomials, drops zeros.
  Polynomial(Ring ring, std::vector<Term> terms);

  static Polynomial constant(Ring ring, const Scalar& c);
  static Polynomial constant(Ring ring, long c);
  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial monomial(Ring ring, const Scalar& c, const Monomial& m);

  const Ring& ring() const { return ring_; }
  const PolyRing& ring_ref() const { return *ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }

  /// Degree of the highest-degree term; nullopt for the zero polynomial.
  std::optional<std::uint32_t> total_degree() const;
  /// Zero counts as homogeneous.
  bool is_homogeneous() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_term(const Scalar& c, const Monomial& m) const;
  /// Leading coefficient 1 (zero stays zero).
  Polynomial monic() const;

  /// Re-sort into another ring with the same variables and field.
  Polynomial in_ring(const Ring& target) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  struct Trusted {};
  Polynomial(Ring ring, std::vector<Term> terms, Trusted) : ring_(std::move(ring)), terms_(std::move(terms)) {}
  friend Polynomial add_scaled(const Polynomial&, const Scalar&, const Monomial&, const Polynomial&);
  friend Polynomial from_sorted_terms(Ring ring, std::vector<Term> terms);

  Ring ring_;
  std::vector<Term> terms_;
};

/// f + c*m*g in one merge pass.
Polynomial add_scaled(const Polynomial& f, const Scalar& c, const Monomial& m, const Polynomial& g);
/// Terms must already be strictly descending with nonzero coefficients.
Polynomial from_sorted_terms(Ring ring, std::vector<Term> terms);

/// Exact quotient f / g; throws std::domain_error if g does not divide f.
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);
/// Largest power of variable `var` dividing every term of f.
std::uint32_t variable_valuation(const Polynomial& f, std::size_t var);
Polynomial divide_by_variable_power(const Polynomial& f, std::size_t var, std::uint32_t power);

Polynomial poly_add(const Polynomial& f, const Polynomial& g);
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);
Polynomial poly_scale(const Polynomial& f, const Scalar& c);

Polynomial parse_polynomial(std::string_view text, const Ring& ring);

std::string render_monomial(const Monomial& m, const PolyRing& ring);

}  // namespace lforge
