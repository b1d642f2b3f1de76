#include "lforge/ring.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace lforge {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t r = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("characteristic " + std::to_string(p) + " is not a prime below 2^31");
  return Field(Kind::Prime, p);
}

std::int64_t Field::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return r < 0 ? r + p_ : r;
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const {
  if (kind_ == Kind::Prime) return reduce(v);
  return mpq_class(v);
}

Scalar Field::from_mpz(const mpz_class& v) const {
  if (kind_ == Kind::Prime) {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return static_cast<std::int64_t>(r.get_si());
  }
  return mpq_class(v);
}

bool Field::is_zero(const Scalar& a) const {
  if (auto* i = std::get_if<std::int64_t>(&a)) return *i == 0;
  return sgn(std::get<mpq_class>(a)) == 0;
}

bool Field::is_one(const Scalar& a) const {
  if (auto* i = std::get_if<std::int64_t>(&a)) return *i == 1;
  return std::get<mpq_class>(a) == 1;
}

bool Field::equal(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Prime) return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
  return std::get<mpq_class>(a) == std::get<mpq_class>(b);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Prime) {
    std::int64_t r = std::get<std::int64_t>(a) + std::get<std::int64_t>(b);
    return r >= p_ ? r - p_ : r;
  }
  return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Prime) {
    std::int64_t r = std::get<std::int64_t>(a) - std::get<std::int64_t>(b);
    return r < 0 ? r + p_ : r;
  }
  return mpq_class(std::get<mpq_class>(a) - std::get<mpq_class>(b));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Prime) return std::get<std::int64_t>(a) * std::get<std::int64_t>(b) % p_;
  return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
}

Scalar Field::neg(const Scalar& a) const {
  if (kind_ == Kind::Prime) {
    std::int64_t v = std::get<std::int64_t>(a);
    return v == 0 ? 0 : p_ - v;
  }
  return mpq_class(-std::get<mpq_class>(a));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (kind_ == Kind::Prime) return mod_pow(std::get<std::int64_t>(a), p_ - 2, p_);
  return mpq_class(1 / std::get<mpq_class>(a));
}

std::string Field::to_string(const Scalar& a) const {
  if (kind_ == Kind::Prime) {
    std::int64_t v = std::get<std::int64_t>(a);
    if (v > static_cast<std::int64_t>(p_) / 2) v -= p_;
    return std::to_string(v);
  }
  return std::get<mpq_class>(a).get_str();
}

bool Field::is_integral(const Scalar& a) const {
  if (kind_ == Kind::Prime) return true;
  return std::get<mpq_class>(a).get_den() == 1;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const std::vector<std::uint32_t>& exponents) {
  if (exponents.size() > kMaxVars) throw std::invalid_argument("too many variables");
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

void Monomial::set(std::size_t i, std::uint32_t v) {
  if (v > 0xffff) throw std::overflow_error("exponent overflow");
  deg_ = deg_ - e_[i] + v;
  e_[i] = static_cast<std::uint16_t>(v);
  if (v) support_ |= (1u << i);
  else support_ &= ~(1u << i);
}

bool Monomial::divides(const Monomial& other) const {
  if ((support_ & ~other.support_) != 0 || deg_ > other.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint32_t v = std::uint32_t(e_[i]) + other.e_[i];
    if (v > 0xffff) throw std::overflow_error("exponent overflow");
    r.e_[i] = static_cast<std::uint16_t>(v);
  }
  r.deg_ = deg_ + other.deg_;
  r.support_ = support_ | other.support_;
  return r;
}

Monomial Monomial::quotient_of(const Monomial& dividend) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = static_cast<std::uint16_t>(dividend.e_[i] - e_[i]);
    if (r.e_[i]) r.support_ |= (1u << i);
  }
  r.deg_ = dividend.deg_ - deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::max(e_[i], other.e_[i]);
    r.deg_ += r.e_[i];
  }
  r.support_ = support_ | other.support_;
  return r;
}

std::vector<std::uint32_t> Monomial::exponents(std::size_t num_vars) const {
  return std::vector<std::uint32_t>(e_.begin(), e_.begin() + num_vars);
}

// ---------------------------------------------------------------------------
// MonomialOrder

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint32_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t n) const {
  switch (kind_) {
    case Kind::GrevLex: {
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      return 0;
    }
    case Kind::Lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::Elimination: {
      std::size_t k = std::min(block_, n);
      if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::GrevLex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Elimination: return "elim:" + std::to_string(block_);
  }
  return "?";
}

MonomialOrder MonomialOrder::from_name(std::string_view s) {
  if (s == "grevlex") return grevlex();
  if (s == "lex") return lex();
  if (s.substr(0, 5) == "elim:") {
    std::size_t k = std::stoul(std::string(s.substr(5)));
    return elimination(k);
  }
  throw std::invalid_argument("unknown monomial order '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// PolyRing

PolyRing::PolyRing(std::vector<std::string> var_names, Field field, MonomialOrder order)
    : names_(std::move(var_names)), field_(field), order_(order) {
  if (names_.empty()) throw std::invalid_argument("a ring needs at least one variable");
  if (names_.size() > kMaxVars) throw std::invalid_argument("at most 32 variables are supported");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
      throw std::invalid_argument("invalid variable name '" + n + "'");
    for (char ch : n)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw std::invalid_argument("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> PolyRing::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Ring make_ring(std::vector<std::string> var_names, Field field, MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(var_names), field, order);
}

Ring make_ring(std::size_t num_vars, Field field, MonomialOrder order) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars; ++i) names.push_back("x" + std::to_string(i));
  return make_ring(std::move(names), field, order);
}

Ring with_order(const Ring& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return make_ring(ring->var_names(), ring->field(), order);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(Ring ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const PolyRing& R = *ring_;
  const Field& K = R.field();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return R.compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = K.add(terms_.back().coeff, t.coeff);
      if (K.is_zero(terms_.back().coeff)) terms_.pop_back();
    } else if (!K.is_zero(t.coeff)) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial from_sorted_terms(Ring ring, std::vector<Term> terms) {
  return Polynomial(std::move(ring), std::move(terms), Polynomial::Trusted{});
}

Polynomial Polynomial::constant(Ring ring, const Scalar& c) {
  if (ring->field().is_zero(c)) return Polynomial(std::move(ring));
  std::vector<Term> t{{c, Monomial{}}};
  return Polynomial(std::move(ring), std::move(t), Trusted{});
}

Polynomial Polynomial::constant(Ring ring, long c) {
  Scalar s = ring->field().from_int(c);
  return constant(std::move(ring), s);
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  if (index >= ring->num_vars()) throw std::out_of_range("variable index out of range");
  Monomial m;
  m.set(index, 1);
  return monomial(std::move(ring), ring->field().one(), m);
}

Polynomial Polynomial::monomial(Ring ring, const Scalar& c, const Monomial& m) {
  if (ring->field().is_zero(c)) return Polynomial(std::move(ring));
  std::vector<Term> t{{c, m}};
  return Polynomial(std::move(ring), std::move(t), Trusted{});
}

std::optional<std::uint32_t> Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring() != b.ring() && !(*a.ring() == *b.ring()))
    throw RingMismatch("polynomials belong to different rings");
}

}  // namespace

Polynomial add_scaled(const Polynomial& f, const Scalar& c, const Monomial& m, const Polynomial& g) {
  require_same_ring(f, g);
  const PolyRing& R = *f.ring_;
  const Field& K = R.field();
  if (K.is_zero(c) || g.is_zero()) return f;
  std::vector<Term> out;
  out.reserve(f.terms_.size() + g.terms_.size());
  auto fi = f.terms_.begin(), fe = f.terms_.end();
  auto gi = g.terms_.begin(), ge = g.terms_.end();
  Monomial gm;
  bool have_gm = false;
  while (fi != fe || gi != ge) {
    if (gi != ge && !have_gm) {
      gm = gi->mono * m;
      have_gm = true;
    }
    int cmp;
    if (fi == fe) cmp = -1;
    else if (gi == ge) cmp = 1;
    else cmp = R.compare(fi->mono, gm);
    if (cmp > 0) {
      out.push_back(*fi++);
    } else if (cmp < 0) {
      out.push_back({K.mul(c, gi->coeff), gm});
      ++gi;
      have_gm = false;
    } else {
      Scalar s = K.add(fi->coeff, K.mul(c, gi->coeff));
      if (!K.is_zero(s)) out.push_back({std::move(s), fi->mono});
      ++fi;
      ++gi;
      have_gm = false;
    }
  }
  return Polynomial(f.ring_, std::move(out), Polynomial::Trusted{});
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  return add_scaled(*this, ring_->field().one(), Monomial{}, o);
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return add_scaled(*this, ring_->field().neg(ring_->field().one()), Monomial{}, o);
}

Polynomial Polynomial::operator-() const { return scaled(ring_->field().neg(ring_->field().one())); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(*this, o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  const Field& K = ring_->field();
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({K.mul(a.coeff, b.coeff), a.mono * b.mono});
  return Polynomial(ring_, std::move(prod));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  const Field& K = ring_->field();
  if (K.is_zero(c)) return Polynomial(ring_);
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = K.mul(t.coeff, c);
  return Polynomial(ring_, std::move(out), Trusted{});
}

Polynomial Polynomial::times_term(const Scalar& c, const Monomial& m) const {
  const Field& K = ring_->field();
  if (K.is_zero(c)) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({K.mul(t.coeff, c), t.mono * m});
  return Polynomial(ring_, std::move(out), Trusted{});
}

Polynomial Polynomial::monic() const {
  if (is_zero() || ring_->field().is_one(leading_coeff())) return *this;
  return scaled(ring_->field().inv(leading_coeff()));
}

Polynomial Polynomial::in_ring(const Ring& target) const {
  if (!ring_->compatible(*target)) throw RingMismatch("cannot move polynomial between incompatible rings");
  if (*ring_ == *target) return Polynomial(target, terms_, Trusted{});
  return Polynomial(target, terms_);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!a.ring_->compatible(*b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  const Field& K = a.ring_->field();
  if (a.ring_->order() != b.ring_->order()) return a == b.in_ring(a.ring_);
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !K.equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
  }
  return true;
}

std::string render_monomial(const Monomial& m, const PolyRing& ring) {
  std::string s;
  for (std::size_t i = 0; i < ring.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.var_names()[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const Field& K = ring_->field();
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = K.to_string(t.coeff);
    bool negative = c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += render_monomial(t.mono, *ring_);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  const Field& K = f.ring()->field();
  Polynomial q(f.ring());
  Polynomial r = f;
  Scalar inv_lc = K.inv(g.leading_coeff());
  while (!r.is_zero()) {
    const Monomial& lm = r.leading_monomial();
    if (!g.leading_monomial().divides(lm)) throw std::domain_error("inexact polynomial division");
    Monomial m = g.leading_monomial().quotient_of(lm);
    Scalar c = K.mul(r.leading_coeff(), inv_lc);
    q = q + Polynomial::monomial(f.ring(), c, m);
    r = add_scaled(r, K.neg(c), m, g);
  }
  return q;
}

std::uint32_t variable_valuation(const Polynomial& f, std::size_t var) {
  if (f.is_zero()) return 0;
  std::uint32_t v = 0xffffffffu;
  for (const auto& t : f.terms()) v = std::min(v, t.mono[var]);
  return v;
}

Polynomial divide_by_variable_power(const Polynomial& f, std::size_t var, std::uint32_t power) {
  if (power == 0) return f;
  std::vector<Term> out = f.terms();
  for (auto& t : out) {
    if (t.mono[var] < power) throw std::domain_error("variable power does not divide polynomial");
    t.mono.set(var, t.mono[var] - power);
  }
  // Dividing every term by the same variable power preserves a grevlex
  // order only when the variable is last; re-normalize in general.
  return Polynomial(f.ring(), std::move(out));
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g) { return f + g; }
Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }
Polynomial poly_scale(const Polynomial& f, const Scalar& c) { return f.scaled(c); }

// ---------------------------------------------------------------------------
// Parser
//
//   expr    := ['+'|'-'] product (('+'|'-') product)*
//   product := power ('*' power)*
//   power   := atom ('^' uint)?
//   atom    := uint | name | '(' expr ')'

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    char c = peek();
    bool negate = false;
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    Polynomial first = product();
    acc = negate ? -first : first;
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial next = product();
      acc = c == '+' ? acc + next : acc - next;
    }
    return acc;
  }

  Polynomial product() {
    Polynomial acc = power();
    while (peek() == '*') {
      ++pos_;
      acc = acc * power();
    }
    if (peek() == '/') fail("division is not allowed");
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
      mpz_class e = digits();
      if (e > 4096) fail("exponent too large");
      Polynomial r = Polynomial::constant(ring_, 1);
      for (unsigned long i = 0; i < e.get_ui(); ++i) r = r * base;
      return r;
    }
    return base;
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
      fail("floating-point literals are not allowed");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = digits();
      return Polynomial::constant(ring_, ring_->field().from_mpz(v));
    }
    if (c == '.') fail("floating-point literals are not allowed");
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->var_index(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const Ring& ring_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

}  // namespace lforge
