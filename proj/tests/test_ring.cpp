#include <doctest.h>

#include <random>

#include "lforge/corpus.hpp"
#include "lforge/ring.hpp"
#include "oracles.hpp"

using namespace lforge;

namespace {

Ring q4() { return make_ring(4, Field::rationals()); }
Polynomial P(const char* s, const Ring& r) { return parse_polynomial(s, r); }

}  // namespace

TEST_SUITE("ring") {
  TEST_CASE("fields") {
    CHECK_THROWS_AS(Field::prime(4), std::invalid_argument);
    CHECK_THROWS_AS(Field::prime(1), std::invalid_argument);
    Field f7 = Field::prime(7);
    CHECK(f7.equal(f7.mul(f7.from_int(3), f7.inv(f7.from_int(3))), f7.one()));
    CHECK(f7.to_string(f7.from_int(6)) == "-1");
    Field q = Field::rationals();
    CHECK(q.to_string(q.mul(q.from_int(2), q.inv(q.from_int(6)))) == "1/3");
    CHECK_THROWS_AS(q.inv(q.zero()), std::domain_error);
  }

  TEST_CASE("ring construction validates names") {
    CHECK_THROWS(make_ring({"x", "x"}, Field::rationals()));
    CHECK_THROWS(make_ring({"1x"}, Field::rationals()));
    CHECK(make_ring(3, Field::rationals())->var_names() == std::vector<std::string>{"x0", "x1", "x2"});
  }

  TEST_CASE("parse and render") {
    Ring r = make_ring(6, Field::rationals());
    auto f = P("x0*x5 - x1^2", r);
    CHECK(f.size() == 2);
    CHECK(f.to_string() == "-x1^2 + x0*x5");

    Ring xq = make_ring({"x", "y"}, Field::rationals());
    Ring x2 = make_ring({"x", "y"}, Field::prime(2));
    CHECK(P("x + x", xq).to_string() == "2*x");
    CHECK(P("x + x", x2).is_zero());
    CHECK(P("(x + y)^2", x2) == P("x^2 + y^2", x2));
    CHECK(P("  3 * x ^ 2*y - (y - x) ", xq) == P("3*x^2*y + x - y", xq));

    Ring x2r = make_ring({"x2"}, Field::rationals());
    CHECK_THROWS_AS(P("2*x2 + a*x2", x2r), ParseError);
    CHECK_THROWS_AS(P("x/2", xq), ParseError);
    CHECK_THROWS_AS(P("1.5*x", xq), ParseError);
    CHECK_THROWS_AS(P("x +", xq), ParseError);
    CHECK_THROWS_AS(P("x^", xq), ParseError);
    CHECK_THROWS_AS(P("(x", xq), ParseError);
  }

  TEST_CASE("arithmetic examples") {
    Ring r = q4();
    CHECK(P("(x0 + x1)", r) * P("x0 - x1", r) == P("x0^2 - x1^2", r));
    auto f = P("x0*x3 + 7", r);
    CHECK(f + Polynomial(r) == f);
    CHECK(poly_add(f, f) == poly_scale(f, r->field().from_int(2)));
    CHECK(poly_mul(f, Polynomial::constant(r, 1)) == f);
    CHECK_THROWS_AS(f + P("x0", make_ring(4, Field::prime(5))), RingMismatch);
    CHECK(divide_exact(P("x0^2 - x1^2", r), P("x0 + x1", r)) == P("x0 - x1", r));
    CHECK_THROWS_AS(divide_exact(P("x0^2 + x1^2", r), P("x0 + x1", r)), std::domain_error);
    CHECK(variable_valuation(P("x2^3*x0 + x2^2", r), 2) == 2);
  }

  TEST_CASE("degree and homogeneity") {
    Ring r = make_ring(6, Field::rationals());
    CHECK(*P("x0*x5 - x1^2", r).total_degree() == 2);
    CHECK(P("x0*x5 - x1^2", r).is_homogeneous());
    Ring x = make_ring({"x"}, Field::rationals());
    CHECK(*P("x + x^2", x).total_degree() == 2);
    CHECK_FALSE(P("x + x^2", x).is_homogeneous());
    CHECK_FALSE(Polynomial(x).total_degree().has_value());
    CHECK(Polynomial(x).is_homogeneous());
  }

  TEST_CASE("orders") {
    Ring g = make_ring(3, Field::rationals());
    Ring l = with_order(g, MonomialOrder::lex());
    Ring e = with_order(g, MonomialOrder::elimination(1));
    // x0*x2 vs x1^2: grevlex prefers x1^2 (smaller last exponent), lex x0*x2.
    CHECK(P("x0*x2 + x1^2", g).leading_monomial() == P("x1^2", g).leading_monomial());
    CHECK(P("x0*x2 + x1^2", l).leading_monomial() == P("x0*x2", l).leading_monomial());
    // Elimination: anything containing x0 beats pure x1, x2 monomials.
    CHECK(P("x0 + x1^5*x2^3", e).leading_monomial() == P("x0", e).leading_monomial());
    CHECK(MonomialOrder::from_name("elim:2") == MonomialOrder::elimination(2));
    CHECK_THROWS(MonomialOrder::from_name("deglex"));
  }

  TEST_CASE("property: ring axioms on random polynomials") {
    std::mt19937_64 rng(1234);
    for (Ring r : {q4(), make_ring(4, Field::prime(32003)), make_ring(3, Field::prime(2))}) {
      for (int k = 0; k < 40; ++k) {
        auto f = oracle::random_poly(rng, r, 3, 5);
        auto g = oracle::random_poly(rng, r, 3, 5);
        auto h = oracle::random_poly(rng, r, 3, 5);
        CHECK((f + g) + h == f + (g + h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f * g == g * f);
        CHECK((f - f).is_zero());
        // Canonical form: a scrambled term list normalizes to the same value.
        std::vector<Term> terms = f.terms();
        std::shuffle(terms.begin(), terms.end(), rng);
        if (!terms.empty()) terms.push_back({r->field().from_int(0), terms.front().mono});
        CHECK(Polynomial(r, terms) == f);
      }
    }
  }

  TEST_CASE("property: monomial order laws") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint32_t> ex(0, 3);
    for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elimination(2)}) {
      const std::size_t n = 4;
      for (int k = 0; k < 300; ++k) {
        auto draw = [&] {
          std::vector<std::uint32_t> e(n);
          for (auto& x : e) x = ex(rng);
          return Monomial(e);
        };
        Monomial a = draw(), b = draw(), c = draw();
        int ab = order.compare(a, b, n), ba = order.compare(b, a, n);
        CHECK(ab == -ba);
        CHECK((ab == 0) == (a == b));
        if (ab < 0 && order.compare(b, c, n) < 0) CHECK(order.compare(a, c, n) < 0);
        if (ab < 0) CHECK(order.compare(a * c, b * c, n) < 0);
        if (!a.is_one()) CHECK(order.compare(Monomial(), a, n) < 0);
      }
    }
  }

  TEST_CASE("property: parse(render(f)) = f on corpus polynomials") {
    for (const auto& name : builtin_names()) {
      CorpusEntry e = builtin(name);
      std::vector<const PolyMatrix*> ms{&e.matrix};
      for (const auto& [k, m] : e.extras) ms.push_back(&m);
      for (const auto* m : ms)
        for (const auto& p : m->entries()) CHECK(parse_polynomial(p.to_string(), m->ring()) == p);
    }
    std::mt19937_64 rng(7);
    Ring r = q4();
    for (int k = 0; k < 50; ++k) {
      auto f = oracle::random_poly(rng, r, 4, 6);
      CHECK(parse_polynomial(f.to_string(), r) == f);
    }
  }
}
