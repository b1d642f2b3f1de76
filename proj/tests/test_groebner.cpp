#include <doctest.h>

#include <random>

#include "lforge/corpus.hpp"
#include "lforge/groebner.hpp"
#include "lforge/liaison.hpp"
#include "oracles.hpp"

using namespace lforge;

namespace {

IdealBasis I(const Ring& r, std::vector<std::string> gens) { return IdealBasis::parse(r, gens); }
Polynomial P(const char* s, const Ring& r) { return parse_polynomial(s, r); }

Ring xyzw(Field f = Field::rationals()) { return make_ring({"x", "y", "z", "w"}, f); }

void check_spoly_closure(const GroebnerBasis& g) {
  const auto& e = g.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) CHECK(normal_form(s_polynomial(e[i], e[j]), g).is_zero());
}

/// Minor ideals of every corpus entry and its auxiliary matrices.
std::vector<std::pair<std::string, IdealBasis>> corpus_ideals() {
  std::vector<std::pair<std::string, IdealBasis>> out;
  for (const auto& n : builtin_names()) {
    auto e = builtin(n);
    out.push_back({n, minor_ideal(e.matrix, e.t)});
    for (const auto& [k, m] : e.extras)
      for (std::size_t t = 1; t <= std::min(m.rows(), m.cols()); ++t)
        out.push_back({n + "/" + k + "/" + std::to_string(t), minor_ideal(m, t)});
  }
  return out;
}

/// S : m computed one variable at a time, as the intersection of S : x_i.
IdealBasis colon_by_each_variable(const IdealBasis& s) {
  std::optional<IdealBasis> acc;
  for (std::size_t v = 0; v < s.ring()->num_vars(); ++v) {
    auto q = ideal_quotient(s, Polynomial::variable(s.ring(), v));
    acc = acc ? intersect(*acc, q) : q;
  }
  return *acc;
}

}  // namespace

TEST_SUITE("groebner") {
  TEST_CASE("basis examples") {
    Ring lex = make_ring({"x", "y"}, Field::rationals(), MonomialOrder::lex());
    auto g = buchberger(I(lex, {"x^2 - y", "y^2"}));
    CHECK(g.elements() == oracle::naive_buchberger(I(lex, {"x^2 - y", "y^2"}).generators()));
    CHECK(g.elements() == std::vector<Polynomial>{P("y^2", lex), P("x^2 - y", lex)});

    Ring r = make_ring({"x", "y"}, Field::rationals());
    auto unit = buchberger(I(r, {"x + 1", "x"}));
    CHECK(unit.is_unit());
    CHECK(unit.elements() == std::vector<Polynomial>{Polynomial::constant(r, 1)});
    CHECK(buchberger(I(r, {"x", "x^2"})).elements() == std::vector<Polynomial>{P("x", r)});
    CHECK(buchberger(IdealBasis(r)).is_zero());
  }

  TEST_CASE("normal form examples") {
    auto r = xyzw();
    auto gens = I(r, {"x^2 - y*z", "x*y - z*w"});
    auto g = buchberger(gens);
    for (const auto& f : gens.generators()) CHECK(normal_form(f, g).is_zero());
    CHECK(normal_form(Polynomial::constant(r, 1), g) == Polynomial::constant(r, 1));
    CHECK_THROWS_AS(normal_form(P("x", xyzw(Field::prime(7))), g), RingMismatch);
    Ring lex = with_order(r, MonomialOrder::lex());
    CHECK_THROWS_AS(normal_form(P("x", lex), g), RingMismatch);
  }

  TEST_CASE("dimension and height examples") {
    auto r = xyzw();
    CHECK(krull_dimension(buchberger(I(r, {"x^2", "x*y", "y^2"}))) == 2);
    CHECK(krull_dimension(buchberger(IdealBasis(r))) == 4);
    CHECK(krull_dimension(buchberger(I(r, {"1"}))) == -1);
    CHECK(height(I(r, {"1"})) == 5);
    auto v = builtin("veronese", {Field::rationals()});
    CHECK(krull_dimension(buchberger(minor_ideal(v.matrix, 2))) == 3);
    CHECK(height(I(r, {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"})) == 3);
    Ring q4 = make_ring(4, Field::rationals());
    CHECK(height(I(q4, {"x0", "x1", "x2", "x3"})) == 4);
    CHECK(height(I(q4, {"x0", "x1"})) == 2);
    CHECK_THROWS_AS(height(I(q4, {"x0 + 1"})), std::invalid_argument);
  }

  TEST_CASE("colon and saturation examples") {
    auto r = xyzw();
    CHECK(ideal_equal(ideal_quotient(I(r, {"x^2"}), P("x", r)), I(r, {"x"})));
    CHECK(ideal_equal(saturate_by(I(r, {"x*y"}), P("y", r)), I(r, {"x"})));
    CHECK(ideal_equal(saturate_by_variable(I(r, {"x*y"}), 1), I(r, {"x"})));

    auto sq = I(r, {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"});
    auto colon_z = saturate_by(sq, P("z", r));
    CHECK(buchberger(colon_z).is_unit());
    // Oracle: z^2 lies in the ideal, so 1 lies in the saturation.
    CHECK(oracle::macaulay_member(P("z^2", r), sq.generators(), 4));
    CHECK(ideal_equal(ideal_quotient(sq, P("z", r)), I(r, {"x", "y", "z"})));
    CHECK(oracle::macaulay_member(P("x*z", r), sq.generators(), 4));

    CHECK(buchberger(saturate_irrelevant(I(r, {"x", "y", "z", "w"}))).is_unit());
    CHECK(ideal_equal(saturate_irrelevant(sq), sq));
    for (std::size_t v = 0; v < 4; ++v)
      if (v == 3) CHECK(ideal_equal(saturate_by_variable(sq, v), sq));
    CHECK(ideal_equal(saturate_irrelevant(I(r, {"x*y - z^2"})), I(r, {"x*y - z^2"})));
    CHECK_THROWS(saturate_by(sq, Polynomial(r)));

    // A saturated ideal need not be stable under saturation by a single
    // variable: x^2 lies in (x,y,z)^2, so the x-saturation is the unit ideal.
    CHECK(buchberger(saturate_by(sq, P("x", r))).is_unit());
    CHECK(ideal_equal(colon_by_each_variable(sq), sq));
  }

  TEST_CASE("intersection and elimination") {
    auto r = xyzw();
    CHECK(ideal_equal(intersect(I(r, {"x"}), I(r, {"y"})), I(r, {"x*y"})));
    CHECK(ideal_equal(intersect(I(r, {"x", "y"}), I(r, {"x", "z"})), I(r, {"x", "y*z"})));
    Ring e = make_ring({"t", "x", "y"}, Field::rationals(), MonomialOrder::elimination(1));
    auto el = eliminate(I(e, {"x - t^2", "y - t^3"}), 1);
    REQUIRE(el.ring()->num_vars() == 2);
    CHECK(ideal_equal(el, IdealBasis::parse(el.ring(), {"x^3 - y^2"})));
  }

  TEST_CASE("containment and equality") {
    auto r = xyzw();
    CHECK(ideal_equal(I(r, {"x", "y"}), I(r, {"y", "x + y"})));
    CHECK_FALSE(ideal_equal(I(r, {"x"}), I(r, {"x", "y"})));
    CHECK(ideal_contains(I(r, {"x", "y"}), I(r, {"x*z + y^2"})));
    auto b = builtin("bruns_char2");
    CHECK(ideal_equal(minor_ideal(b.matrix, 2), *b.reference));
    for (const auto& [name, ideal] : corpus_ideals()) {
      if (!ideal.is_homogeneous()) continue;
      INFO(name);
      CHECK(ideal_contains(saturate_irrelevant(ideal), ideal));
    }
  }

  TEST_CASE("minimal generators and complete intersections") {
    auto r = xyzw();
    CHECK(minimal_generator_count(I(r, {"x", "x^2", "y"})) == 2);
    auto v = builtin("veronese");
    CHECK(minimal_generator_count(minor_ideal(v.matrix, 2)) == 6);
    CHECK_FALSE(is_complete_intersection(minor_ideal(v.matrix, 2)));
    CHECK(minimal_generator_count(minor_ideal(builtin("ci_3").matrix, 1)) == 3);
    CHECK(is_complete_intersection(I(make_ring(3, Field::rationals()), {"x0", "x1", "x2"})));
    auto g2 = builtin("generic_sym_2_2");
    CHECK(is_complete_intersection(minor_ideal(g2.matrix, 2)));
    CHECK_THROWS_AS(is_complete_intersection(IdealBasis(r)), std::invalid_argument);
    CHECK_THROWS_AS(is_complete_intersection(I(r, {"1"})), std::invalid_argument);
  }

  TEST_CASE("degree-bounded bases agree below the bound") {
    auto v = builtin("generic_sym_3_2");
    auto ideal = minor_ideal(v.matrix, 2);
    BuchbergerOptions opts;
    opts.degree_bound = 2;
    auto partial = buchberger(ideal, ideal.ring()->order(), opts);
    auto full = buchberger(ideal);
    std::vector<Polynomial> low;
    for (const auto& f : full.elements())
      if (*f.total_degree() <= 2) low.push_back(f);
    CHECK(partial.elements() == low);
  }

  TEST_CASE("property: bases match the naive oracle and are closed under S-pairs") {
    std::mt19937_64 rng(31337);
    int compared = 0;
    for (int k = 0; k < 60; ++k) {
      Field f = k % 3 == 0 ? Field::rationals() : Field::prime(k % 3 == 1 ? 32003 : 7);
      MonomialOrder ord = k % 4 == 0 ? MonomialOrder::lex() : MonomialOrder::grevlex();
      Ring r = make_ring(3 + k % 2, f, ord);
      std::vector<Polynomial> gens;
      for (int j = 0; j < 2 + k % 3; ++j) gens.push_back(oracle::random_poly(rng, r, 2, 3, k % 2 == 0));
      IdealBasis ideal(r, gens);
      auto g = buchberger(ideal);
      check_spoly_closure(g);
      CHECK(g.elements() == oracle::naive_buchberger(ideal.generators()));
      // Reduced bases are unique: shuffled input gives identical output.
      std::shuffle(gens.begin(), gens.end(), rng);
      CHECK(buchberger(IdealBasis(r, gens)).elements() == g.elements());
      ++compared;
    }
    CHECK(compared == 60);
    for (const auto& [name, ideal] : corpus_ideals()) {
      INFO(name);
      check_spoly_closure(buchberger(ideal));
    }
  }

  TEST_CASE("property: membership agrees with the Macaulay-matrix oracle") {
    std::mt19937_64 rng(4242);
    int instances = 0, members = 0, nonmembers = 0;
    for (int k = 0; k < 60; ++k) {
      Field f = k % 2 ? Field::prime(32003) : Field::rationals();
      Ring r = make_ring(2 + k % 3, f);
      std::vector<Polynomial> gens;
      for (int j = 0; j < 1 + k % 3; ++j) {
        Polynomial g(r);
        while (g.is_zero() || *g.total_degree() == 0) g = oracle::random_poly(rng, r, 2, 3, true);
        gens.push_back(g);
      }
      auto g = buchberger(IdealBasis(r, gens));
      std::uint32_t maxdeg = 0;
      for (const auto& x : gens) maxdeg = std::max(maxdeg, *x.total_degree());
      for (int q = 0; q < 4; ++q) {
        // Half the probes are built inside the ideal, half are random.
        Polynomial probe(r);
        if (q % 2 == 0)
          for (const auto& x : gens) probe = probe + x * oracle::random_poly(rng, r, 2, 2, true);
        else
          probe = oracle::random_poly(rng, r, 3, 4);
        std::uint32_t bound = (probe.is_zero() ? 0 : *probe.total_degree()) + maxdeg;
        bool nf = normal_form(probe, g).is_zero();
        CHECK(nf == oracle::macaulay_member(probe, gens, bound));
        (nf ? members : nonmembers)++;
      }
      ++instances;
    }
    CHECK(instances >= 50);
    CHECK(members > 20);
    CHECK(nonmembers > 20);
  }

  TEST_CASE("property: saturation laws on corpus ideals") {
    for (const auto& [name, ideal] : corpus_ideals()) {
      if (!ideal.is_homogeneous() || ideal.is_zero()) continue;
      INFO(name);
      auto sat = saturate_irrelevant(ideal);
      CHECK(ideal_contains(sat, ideal));
      CHECK(ideal_equal(saturate_irrelevant(sat), sat));
      CHECK(ideal_equal(colon_by_each_variable(sat), sat));
      for (std::size_t v = 0; v < ideal.ring()->num_vars(); ++v) {
        // Both per-variable saturation routes agree on the original ideal.
        auto x = Polynomial::variable(ideal.ring(), v);
        CHECK(ideal_equal(saturate_by(ideal, x), saturate_by_variable(ideal, v)));
      }
    }
  }

  TEST_CASE("property: dimension sanity and generator-order independence") {
    std::mt19937_64 rng(5);
    for (const auto& [name, ideal] : corpus_ideals()) {
      if (!ideal.is_homogeneous()) continue;
      INFO(name);
      auto g = buchberger(ideal);
      int h = height(ideal);
      if (!g.is_unit()) CHECK(h + krull_dimension(g) == static_cast<int>(ideal.ring()->num_vars()));
      auto gens = ideal.generators();
      std::shuffle(gens.begin(), gens.end(), rng);
      IdealBasis shuffled(ideal.ring(), gens);
      CHECK(height(shuffled) == h);
      if (!ideal.is_zero() && !g.is_unit())
        CHECK(minimal_generator_count(shuffled) == minimal_generator_count(ideal));
    }
    for (const auto& n : {"veronese", "generic_sym_4_3", "ht_example"}) {
      auto e = builtin(n);
      int h = height(minor_ideal(e.matrix, e.t));
      for (std::uint64_t s = 0; s < 5; ++s)
        CHECK(height(minor_ideal(generic_congruence(e.matrix, s).transformed, e.t)) == h);
    }
  }
}
