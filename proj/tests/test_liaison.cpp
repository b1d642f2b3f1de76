#include <doctest.h>

#include <random>

#include "lforge/corpus.hpp"
#include "lforge/liaison.hpp"
#include "oracles.hpp"

using namespace lforge;

namespace {

CorpusEntry entry(const std::string& n) { return builtin(n); }

std::size_t pow4(std::size_t x) { return x * x * x * x; }

std::size_t binom(std::size_t n, std::size_t k) { return combinations(n, k).size(); }

}  // namespace

TEST_SUITE("liaison") {
  TEST_CASE("invertible entries") {
    Ring r = make_ring({"x", "y"}, Field::rationals());
    CHECK(no_invertible_entries(entry("generic_sym_3_2").matrix));
    CHECK_FALSE(no_invertible_entries(PolyMatrix::parse(r, {{"1", "x"}, {"x", "y"}}, Structure::Symmetric)));
    CHECK(no_invertible_entries(PolyMatrix::zero(r, 2, 2, Structure::Symmetric)));
  }

  TEST_CASE("classification examples") {
    auto v = classify(entry("veronese").matrix, 2);
    CHECK(v.verdict == Verdict::SymmetricDeterminantal);
    CHECK(v.actual_codim == 3);
    CHECK(v.expected_codim == 3);
    CHECK(v.saturated);

    for (std::size_t m = 2; m <= 4; ++m)
      for (std::size_t t = 2; t <= m; ++t) {
        auto r = classify(entry("generic_sym_" + std::to_string(m) + "_" + std::to_string(t)).matrix, t);
        CHECK(r.verdict == Verdict::SymmetricDeterminantal);
        CHECK(r.actual_codim == symmetric_codim(m, t));
      }
    for (std::size_t m = 3; m <= 4; ++m)
      for (std::size_t t = 2; t < m; ++t) {
        auto r = classify(entry("generic_almost_" + std::to_string(m) + "_" + std::to_string(t)).matrix, t);
        CHECK(r.verdict == Verdict::AlmostSymmetricDeterminantal);
        CHECK(r.actual_codim == symmetric_codim(m, t) - 1);
      }

    Ring xy = make_ring({"x", "y"}, Field::rationals());
    auto d = classify(PolyMatrix::parse(xy, {{"x", "0"}, {"0", "x"}}, Structure::Symmetric), 1);
    CHECK(d.verdict == Verdict::Neither);
    CHECK(d.actual_codim == 1);

    auto hx = entry("ht_example");
    auto o = classify(hx.extras.at("O"), 2);
    CHECK(o.verdict == Verdict::AlmostSymmetricDeterminantal);
    CHECK(o.actual_codim == 2);

    // t = 1 almost-symmetric of generic linear forms: codim C(b,2) - 1.
    Ring r4 = make_ring(4, Field::prime(32003));
    auto ci_almost = PolyMatrix::parse(r4, {{"x0 + 2*x1", "x1 - x2"}}, Structure::AlmostSymmetric);
    CHECK(classify(ci_almost, 1).actual_codim == symmetric_codim(2, 1) - 1);

    CHECK_THROWS_AS(classify(PolyMatrix::parse(xy, {{"x", "y"}}), 1), StructureError);
    CHECK_THROWS_AS(classify(entry("veronese").matrix, 4), std::out_of_range);
  }

  TEST_CASE("descent step on the Veronese surface") {
    auto s = descend_step(entry("veronese").matrix, 2, 0);
    CHECK(s.a == 1);
    CHECK(s.heights.ht_ItM == 3);
    CHECK(s.heights.ht_ItO == 2);
    CHECK(s.heights.ht_It1N == 3);
    CHECK(s.identities_failed == 0);
    CHECK(s.identities_checked == pow4(binom(2, 1)));
    CHECK(s.ht1_ok);
    CHECK(s.subm_condition2);
    CHECK(s.subm_sufficient);
    CHECK(s.O.structure() == Structure::AlmostSymmetric);
    CHECK(s.N.rows() == 2);
    CHECK_FALSE(s.quotient_numerator.empty());
  }

  TEST_CASE("descent step refusals") {
    auto b = entry("bruns_char2");
    CHECK_THROWS_AS(descend_step(b.matrix, 2, 0), CharTwoRefused);
    DescentOptions force;
    force.force_char2 = true;
    try {
      descend_step(b.matrix, 2, 0, force);
      FAIL("expected an obstruction");
    } catch (const ChainObstruction& e) {
      CHECK(e.ht_ItO == 1);
    }
    for (std::uint64_t seed = 0; seed < 40; seed += kRetryBudget) {
      try {
        biliaison_chain(b.matrix, 2, seed, force);
        FAIL("expected an obstruction");
      } catch (const ChainObstruction& e) {
        CHECK(e.ht_ItO == 1);
        CHECK(e.step == std::optional<std::size_t>(0));
      }
    }
    CHECK_THROWS_AS(descend_step(entry("veronese").matrix, 3, 0), PreconditionFailed);
    CHECK_THROWS_AS(descend_step(entry("generic_almost_3_2").matrix, 2, 0), PreconditionFailed);
    Ring r = make_ring({"x", "y", "z"}, Field::rationals());
    auto inv = PolyMatrix::parse(r, {{"1", "x", "y"}, {"x", "y", "z"}, {"y", "z", "x"}}, Structure::Symmetric);
    CHECK_THROWS_AS(descend_step(inv, 2, 0), PreconditionFailed);
  }

  TEST_CASE("chains") {
    auto v = biliaison_chain(entry("veronese").matrix, 2, 0);
    CHECK(v.steps.size() == 1);
    CHECK(v.terminal_mu == 3);
    CHECK(v.terminal_height == 3);
    CHECK(v.terminal_is_ci);

    auto c = biliaison_chain(entry("ci_3").matrix, 1, 0);
    CHECK(c.steps.empty());
    CHECK(c.terminal_is_ci);

    auto g = biliaison_chain(entry("generic_sym_4_3").matrix, 3, 0);
    REQUIRE(g.steps.size() == 2);
    CHECK(g.steps[0].t == 3);
    CHECK(g.steps[1].t == 2);
    CHECK(g.steps[0].heights.ht_ItM == 3);
    CHECK(g.steps[0].heights.ht_ItO == 2);
    CHECK(g.steps[0].heights.ht_It1N == 3);
    CHECK(g.steps[0].a == 1);
    // Each stage re-classifies as symmetric determinantal of maximal codim.
    for (const auto& s : g.steps) {
      auto r = classify(s.N, s.t - 1);
      CHECK(r.verdict == Verdict::SymmetricDeterminantal);
      CHECK(r.actual_codim == symmetric_codim(s.N.rows(), s.t - 1));
    }
    CHECK(g.terminal_is_ci);
    CHECK(g.terminal_height == 3);
  }

  TEST_CASE("cross identities") {
    auto s = descend_step(entry("generic_sym_4_3").matrix, 3, 0);
    CHECK(s.identities_failed == 0);
    CHECK(s.identities_checked == pow4(binom(3, 2)));

    auto v = entry("veronese").matrix;
    auto g = buchberger(minor_ideal(delete_last_row(v), 2));
    auto c = verify_cross_identities(v, 2, g);
    CHECK(c.checked == 16);
    CHECK(c.failed == 0);
    // A basis that misses I_t(O) is rejected.
    auto wrong = buchberger(IdealBasis(v.ring(), {v.at(0, 0)}));
    CHECK_THROWS_AS(verify_cross_identities(v, 2, wrong), std::invalid_argument);
    CHECK_THROWS_AS(verify_cross_identities(v, 1, g), std::out_of_range);
  }

  TEST_CASE("Sylvester identity") {
    auto g3 = entry("generic_sym_3_3").matrix;
    // a = 2: rows {1,2},{1,3}, columns {1,2},{1,3}.
    CHECK(sylvester_defect(g3, {{0}, {0}, 1, 2, 1, 2}).is_zero());
    CHECK(sylvester_defect(g3, {{}, {}, 0, 2, 1, 2}).is_zero());
    CHECK_THROWS(sylvester_defect(g3, {{0}, {0}, 0, 2, 1, 2}));

    // Exact identity on general matrices of indeterminates, all instances.
    for (std::size_t n : {3, 4}) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n * n; ++i) names.push_back("y" + std::to_string(i));
      Ring r = make_ring(names, Field::rationals());
      std::vector<Polynomial> e;
      for (std::size_t i = 0; i < n * n; ++i) e.push_back(Polynomial::variable(r, i));
      PolyMatrix m(r, n, n, e);
      std::size_t count = 0;
      for (std::size_t a = 1; a < n; ++a)
        for (const auto& R : combinations(n, a - 1))
          for (const auto& C : combinations(n, a - 1))
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j)
                  for (std::size_t l = 0; l < n; ++l) {
                    auto in = [](const std::vector<std::size_t>& v, std::size_t x) {
                      return std::find(v.begin(), v.end(), x) != v.end();
                    };
                    if (i == k || j == l || in(R, i) || in(R, k) || in(C, j) || in(C, l)) continue;
                    CHECK(sylvester_defect(m, {R, C, i, k, j, l}).is_zero());
                    ++count;
                  }
      CHECK(count > 0);
    }

    // Membership form: tuples with i = k, j = l give zero.
    CHECK(sylvester_membership(g3, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}));
    std::mt19937_64 rng(11);
    Ring r4 = make_ring(4, Field::prime(32003));
    std::vector<Polynomial> e;
    for (int k = 0; k < 16; ++k) e.push_back(oracle::random_poly(rng, r4, 1, 4, true));
    PolyMatrix m(r4, 4, 4, e);
    auto g = buchberger(minor_ideal(m, 3));
    auto pairs = combinations(4, 2);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    for (int k = 0; k < 50; ++k) {
      SylvesterTuples tp{pairs[pick(rng)], pairs[pick(rng)], pairs[pick(rng)], pairs[pick(rng)]};
      CHECK(sylvester_membership(m, tp, g));
    }
    CHECK_THROWS(sylvester_membership(g3, {{1, 0}, {0, 1}, {0, 1}, {0, 1}}));
    CHECK_THROWS(sylvester_membership(g3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}}));
  }

  TEST_CASE("height criteria") {
    auto h = check_ht1(entry("veronese").matrix, 2, 0);
    CHECK(h.delta == 1);
    CHECK(h.ok);

    Ring r = make_ring(3, Field::rationals());
    auto zero_last =
        PolyMatrix::parse(r, {{"x0", "x1", "0"}, {"x1", "x2", "0"}, {"0", "0", "0"}}, Structure::Symmetric);
    auto hz = check_ht1(zero_last, 2, 0);
    CHECK(hz.delta == 0);

    auto hx = entry("ht_example");
    auto h1 = check_ht1(hx.matrix, 2, 0);
    CHECK((h1.delta == 0 || h1.delta == 1));
    CHECK(h1.ok);

    auto sm = check_subm(hx.extras.at("O"), 2);
    CHECK(sm.c == 2);
    CHECK(sm.condition2);
    CHECK(sm.ht_It1O == 4);
    CHECK_FALSE(sm.sufficient);
    CHECK(check_subm(hx.extras.at("Oprime"), 2).sufficient);
    CHECK(check_subm(entry("generic_almost_3_2").matrix, 2).condition2);
    CHECK_THROWS_AS(check_subm(hx.matrix, 2), StructureError);

    auto sv = check_subsd(entry("veronese").matrix, 2);
    CHECK(sv.ht_It1M == 6);
    CHECK(sv.condition2);
    // c + 1 = C(3-3+2, 2) = 1, so c + 2 = 2 <= ht I_2 = 3.
    auto s3 = check_subsd(entry("generic_sym_3_3").matrix, 3);
    CHECK(s3.c + 1 == 1);
    CHECK(s3.ht_It1M == 3);
    CHECK(s3.condition2);
    auto s4 = check_subsd(entry("generic_sym_4_2").matrix, 2);
    CHECK(s4.ht_It1M == 10);
    CHECK(s4.c + 2 == 7);
    CHECK(s4.condition2);
  }

  TEST_CASE("property: step certificates on symmetric determinantal corpus entries") {
    for (const auto& n : builtin_names()) {
      auto e = builtin(n);
      const auto& m = e.matrix;
      if (m.structure() != Structure::Symmetric || m.ring()->field().characteristic() == 2) continue;
      if (!no_invertible_entries(m) || e.t < 2 || e.t >= m.rows()) continue;
      if (classify(m, e.t).verdict != Verdict::SymmetricDeterminantal) continue;
      INFO(n);
      auto chain = biliaison_chain(m, e.t, 0);
      CHECK(chain.steps.size() == e.t - 1);
      CHECK(chain.terminal_mu == static_cast<std::size_t>(chain.terminal_height));
      for (const auto& s : chain.steps) {
        const std::size_t mm = s.M.rows();
        CHECK(s.heights.ht_ItO == s.c);
        CHECK(s.heights.ht_It1N == s.c + 1);
        CHECK(s.heights.ht_ItM <= symmetric_codim(mm, s.t));
        CHECK(s.heights.ht_ItO <= symmetric_codim(mm, s.t) - 1);
        CHECK(s.ht1_ok);
        CHECK(s.a > 0);
        CHECK(s.identities_failed == 0);
        CHECK(s.identities_checked == pow4(binom(mm - 1, s.t - 1)));
      }
      // Seed independence of verdicts, heights and a.
      for (std::uint64_t seed = 1; seed < 5; ++seed) {
        auto other = biliaison_chain(m, e.t, seed * 1000);
        REQUIRE(other.steps.size() == chain.steps.size());
        for (std::size_t k = 0; k < chain.steps.size(); ++k) {
          CHECK(other.steps[k].a == chain.steps[k].a);
          CHECK(other.steps[k].heights.ht_ItM == chain.steps[k].heights.ht_ItM);
          CHECK(other.steps[k].heights.ht_ItO == chain.steps[k].heights.ht_ItO);
          CHECK(other.steps[k].heights.ht_It1N == chain.steps[k].heights.ht_It1N);
        }
        CHECK(other.terminal_height == chain.terminal_height);
        CHECK(classify(m, e.t).verdict == Verdict::SymmetricDeterminantal);
      }
    }
  }
}
