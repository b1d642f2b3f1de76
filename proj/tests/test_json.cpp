#include <doctest.h>

#include "lforge/corpus.hpp"
#include "lforge/json_io.hpp"

using namespace lforge;

TEST_SUITE("json") {
  TEST_CASE("matrix and ideal round-trip") {
    for (const auto& n : builtin_names()) {
      auto e = builtin(n);
      CHECK(matrix_from_json(matrix_to_json(e.matrix)) == e.matrix);
      auto ideal = minor_ideal(e.matrix, e.t);
      auto back = ideal_from_json(ideal_to_json(ideal));
      CHECK(back.generators() == ideal.generators());
    }
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_json_text("{\"ring\": "), ParseError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"entries": [["x"]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"ring": {"vars": ["x"], "char": 4}, "entries": [["x"]]})")),
                    ParseError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"ring": {"vars": ["x"], "char": 0}, "entries": [["y"]]})")),
                    ParseError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"ring": {"vars": ["x"], "char": 0}, "entries": 3})")), ParseError);
    CHECK_THROWS_AS(
        matrix_from_json(json::parse(
            R"({"ring": {"vars": ["x","y"], "char": 0}, "structure": "symmetric", "entries": [["x","y"],["x","y"]]})")),
        StructureError);
  }

  TEST_CASE("certificates embed the step data") {
    auto c = biliaison_chain(builtin("veronese").matrix, 2, 0);
    auto j = chain_to_json(c);
    CHECK(is_certificate(j));
    CHECK(j["steps"].size() == 1);
    CHECK(j["steps"][0]["a"] == 1);
    CHECK(j["steps"][0]["identities"]["failed"] == 0);
    CHECK(j["terminal"]["is_ci"] == true);
    auto steps = steps_from_certificate(json::parse(j.dump()));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].M == c.steps[0].M);
    CHECK(steps[0].gb_Y.elements() == c.steps[0].gb_Y);
    CHECK(verify_cross_identities(steps[0].M, steps[0].t, steps[0].gb_Y).failed == 0);
  }
}
