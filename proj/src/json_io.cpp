#include "lforge/json_io.hpp"

namespace lforge {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& field_of(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON value: ") + e.what());
  }
}

}  // namespace

json ring_to_json(const PolyRing& ring) {
  return json{{"vars", ring.var_names()}, {"char", ring.field().characteristic()}, {"order", ring.order().name()}};
}

Ring ring_from_json(const json& j) {
  return guarded([&] {
    auto vars = field_of(j, "vars").get<std::vector<std::string>>();
    auto ch = field_of(j, "char").get<std::uint32_t>();
    std::string order = j.contains("order") ? j.at("order").get<std::string>() : "grevlex";
    try {
      return make_ring(vars, ch == 0 ? Field::rationals() : Field::prime(ch), MonomialOrder::from_name(order));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad ring: ") + e.what());
    }
  });
}

json matrix_to_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return json{{"ring", ring_to_json(*m.ring())}, {"structure", to_string(m.structure())}, {"entries", rows}};
}

PolyMatrix matrix_from_json(const json& j) {
  return guarded([&] {
    Ring ring = ring_from_json(field_of(j, "ring"));
    Structure s = j.contains("structure") ? structure_from_string(j.at("structure").get<std::string>())
                                          : Structure::General;
    auto rows = field_of(j, "entries").get<std::vector<std::vector<std::string>>>();
    return PolyMatrix::parse(ring, rows, s);
  });
}

json ideal_to_json(const IdealBasis& ideal) {
  return json{{"ring", ring_to_json(*ideal.ring())}, {"generators", polys_to_json(ideal.generators())}};
}

IdealBasis ideal_from_json(const json& j) {
  return guarded([&] {
    Ring ring = ring_from_json(field_of(j, "ring"));
    return IdealBasis(ring, polys_from_json(field_of(j, "generators"), ring));
  });
}

json polys_to_json(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

std::vector<Polynomial> polys_from_json(const json& j, const Ring& ring) {
  return guarded([&] {
    std::vector<Polynomial> out;
    for (const auto& s : j.get<std::vector<std::string>>()) out.push_back(parse_polynomial(s, ring));
    return out;
  });
}

json gb_report(const GroebnerBasis& g) {
  json lms = json::array();
  for (const auto& m : g.leading_monomials()) lms.push_back(render_monomial(m, *g.ring()));
  int dim = krull_dimension(g);
  return json{{"ring", ring_to_json(*g.ring())},
              {"elements", polys_to_json(g.elements())},
              {"leading_monomials", lms},
              {"dimension", dim},
              {"height", static_cast<int>(g.ring()->num_vars()) - dim}};
}

json classification_to_json(const ClassificationReport& r) {
  return json{{"verdict", to_string(r.verdict)}, {"structure_ok", r.structure_ok},
              {"t_homogeneous", r.t_homogeneous}, {"saturated", r.saturated},
              {"expected_codim", r.expected_codim}, {"actual_codim", r.actual_codim},
              {"reason", r.reason}};
}

json step_to_json(const StepCertificate& s) {
  return json{{"t", s.t},
              {"a", s.a},
              {"seed_used", s.seed_used},
              {"retries", s.retries},
              {"c", s.c},
              {"heights",
               {{"ht_ItM", s.heights.ht_ItM},
                {"ht_ItO", s.heights.ht_ItO},
                {"ht_It1N", s.heights.ht_It1N},
                {"ht_It1O", s.heights.ht_It1O}}},
              {"ht1_ok", s.ht1_ok},
              {"subm", {{"condition2", s.subm_condition2}, {"sufficient", s.subm_sufficient}}},
              {"identities",
               {{"checked", s.identities_checked}, {"failed", s.identities_failed}, {"witnesses", s.witnesses}}},
              {"quotient", {{"numerator", s.quotient_numerator}, {"denominator", s.quotient_denominator}}},
              {"M", matrix_to_json(s.M)},
              {"O", matrix_to_json(s.O)},
              {"N", matrix_to_json(s.N)},
              {"gb_Y", polys_to_json(s.gb_Y)},
              {"warnings", s.warnings},
              {"timing_ms", {{"heights", s.heights_ms}, {"identities", s.identities_ms}}}};
}

json chain_to_json(const ChainCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(step_to_json(s));
  return json{{"input", matrix_to_json(c.input)},
              {"t", c.t},
              {"seed", c.seed},
              {"steps", steps},
              {"terminal",
               {{"generators", polys_to_json(c.terminal_ideal.generators())},
                {"mu", c.terminal_mu},
                {"height", c.terminal_height},
                {"is_ci", c.terminal_is_ci}}}};
}

bool is_certificate(const json& j) { return j.is_object() && j.contains("steps") && j.contains("input"); }

std::vector<LoadedStep> steps_from_certificate(const json& j) {
  return guarded([&] {
    std::vector<LoadedStep> out;
    for (const auto& s : field_of(j, "steps")) {
      PolyMatrix m = matrix_from_json(field_of(s, "M"));
      PolyMatrix o = matrix_from_json(field_of(s, "O"));
      std::vector<Polynomial> g = polys_from_json(field_of(s, "gb_Y"), m.ring());
      out.push_back(LoadedStep{field_of(s, "t").get<std::size_t>(), m, o, GroebnerBasis(m.ring(), std::move(g)),
                               field_of(field_of(s, "identities"), "failed").get<std::size_t>()});
    }
    return out;
  });
}

json corpus_entry_to_json(const CorpusEntry& e) {
  json j = matrix_to_json(e.matrix);
  j["t"] = e.t;
  j["name"] = e.name;
  j["source"] = e.source;
  json expected = json::object();
  for (const auto& [k, v] : e.expected) expected[k] = {{"value", v.to_string()}, {"provenance", v.provenance}};
  j["expected"] = expected;
  if (!e.extras.empty()) {
    json extras = json::object();
    for (const auto& [k, m] : e.extras) extras[k] = matrix_to_json(m);
    j["extras"] = extras;
  }
  if (e.reference) j["reference"] = ideal_to_json(*e.reference);
  return j;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace lforge
