#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "lforge/corpus.hpp"
#include "lforge/groebner.hpp"
#include "lforge/json_io.hpp"
#include "lforge/liaison.hpp"

namespace py = pybind11;
using namespace lforge;

// Matrices, ideals and reports cross the boundary as JSON text; the Python
// wrapper converts to and from dicts.

namespace {

PolyMatrix load_matrix(const std::string& text) { return matrix_from_json(parse_json_text(text)); }

std::optional<Field> field_option(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "q" || s == "Q") return Field::rationals();
  if (s.rfind("zp:", 0) == 0) return Field::prime(static_cast<std::uint32_t>(std::stoul(s.substr(3))));
  throw std::invalid_argument("field must be 'q' or 'zp:<p>'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Determinantal ideals, Groebner bases and biliaison descent";
  m.attr("__version__") = LFORGE_VERSION;

  auto base = py::register_exception<LiaisonError>(m, "LiaisonError");
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", base.ptr());
  py::register_exception<CharTwoRefused>(m, "CharTwoRefused", base.ptr());
  py::register_exception<ChainObstruction>(m, "ChainObstruction", base.ptr());
  py::register_exception<GenericityExhausted>(m, "GenericityExhausted", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("corpus_names", &builtin_names);

  m.def(
      "corpus_entry",
      [](const std::string& name, const std::string& field) {
        CorpusOptions opts;
        opts.field = field_option(field);
        return corpus_entry_to_json(builtin(name, opts)).dump();
      },
      py::arg("name"), py::arg("field") = "");

  m.def(
      "run_corpus_entry",
      [](const std::string& name, std::uint64_t seed) {
        json out = json::array();
        for (const auto& c : run_entry(builtin(name), seed))
          out.push_back({{"key", c.key}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        return out.dump();
      },
      py::arg("name"), py::arg("seed") = 0);

  m.def(
      "classify",
      [](const std::string& matrix, std::size_t t) {
        return classification_to_json(classify(load_matrix(matrix), t)).dump();
      },
      py::arg("matrix"), py::arg("t"));

  m.def(
      "minor_ideal",
      [](const std::string& matrix, std::size_t t) {
        return ideal_to_json(minor_ideal(load_matrix(matrix), t)).dump();
      },
      py::arg("matrix"), py::arg("t"));

  m.def(
      "groebner", [](const std::string& ideal) { return gb_report(buchberger(ideal_from_json(parse_json_text(ideal)))).dump(); },
      py::arg("ideal"));

  m.def(
      "height", [](const std::string& ideal) { return height(ideal_from_json(parse_json_text(ideal))); },
      py::arg("ideal"));

  m.def(
      "chain",
      [](const std::string& matrix, std::size_t t, std::uint64_t seed, bool force_char2) {
        DescentOptions opts;
        opts.force_char2 = force_char2;
        auto mat = load_matrix(matrix);
        std::optional<ChainCertificate> cert;
        {
          py::gil_scoped_release release;
          cert.emplace(biliaison_chain(mat, t, seed, opts));
        }
        return chain_to_json(*cert).dump();
      },
      py::arg("matrix"), py::arg("t"), py::arg("seed") = 0, py::arg("force_char2") = false);

  m.def(
      "verify_cross",
      [](const std::string& matrix, std::size_t t) {
        auto mat = load_matrix(matrix);
        auto g = buchberger(minor_ideal(delete_last_row(mat), t));
        auto r = verify_cross_identities(mat, t, g);
        return py::make_tuple(r.checked, r.failed);
      },
      py::arg("matrix"), py::arg("t"));
}
