#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lforge/corpus.hpp"
#include "lforge/groebner.hpp"
#include "lforge/liaison.hpp"
#include "lforge/pmatrix.hpp"

namespace lforge {

using json = nlohmann::ordered_json;

/// {"vars": [...], "char": 0|p, "order": "grevlex"}
json ring_to_json(const PolyRing& ring);
Ring ring_from_json(const json& j);

/// {"ring": ..., "structure": ..., "entries": [[...], ...]}
json matrix_to_json(const PolyMatrix& m);
PolyMatrix matrix_from_json(const json& j);

/// {"ring": ..., "generators": [...]}
json ideal_to_json(const IdealBasis& ideal);
IdealBasis ideal_from_json(const json& j);

json polys_to_json(const std::vector<Polynomial>& polys);
std::vector<Polynomial> polys_from_json(const json& j, const Ring& ring);

/// Elements, leading monomials, dimension and height.
json gb_report(const GroebnerBasis& g);

json classification_to_json(const ClassificationReport& r);
json step_to_json(const StepCertificate& s);
json chain_to_json(const ChainCertificate& c);

/// One step of a loaded certificate: enough to re-run the identity checks
/// against the embedded basis.
struct LoadedStep {
  std::size_t t;
  PolyMatrix M;
  PolyMatrix O;
  GroebnerBasis gb_Y;
  std::size_t identities_failed;
};
bool is_certificate(const json& j);
std::vector<LoadedStep> steps_from_certificate(const json& j);

json corpus_entry_to_json(const CorpusEntry& e);

/// Parses text; malformed input raises ParseError.
json parse_json_text(const std::string& text);

}  // namespace lforge
