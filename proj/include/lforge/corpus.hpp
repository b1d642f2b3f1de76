#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lforge/groebner.hpp"
#include "lforge/pmatrix.hpp"

namespace lforge {

struct ExpectedValue {
  std::variant<std::int64_t, bool, std::string> value;
  /// "stated" for values printed with the worked example, "formula: ..."
  /// for values from a closed-form count.
  std::string provenance;

  std::string to_string() const;
};

struct CorpusEntry {
  std::string name;
  Ring ring;
  PolyMatrix matrix;
  std::size_t t = 0;
  /// Auxiliary matrices referenced by expected keys such as "ht_I1_N".
  std::map<std::string, PolyMatrix> extras;
  /// Ideal the minor ideal must equal, for the "equals_reference" key.
  std::optional<IdealBasis> reference;
  std::map<std::string, ExpectedValue> expected;
  std::string source;
};

struct CorpusOptions {
  /// Overrides the default coefficient field where the entry permits it.
  std::optional<Field> field;
};

class UnknownEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Names: veronese, bruns_char2, ht_example, generic_sym_<m>_<t>,
/// generic_almost_<m>_<t>, ci_<b>.
CorpusEntry builtin(const std::string& name, const CorpusOptions& opts = {});
/// Every valid name, in a fixed order.
std::vector<std::string> builtin_names();

struct CheckOutcome {
  std::string entry;
  std::string key;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Recomputes every expected value of the entry with the live modules.
std::vector<CheckOutcome> run_entry(const CorpusEntry& entry, std::uint64_t seed = 0);

}  // namespace lforge
