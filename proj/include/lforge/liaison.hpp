#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lforge/groebner.hpp"
#include "lforge/pmatrix.hpp"

namespace lforge {

/// Retries for "generic" draws: seed, seed+1, ..., seed+kRetryBudget-1.
inline constexpr int kRetryBudget = 8;

/// C(n, 2), zero for n < 2.
std::int64_t choose2(std::int64_t n);
/// Maximal codimension of I_t of an m x m symmetric matrix: C(m-t+2, 2).
std::int64_t symmetric_codim(std::size_t m, std::size_t t);

// ---------------------------------------------------------------------------
// Errors

class LiaisonError : public std::runtime_error {
 public:
  explicit LiaisonError(const std::string& what) : std::runtime_error(what) {}
  /// Chain step at which the error was raised (0-based), if any.
  std::optional<std::size_t> step;
};

/// A precondition of the descent step does not hold (structure, range,
/// classification, invertible entries).
class PreconditionFailed : public LiaisonError {
 public:
  using LiaisonError::LiaisonError;
};

class CharTwoRefused : public LiaisonError {
 public:
  using LiaisonError::LiaisonError;
};

/// Heights after congruence stay below the required values for every draw.
class ChainObstruction : public LiaisonError {
 public:
  ChainObstruction(const std::string& what, int ht_ItO, int ht_It1N)
      : LiaisonError(what), ht_ItO(ht_ItO), ht_It1N(ht_It1N) {}
  int ht_ItO;
  int ht_It1N;
};

/// Every draw in the retry budget failed a genericity check, but not
/// uniformly by a height deficit.
class GenericityExhausted : public LiaisonError {
 public:
  using LiaisonError::LiaisonError;
};

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { SymmetricDeterminantal, AlmostSymmetricDeterminantal, Neither };
std::string to_string(Verdict v);

struct ClassificationReport {
  bool structure_ok = false;
  bool t_homogeneous = false;
  bool saturated = false;
  std::int64_t expected_codim = 0;
  /// -1 when I_t is not homogeneous.
  int actual_codim = -1;
  Verdict verdict = Verdict::Neither;
  std::string reason;
};

struct StepHeights {
  int ht_ItM = 0;
  int ht_ItO = 0;
  int ht_It1N = 0;
  int ht_It1O = 0;
};

struct CrossCheck {
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// Failing tuples rendered as "(I;J),(K;L)" with 1-based indices.
  std::vector<std::string> witnesses;
};

struct StepCertificate {
  StepCertificate(PolyMatrix m, PolyMatrix o, PolyMatrix n) : M(std::move(m)), O(std::move(o)), N(std::move(n)) {}

  std::size_t t = 0;
  PolyMatrix M;  // after the congruence
  PolyMatrix O;
  PolyMatrix N;
  std::uint64_t seed_used = 0;
  int retries = 0;
  std::uint32_t a = 0;
  StepHeights heights;
  std::int64_t c = 0;
  bool ht1_ok = false;
  bool subm_condition2 = false;
  bool subm_sufficient = false;
  std::size_t identities_checked = 0;
  std::size_t identities_failed = 0;
  std::vector<std::string> witnesses;
  /// Basis of I_Y = I_t(O) used for the identity reductions.
  std::vector<Polynomial> gb_Y;
  /// One quotient pair realizing I_{X|Y} -> I_{X'|Y}: numerator minor with
  /// the last row and column, denominator without.
  std::string quotient_numerator;
  std::string quotient_denominator;
  std::vector<std::string> warnings;
  double heights_ms = 0;
  double identities_ms = 0;
};

struct ChainCertificate {
  ChainCertificate(PolyMatrix in, IdealBasis terminal) : input(std::move(in)), terminal_ideal(std::move(terminal)) {}

  PolyMatrix input;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::vector<StepCertificate> steps;
  IdealBasis terminal_ideal;
  std::size_t terminal_mu = 0;
  int terminal_height = 0;
  bool terminal_is_ci = false;
};

struct Ht1Result {
  int delta = 0;
  bool ok = false;
  int ht_ItM = 0;
  int ht_ItO = 0;
  std::uint64_t seed_used = 0;
  std::vector<std::string> warnings;
};

struct SubmResult {
  bool condition2 = false;
  bool sufficient = false;
  std::int64_t c = 0;
  int ht_It1O = 0;
  int ht_It1N = 0;
};

struct SubsdResult {
  bool condition2 = false;
  bool sufficient = false;
  std::int64_t c = 0;
  int ht_It1M = 0;
  int ht_It1O = 0;
};

struct DescentOptions {
  /// Run the descent in characteristic 2 anyway (diagnostic only).
  bool force_char2 = false;
};

// ---------------------------------------------------------------------------
// Operations

bool no_invertible_entries(const PolyMatrix& m);

ClassificationReport classify(const PolyMatrix& m, std::size_t t);
ClassificationReport classify_almost(const PolyMatrix& o, std::size_t t);

StepCertificate descend_step(const PolyMatrix& m, std::size_t t, std::uint64_t seed, const DescentOptions& opts = {});
ChainCertificate biliaison_chain(const PolyMatrix& m, std::size_t t, std::uint64_t seed,
                                 const DescentOptions& opts = {});

/// For each pair of (t-1)-tuples (I,J), (K,L) from the first m-1 indices,
/// reduces M_{I+m;J+m} M_{K;L} - M_{K+m;L+m} M_{I;J} modulo g_Y.
CrossCheck verify_cross_identities(const PolyMatrix& m, std::size_t t, const GroebnerBasis& g_Y);

/// Four strictly increasing index tuples of equal length a.
struct SylvesterTuples {
  std::vector<std::size_t> i, j, k, l;
};
/// M_{i;j} M_{k;l} - M_{k;j} M_{i;l} in I_{a+1}(M).
bool sylvester_membership(const PolyMatrix& m, const SylvesterTuples& tuples);
bool sylvester_membership(const PolyMatrix& m, const SylvesterTuples& tuples, const GroebnerBasis& g_a1);

/// Rows R+{i} / R+{k} and columns C+{j} / C+{l} sharing all but the last index.
struct SylvesterInstance {
  std::vector<std::size_t> rows_common, cols_common;
  std::size_t row_i = 0, row_k = 0, col_j = 0, col_l = 0;
};
/// Left minus right side of the two-rows-shared Sylvester identity; zero
/// polynomial when the identity holds.
Polynomial sylvester_defect(const PolyMatrix& m, const SylvesterInstance& inst);

Ht1Result check_ht1(const PolyMatrix& m, std::size_t t, std::uint64_t seed);
SubmResult check_subm(const PolyMatrix& o, std::size_t t);
SubsdResult check_subsd(const PolyMatrix& m, std::size_t t);

}  // namespace lforge
