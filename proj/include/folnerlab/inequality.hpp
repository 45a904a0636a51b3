#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folnerlab/groups.hpp"
#include "folnerlab/rational.hpp"
#include "folnerlab/sets.hpp"

namespace folnerlab {

/// Which sumset lower bound a report is about. Tokens match the CLI verbs.
enum class Statement {
  DiscreteBM,     // |A+B| >= (1-2d^2 delta)(|A|^{1/d}+|B|^{1/d})^d on Z^d
  ProductLemma,   // same bound for |AB| and |BA|, A inside an embedded Z^d
  SameSizeLemma,  // |F^{-1}F| >= 2^d (1-2d^2 sqrt(delta))(1-d sqrt(delta)) |F|
  DiffSizeLemma,  // |F1^{-1}F2| >= same coefficient times min{|F1|,|F2|}
  LowerBound,     // per-index form of the 2^d bound on Tempelman constants
  Growth,         // |F_n| >= (2^{d-2}/C) |F_{n-1}| past the invariance onset
};

enum class Verdict {
  Holds,          // bound checked and satisfied
  Fails,          // bound checked and violated
  Vacuous,        // satisfied, but the bound carries no content
  NotApplicable,  // hypotheses not met at this index; nothing asserted
};

const char* statement_token(Statement s);
const char* verdict_token(Verdict v);

/// Floating-point slack when comparing the exact integer lhs against the
/// irrational rhs. Orders of magnitude below the integer quantization of
/// any cardinality, so it can flip no honest verdict.
inline constexpr double kInequalitySlack = 1e-9;

struct InequalityReport {
  Statement statement;
  BigInt lhs;         // exact cardinality (or exact size for growth rows)
  double rhs;         // analytic bound
  double delta_used;  // invariance defect fed into the bound
  int dimension;
  bool holds;    // lhs >= rhs - kInequalitySlack (growth rows: exact compare)
  bool vacuous;  // rhs <= 0, or a growth factor <= 1: nothing is claimed
  Verdict verdict;
  std::string inputs_digest;  // 16 hex chars, stable fingerprint of inputs
};

/// Sumset bound on Z^d with the defect measured from A alone:
/// delta = max_i (1 - |A cap (A+e_i)| / |A|). Throws on empty inputs,
/// mismatched descriptors, or a group that is not free abelian.
InequalityReport check_discrete_bm(const FiniteGroupSet& a, const FiniteGroupSet& b);

/// Two-sided product bound for A contained in the embedded copy of Z^d and
/// B an arbitrary finite subset of the ambient group. Returns the |AB| and
/// |BA| reports in that order. Throws ContainmentError when some element of
/// A falls outside the embedded subgroup.
std::pair<InequalityReport, InequalityReport> check_lemma_abelian_product(
    const FiniteGroupSet& a, const FiniteGroupSet& b, const ZdEmbedding& embedding);

/// |F^{-1}F| against 2^d (1-2d^2 sqrt(delta))(1-d sqrt(delta)) |F|, with the
/// defect measured by left multiplication with the embedding images.
InequalityReport check_lemma_same_size(const FiniteGroupSet& f, const ZdEmbedding& embedding);

/// Mixed-size variant: lhs = |F1^{-1}F2|, the coefficient uses the worse of
/// the two defects, and the size factor is min{|F1|, |F2|}. With F1 = F2
/// this reproduces check_lemma_same_size exactly (shared code path).
InequalityReport check_lemma_diff_size(const FiniteGroupSet& f1, const FiniteGroupSet& f2,
                                       const ZdEmbedding& embedding);

/// Exact inputs for the growth check when materializing the sets is not
/// feasible: sizes[i] and defects[i] describe the i-th set of the sequence.
struct GrowthMetrics {
  std::vector<BigInt> sizes;
  std::vector<Rational> defects;
};

/// Growth step check. Finds the first index N from which every later defect
/// stays at or below 1/(16 d^2); for each n > N compares |F_n| against
/// (2^{d-2}/C) |F_{n-1}| with exact rational arithmetic. Rows at or before N
/// (or all rows, when no such N exists) come back NotApplicable. When
/// 2^{d-2} <= C the factor is at most 1 and satisfied rows are flagged
/// Vacuous. Result is aligned with the input: entry i describes set i+1.
std::vector<InequalityReport> check_growth_implication_metrics(const GrowthMetrics& metrics,
                                                               const Rational& c, int dimension);

/// Same check driven by concrete sets; sizes and defects are measured
/// against the embedding images and passed to the metrics form.
std::vector<InequalityReport> check_growth_implication(const std::vector<FiniteGroupSet>& seq,
                                                       const Rational& c,
                                                       const ZdEmbedding& embedding);

struct LowerBoundReport {
  std::vector<InequalityReport> per_index;  // finite-n bound at every index
  Rational max_constant;                    // max_n |F_n^{-1}F_n| / |F_n|
  int dimension;
  bool holds;  // every per-index bound holds
};

/// Checks c_n >= 2^d (1-2d^2 sqrt(delta_n))(1-d sqrt(delta_n)) at every
/// index and reports the running maximum of c_n for comparison with 2^d.
LowerBoundReport check_lower_bound_claim(const std::vector<FiniteGroupSet>& seq,
                                         const ZdEmbedding& embedding);

/// One enumerated pair of subsets of the box {0..side-1}^d, with the facts
/// a predicate might need precomputed. Cell index convention: the last
/// coordinate varies fastest, index = sum_j coord_j * side^(d-1-j).
struct OracleInstance {
  std::uint64_t a_mask;
  std::uint64_t b_mask;
  int dimension;
  int side;
  int size_a;
  int size_b;
  int sumset_size;  // |A+B|
  double defect_a;  // max_i (1 - |A cap (A+e_i)| / |A|)
  double defect_b;
};

using OraclePredicate = std::function<bool(const OracleInstance&)>;

struct OracleCounterexample {
  std::uint64_t a_mask;
  std::uint64_t b_mask;
  std::uint64_t rank;  // position in the (a, b) scan order, 0-based
};

/// Minimum observed |A+B| over all enumerated pairs with these sizes.
struct SumsetExtremal {
  int size_a;
  int size_b;
  int min_sumset;
};

struct OracleResult {
  std::uint64_t pairs_checked;
  std::optional<OracleCounterexample> counterexample;  // lowest rank, if any
  std::vector<SumsetExtremal> extremal;
};

/// Exhaustive sweep over every pair of nonempty subsets of {0..side-1}^d.
/// All pairs are always evaluated, the counterexample reported is the one
/// of lowest enumeration rank, and the extremal table is a pure function of
/// (dimension, side), so results are identical for any worker count.
/// Guard: at most 2^26 pairs, so side^d <= 13 cells.
OracleResult brute_force_oracle(int dimension, int box_side, const OraclePredicate& predicate,
                                int workers = 1);

/// The sumset bound as an oracle predicate (slack kInequalitySlack).
OraclePredicate discrete_bm_predicate();

/// Deliberately falsifiable |A+B| >= |A| + |B|; A = B = {0} refutes it.
OraclePredicate sumset_floor_predicate();

/// Decodes an oracle bitmask into a concrete set, same cell convention as
/// OracleInstance. Used to cross-check oracle runs against the set engine.
FiniteGroupSet oracle_mask_to_set(std::uint64_t mask, int dimension, int side);

}  // namespace folnerlab
