#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "folnerlab/sets.hpp"

namespace folnerlab {

enum class FolnerFamily {
  Boxes,                // free abelian: {0..n}^d
  LamplighterStandard,  // shifts 0..n, lamps supported in [0, n]
  WreathStandard,       // shifts 0..n, support in [0, n], |values| <= h(n)
  AbelianTempelman,     // torsion-and-box construction along the canonical enumeration
  Explicit,             // caller-provided list
};

/// Height rule h(n) = factor * n + offset for WreathStandard.
struct HeightRule {
  std::int64_t factor = 1;
  std::int64_t offset = 0;

  std::int64_t operator()(int n) const { return factor * n + offset; }
};

struct FolnerSequenceSpec {
  GroupDescriptor descriptor;
  FolnerFamily family = FolnerFamily::Boxes;
  HeightRule height;                          // WreathStandard only
  std::vector<FiniteGroupSet> explicit_sets;  // Explicit only
  int max_index = 64;
};

/// n-th set of the family, 1-based. Throws on an index outside
/// [1, max_index] or a family incompatible with the group kind.
FiniteGroupSet generate(const FolnerSequenceSpec& spec, int n);

/// Deterministic enumeration a_1, a_2, ... of an abelian group: the identity
/// and torsion layer first, then free-coordinate shells of growing sup-norm,
/// each shell ordered by element comparison. Pure torsion groups cycle
/// through their elements. Returns the first `count` terms.
std::vector<GroupElement> canonical_enumeration(const GroupDescriptor& desc, int count);

/// One index of the torsion-and-box construction: F_n is the torsion closure
/// T_n times the cube {0..k(n)}^{d(n)} spread along the lattice basis.
struct TempelmanStep {
  int n = 0;
  FiniteGroupSet torsion_part;
  int free_rank = 0;                       // d(n)
  std::vector<GroupElement> lattice_basis; // d(n) independent elements
  std::int64_t box_size = 0;               // k(n); 0 while d(n) = 0
  FiniteGroupSet set;                      // F_n
};

struct TempelmanConstruction {
  GroupDescriptor descriptor;
  std::vector<TempelmanStep> steps;
};

/// Builds F_1..F_N over an abelian group so that F_{n-1} is contained in F_n
/// and F_n is (1 - 1/n)-invariant under a_1..a_n, with k(n) minimal for the
/// basis recovered from the enumeration's free parts (Hermite normal form).
/// The outputs satisfy |F_n^{-1} F_n| <= 2^{d(n)} |F_n|.
TempelmanConstruction construct_abelian_tempelman(const GroupDescriptor& desc,
                                                  const std::vector<GroupElement>& enumeration,
                                                  int max_index);

/// |F^{-1}F| / |F| as an exact rational. Throws EmptySetError on empty F.
Rational tempelman_constant(const FiniteGroupSet& f);

/// t_n = |(union of F_i^{-1}, i < n) F_n| / |F_n| for each n; t_1 = 1 by the
/// empty-prefix convention.
std::vector<Rational> tempered_constants(const std::vector<FiniteGroupSet>& seq);

/// Greedy subsequence selection: n_1 = 1, then the smallest next index whose
/// prefix product stays within c times the set size. Returns `count` 1-based
/// indices or throws ExhaustionError carrying the partial selection once
/// max_index is exhausted.
std::vector<int> extract_tempered(const FolnerSequenceSpec& spec, const Rational& c, int count);

/// Exact post-hoc check of the tempered bound with constant c.
bool verify_tempered(const std::vector<FiniteGroupSet>& seq, const Rational& c);

struct SequenceReportRow {
  int n = 0;
  std::uint64_t size = 0;
  Rational tempelman;               // c_n
  Rational tempered;                // t_n
  std::optional<Rational> growth;   // |F_n| / |F_{n-1}|
  Rational defect;                  // invariance defect against the embedding
};

struct SequenceReport {
  GroupDescriptor descriptor;
  std::vector<SequenceReportRow> rows;
};

/// Per-index size, constants, growth ratio, and left-invariance defect
/// against the embedding's generators.
SequenceReport sequence_report(const std::vector<FiniteGroupSet>& seq,
                               const ZdEmbedding& embedding);

/// CSV with header "n,size,c_n,t_n,ratio,defect"; the first row's ratio
/// column is empty.
void write_report_csv(const SequenceReport& report, std::ostream& out);

}  // namespace folnerlab
