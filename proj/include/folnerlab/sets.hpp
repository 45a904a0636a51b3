#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "folnerlab/groups.hpp"
#include "folnerlab/rational.hpp"

namespace folnerlab {

/// Finite subset of a group. Elements are held sorted by their canonical
/// encoding, so iteration order is deterministic and membership is a binary
/// search.
class FiniteGroupSet {
 public:
  explicit FiniteGroupSet(GroupDescriptor desc) : desc_(std::move(desc)) {}
  FiniteGroupSet(GroupDescriptor desc, std::vector<GroupElement> elems);

  const GroupDescriptor& descriptor() const { return desc_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<GroupElement>& elements() const { return elems_; }
  bool contains(const GroupElement& g) const;

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool operator==(const FiniteGroupSet& other) const {
    return desc_ == other.desc_ && elems_ == other.elems_;
  }

 private:
  GroupDescriptor desc_;
  std::vector<GroupElement> elems_;
};

enum class Side { Left, Right };

/// Exact per-generator translate overlap ratios of a set.
struct InvarianceRatios {
  std::vector<GroupElement> generators;
  std::vector<Rational> ratios;  // |gF ∩ F| / |F| per generator
  Rational defect;               // 1 - min ratio
};

/// Same data rendered to floating point for reports.
struct InvarianceReport {
  std::vector<GroupElement> generators;
  std::vector<double> ratios;
  double defect = 0.0;
};

FiniteGroupSet product(const FiniteGroupSet& a, const FiniteGroupSet& b);

/// |a b| without materializing the product set. Dispatches to a dense
/// bit-grid for abelian kinds and to packed 64-bit keys for Lamplighter
/// sets whose supports fit one machine word.
std::uint64_t product_size(const FiniteGroupSet& a, const FiniteGroupSet& b);

FiniteGroupSet inverse_set(const FiniteGroupSet& a);
FiniteGroupSet translate(const GroupElement& g, const FiniteGroupSet& a, Side side);
FiniteGroupSet set_union(const FiniteGroupSet& a, const FiniteGroupSet& b);
bool is_subset(const FiniteGroupSet& a, const FiniteGroupSet& b);

InvarianceRatios invariance_exact(const FiniteGroupSet& f, const std::vector<GroupElement>& generators,
                                  Side side = Side::Left);
InvarianceReport invariance(const FiniteGroupSet& f, const std::vector<GroupElement>& generators,
                            Side side = Side::Left);

/// (F_1^{-1} ∪ ... ∪ F_j^{-1}) F. An empty prefix list stands for the
/// union over an empty index set, read as {identity}, so the result is F.
FiniteGroupSet union_inverse_product(const std::vector<FiniteGroupSet>& prefix,
                                     const FiniteGroupSet& f);
std::uint64_t union_inverse_product_size(const std::vector<FiniteGroupSet>& prefix,
                                         const FiniteGroupSet& f);

/// Set literal files: one element per line (see parse_element for the line
/// grammar); blank lines and lines starting with '#' are ignored.
FiniteGroupSet parse_set_literal(const GroupDescriptor& desc, std::istream& in);
void write_set_literal(const FiniteGroupSet& s, std::ostream& out);

namespace detail {
/// Pairwise-enumeration product, kept independent of the fast paths so the
/// two routes can be checked against each other.
FiniteGroupSet product_generic(const FiniteGroupSet& a, const FiniteGroupSet& b);
}  // namespace detail

}  // namespace folnerlab
