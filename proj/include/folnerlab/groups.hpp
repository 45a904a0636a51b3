#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folnerlab/error.hpp"

namespace folnerlab {

enum class GroupKind { FreeAbelian, FiniteByFree, Lamplighter, WreathZZ };

/// Immutable description of one of the supported groups.
///
///   FreeAbelian(d)            Z^d, d >= 1
///   FiniteByFree(moduli, d)   Z/m_1 + ... + Z/m_t + Z^d, every m_i >= 2, d >= 0
///   Lamplighter               Z acting on a direct sum of Z/2 by shifts
///   WreathZZ                  Z acting on a direct sum of Z by shifts
///
/// FiniteByFree with an empty modulus list normalizes to FreeAbelian.
class GroupDescriptor {
 public:
  static GroupDescriptor free_abelian(int d);
  static GroupDescriptor finite_by_free(std::vector<std::int64_t> moduli, int d);
  static GroupDescriptor lamplighter();
  static GroupDescriptor wreath_zz();

  GroupKind kind() const { return kind_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  int free_rank() const { return free_rank_; }

  /// Rank of the largest Z^d this group contains; nullopt means unbounded.
  std::optional<int> declared_rank() const;

  bool is_abelian() const {
    return kind_ == GroupKind::FreeAbelian || kind_ == GroupKind::FiniteByFree;
  }

  /// Number of stored coordinates for abelian kinds (torsion residues first).
  std::size_t coord_count() const { return moduli_.size() + static_cast<std::size_t>(free_rank_); }

  bool operator==(const GroupDescriptor& other) const {
    return kind_ == other.kind_ && moduli_ == other.moduli_ && free_rank_ == other.free_rank_;
  }
  bool operator!=(const GroupDescriptor& other) const { return !(*this == other); }

 private:
  GroupDescriptor(GroupKind kind, std::vector<std::int64_t> moduli, int free_rank);

  GroupKind kind_;
  std::vector<std::int64_t> moduli_;
  int free_rank_;
};

/// Canonical element representation. Which fields carry data depends on the
/// group kind:
///   abelian kinds   coords = torsion residues (reduced) followed by free
///                   coordinates; shift and config unused
///   wreath kinds    shift plus config = sorted (position, value) pairs with
///                   nonzero values; Lamplighter values are always 1
struct GroupElement {
  std::int64_t shift = 0;
  std::vector<std::int64_t> coords;
  std::vector<std::pair<std::int64_t, std::int64_t>> config;

  bool operator==(const GroupElement& other) const {
    return shift == other.shift && coords == other.coords && config == other.config;
  }
  bool operator!=(const GroupElement& other) const { return !(*this == other); }
  bool operator<(const GroupElement& other) const;
};

GroupElement identity(const GroupDescriptor& desc);
GroupElement multiply(const GroupDescriptor& desc, const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupDescriptor& desc, const GroupElement& g);
GroupElement power(const GroupDescriptor& desc, const GroupElement& g, std::int64_t exponent);

/// True when `g` is a structurally valid, canonical element of `desc`.
bool is_canonical(const GroupDescriptor& desc, const GroupElement& g);

/// Throws DescriptorMismatchError unless is_canonical(desc, g).
void validate_element(const GroupDescriptor& desc, const GroupElement& g);

/// Abelian constructor; residues are reduced into range.
GroupElement make_abelian(const GroupDescriptor& desc, std::vector<std::int64_t> coords);

/// Wreath constructor; config is sorted, merged, and stripped of zeros.
GroupElement make_wreath(const GroupDescriptor& desc, std::int64_t shift,
                         std::vector<std::pair<std::int64_t, std::int64_t>> config);

/// Appends a fixed-width canonical byte encoding of `g` to `out`.
void encode_element(const GroupElement& g, std::string& out);

std::uint64_t hash_element(const GroupElement& g);

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const {
    return static_cast<std::size_t>(hash_element(g));
  }
};

/// A designated copy of Z^d inside the group: d pairwise commuting images of
/// the unit vectors. Construction verifies commutativity and that no
/// nontrivial combination with coefficients in [-3,3]^d collapses to the
/// identity.
class ZdEmbedding {
 public:
  ZdEmbedding(GroupDescriptor desc, std::vector<GroupElement> images);

  const GroupDescriptor& descriptor() const { return desc_; }
  int dimension() const { return static_cast<int>(images_.size()); }
  const std::vector<GroupElement>& images() const { return images_; }

  /// Membership in the embedded subgroup, decided by solving for integer
  /// coordinates in the image basis and re-verifying in the group.
  bool contains(const GroupElement& g) const;

 private:
  GroupDescriptor desc_;
  std::vector<GroupElement> images_;
};

/// Unit-vector embedding for abelian kinds, the shift generator for
/// Lamplighter (d = 1 only), and base-coordinate units for WreathZZ.
/// Throws RankExceededError when d exceeds the declared rank.
ZdEmbedding standard_embedding(const GroupDescriptor& desc, int d);

/// Descriptor DSL: "Z^d", "Z/m1xZ/m2x...xZ^d", "lamplighter", "wreath-zz".
/// Case-insensitive; tokens separated by 'x'. Throws ParseError with the
/// byte offset of the first offending character.
GroupDescriptor parse_descriptor(const std::string& text);
std::string render_descriptor(const GroupDescriptor& desc);

/// One-element-per-line text forms used by set literal files:
///   abelian      "c1,c2,...,ck"  (torsion residues first, then free coords)
///   Lamplighter  "shift;p1,p2,..."       (lamp positions)
///   WreathZZ     "shift;p1:v1,p2:v2,..." (position:value pairs)
GroupElement parse_element(const GroupDescriptor& desc, const std::string& line);
std::string format_element(const GroupDescriptor& desc, const GroupElement& g);

}  // namespace folnerlab
