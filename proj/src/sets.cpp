#include "folnerlab/sets.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace folnerlab {

namespace {

constexpr std::uint64_t kMaxGridCells = 1ull << 26;
constexpr std::uint64_t kMaxTorsion = 4096;
constexpr std::uint64_t kMaxGenericPairs = 1ull << 26;

void require_same_descriptor(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  if (a.descriptor() != b.descriptor())
    throw DescriptorMismatchError("sets live in different groups");
}

// ---------------------------------------------------------------------------
// Dense bit-grid engine for abelian kinds. A set splits into torsion fibers,
// each fiber a bitset over the bounding box of its free coordinates; sumsets
// become shifted word-level ORs.
// ---------------------------------------------------------------------------

struct AbelianSplit {
  int dims = 0;
  std::uint64_t torsion = 1;                    // product of moduli
  std::vector<std::int64_t> lo, hi;             // free bounding box
  std::vector<std::vector<std::int64_t>> fiber; // fiber -> flat dims-tuples
  std::uint64_t box_cells = 1;
};

std::uint64_t torsion_count(const GroupDescriptor& desc) {
  std::uint64_t t = 1;
  for (std::int64_t m : desc.moduli()) {
    if (t > kMaxTorsion) return t;
    t *= static_cast<std::uint64_t>(m);
  }
  return t;
}

std::uint64_t fiber_index(const GroupDescriptor& desc, const GroupElement& g) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < desc.moduli().size(); ++i)
    idx = idx * static_cast<std::uint64_t>(desc.moduli()[i]) +
          static_cast<std::uint64_t>(g.coords[i]);
  return idx;
}

std::uint64_t fiber_add(const GroupDescriptor& desc, std::uint64_t a, std::uint64_t b) {
  const auto& moduli = desc.moduli();
  std::vector<std::uint64_t> sum(moduli.size());
  for (std::size_t i = moduli.size(); i-- > 0;) {
    auto m = static_cast<std::uint64_t>(moduli[i]);
    sum[i] = (a % m + b % m) % m;
    a /= m;
    b /= m;
  }
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    out = out * static_cast<std::uint64_t>(moduli[i]) + sum[i];
  return out;
}

bool build_split(const FiniteGroupSet& s, AbelianSplit& out) {
  const GroupDescriptor& desc = s.descriptor();
  const int dims = desc.free_rank();
  if (dims < 1 || dims > 16) return false;
  const std::uint64_t t = torsion_count(desc);
  if (t > kMaxTorsion) return false;
  const std::size_t off = desc.moduli().size();
  out.dims = dims;
  out.torsion = t;
  out.lo.assign(dims, 0);
  out.hi.assign(dims, 0);
  const GroupElement& head = *s.begin();
  for (int j = 0; j < dims; ++j) out.lo[j] = out.hi[j] = head.coords[off + j];
  for (const GroupElement& g : s) {
    for (int j = 0; j < dims; ++j) {
      std::int64_t c = g.coords[off + j];
      out.lo[j] = std::min(out.lo[j], c);
      out.hi[j] = std::max(out.hi[j], c);
    }
  }
  out.box_cells = 1;
  for (int j = 0; j < dims; ++j) {
    auto range = static_cast<std::uint64_t>(out.hi[j] - out.lo[j] + 1);
    if (range > kMaxGridCells / out.box_cells) return false;
    out.box_cells *= range;
  }
  if (out.box_cells > kMaxGridCells) return false;
  out.fiber.assign(t, {});
  for (const GroupElement& g : s) {
    auto& pts = out.fiber[fiber_index(desc, g)];
    for (int j = 0; j < dims; ++j) pts.push_back(g.coords[off + j]);
  }
  return true;
}

// Row-major bitset over an integer box; the last dimension is the bit axis.
// Rows carry one padding word so shifted ORs never need a bounds branch.
struct BitGrid {
  int dims = 0;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> range;
  std::vector<std::size_t> row_stride;  // per leading dim, big-endian
  std::size_t rows = 1;
  std::size_t last_bits = 0;
  std::size_t row_words = 0;
  std::vector<std::uint64_t> bits;

  void init(const std::vector<std::int64_t>& lo_in, const std::vector<std::int64_t>& hi_in) {
    dims = static_cast<int>(lo_in.size());
    lo = lo_in;
    range.resize(dims);
    for (int j = 0; j < dims; ++j) range[j] = hi_in[j] - lo_in[j] + 1;
    row_stride.assign(dims > 0 ? dims - 1 : 0, 1);
    rows = 1;
    std::size_t acc = 1;
    for (int j = dims - 2; j >= 0; --j) {
      row_stride[j] = acc;
      acc *= static_cast<std::size_t>(range[j]);
      rows *= static_cast<std::size_t>(range[j]);
    }
    last_bits = static_cast<std::size_t>(range[dims - 1]);
    row_words = (last_bits + 63) / 64 + 1;
    bits.assign(rows * row_words, 0);
  }

  void set(const std::int64_t* pt) {
    std::size_t r = 0;
    for (int j = 0; j < dims - 1; ++j)
      r += static_cast<std::size_t>(pt[j] - lo[j]) * row_stride[j];
    auto bit = static_cast<std::size_t>(pt[dims - 1] - lo[dims - 1]);
    bits[r * row_words + bit / 64] |= 1ull << (bit % 64);
  }
};

// dst |= src << shift_bits; dst must have room for src_words + 1 words past
// the word offset, which the padding word guarantees.
inline void or_shifted_row(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                           std::size_t shift_bits) {
  const std::size_t word_off = shift_bits / 64;
  const unsigned bit_off = static_cast<unsigned>(shift_bits % 64);
  if (bit_off == 0) {
    for (std::size_t w = 0; w < src_words; ++w) dst[word_off + w] |= src[w];
    return;
  }
  for (std::size_t w = 0; w < src_words; ++w) {
    std::uint64_t v = src[w];
    if (v == 0) continue;
    dst[word_off + w] |= v << bit_off;
    dst[word_off + w + 1] |= v >> (64 - bit_off);
  }
}

struct GridProductPlan {
  AbelianSplit a, b;  // a is walked point by point, b is rasterised
  std::vector<std::int64_t> rlo, rhi;
  bool feasible = false;
};

GridProductPlan plan_grid_product(const FiniteGroupSet& sa, const FiniteGroupSet& sb) {
  GridProductPlan plan;
  if (!sa.descriptor().is_abelian()) return plan;
  if (sa.empty() || sb.empty()) return plan;
  if (!build_split(sa, plan.a) || !build_split(sb, plan.b)) return plan;
  const int dims = plan.a.dims;
  plan.rlo.resize(dims);
  plan.rhi.resize(dims);
  std::uint64_t result_cells = 1;
  for (int j = 0; j < dims; ++j) {
    plan.rlo[j] = plan.a.lo[j] + plan.b.lo[j];
    plan.rhi[j] = plan.a.hi[j] + plan.b.hi[j];
    auto range = static_cast<std::uint64_t>(plan.rhi[j] - plan.rlo[j] + 1);
    if (range > kMaxGridCells / result_cells) return plan;
    result_cells *= range;
  }
  if (result_cells > kMaxGridCells) return plan;
  if (plan.b.torsion * plan.b.box_cells > (1ull << 27)) return plan;
  plan.feasible = true;
  return plan;
}

// Runs the planned product fiber by fiber; `emit` sees each nonempty result
// fiber's finished grid.
template <typename Emit>
void run_grid_product(const GroupDescriptor& desc, const GridProductPlan& plan, Emit&& emit) {
  const int dims = plan.a.dims;

  std::vector<BitGrid> b_grids(plan.b.torsion);
  for (std::uint64_t t = 0; t < plan.b.torsion; ++t) {
    const auto& pts = plan.b.fiber[t];
    if (pts.empty()) continue;
    b_grids[t].init(plan.b.lo, plan.b.hi);
    for (std::size_t i = 0; i < pts.size(); i += dims) b_grids[t].set(pts.data() + i);
  }

  BitGrid result;
  result.init(plan.rlo, plan.rhi);

  // All b grids share geometry; precompute, per b row, its row offset inside
  // the result grid (strides differ between the two grids). Since the result
  // box origin is the sum of the two input origins, the result offset of a
  // product cell is simply the sum of the two in-box offsets.
  std::size_t b_rows = 1;
  for (int j = 0; j < dims - 1; ++j)
    b_rows *= static_cast<std::size_t>(plan.b.hi[j] - plan.b.lo[j] + 1);
  std::vector<std::size_t> row_base(b_rows, 0);
  if (dims > 1) {
    std::vector<std::int64_t> coord(dims - 1, 0);
    for (std::size_t r = 0; r < b_rows; ++r) {
      std::size_t base = 0;
      for (int j = 0; j < dims - 1; ++j)
        base += static_cast<std::size_t>(coord[j]) * result.row_stride[j];
      row_base[r] = base;
      for (int j = dims - 2; j >= 0; --j) {
        if (++coord[j] < plan.b.hi[j] - plan.b.lo[j] + 1) break;
        coord[j] = 0;
      }
    }
  }

  // Group fiber pairs by the torsion component of their product.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> pairs(plan.a.torsion);
  for (std::uint64_t ta = 0; ta < plan.a.torsion; ++ta) {
    if (plan.a.fiber[ta].empty()) continue;
    for (std::uint64_t tb = 0; tb < plan.b.torsion; ++tb) {
      if (plan.b.fiber[tb].empty()) continue;
      pairs[fiber_add(desc, ta, tb)].emplace_back(ta, tb);
    }
  }

  for (std::uint64_t r = 0; r < plan.a.torsion; ++r) {
    if (pairs[r].empty()) continue;
    std::fill(result.bits.begin(), result.bits.end(), 0);
    for (const auto& [ta, tb] : pairs[r]) {
      const BitGrid& bg = b_grids[tb];
      const auto& pts = plan.a.fiber[ta];
      for (std::size_t i = 0; i < pts.size(); i += dims) {
        const std::int64_t* a_pt = pts.data() + i;
        std::size_t arow = 0;
        for (int j = 0; j < dims - 1; ++j)
          arow += static_cast<std::size_t>(a_pt[j] - plan.a.lo[j]) * result.row_stride[j];
        const auto ashift = static_cast<std::size_t>(a_pt[dims - 1] - plan.a.lo[dims - 1]);
        for (std::size_t br = 0; br < bg.rows; ++br) {
          const std::uint64_t* src = bg.bits.data() + br * bg.row_words;
          std::uint64_t* dst = result.bits.data() + (arow + row_base[br]) * result.row_words;
          or_shifted_row(dst, src, bg.row_words - 1, ashift);
        }
      }
    }
    emit(r, result);
  }
}

std::uint64_t grid_count(const GroupDescriptor& desc, const GridProductPlan& plan) {
  std::uint64_t total = 0;
  run_grid_product(desc, plan, [&total](std::uint64_t, const BitGrid& g) {
    const std::size_t full_words = g.last_bits / 64;
    const std::size_t tail_bits = g.last_bits % 64;
    for (std::size_t r = 0; r < g.rows; ++r) {
      const std::uint64_t* row = g.bits.data() + r * g.row_words;
      for (std::size_t w = 0; w < full_words; ++w)
        total += static_cast<std::uint64_t>(std::popcount(row[w]));
      if (tail_bits)
        total += static_cast<std::uint64_t>(
            std::popcount(row[full_words] & ((1ull << tail_bits) - 1)));
    }
  });
  return total;
}

std::vector<GroupElement> grid_materialize(const GroupDescriptor& desc,
                                           const GridProductPlan& plan) {
  std::vector<GroupElement> out;
  const int dims = plan.a.dims;
  const std::size_t moduli_count = desc.moduli().size();
  run_grid_product(desc, plan, [&](std::uint64_t fiber, const BitGrid& g) {
    std::vector<std::int64_t> residues(moduli_count, 0);
    std::uint64_t f = fiber;
    for (std::size_t i = moduli_count; i-- > 0;) {
      auto m = static_cast<std::uint64_t>(desc.moduli()[i]);
      residues[i] = static_cast<std::int64_t>(f % m);
      f /= m;
    }
    std::vector<std::int64_t> prefix(dims > 1 ? dims - 1 : 0, 0);
    for (std::size_t r = 0; r < g.rows; ++r) {
      const std::uint64_t* row = g.bits.data() + r * g.row_words;
      for (std::size_t bit = 0; bit < g.last_bits; ++bit) {
        if (!(row[bit / 64] >> (bit % 64) & 1)) continue;
        GroupElement e;
        e.coords.reserve(moduli_count + static_cast<std::size_t>(dims));
        e.coords.insert(e.coords.end(), residues.begin(), residues.end());
        for (int j = 0; j < dims - 1; ++j) e.coords.push_back(g.lo[j] + prefix[j]);
        e.coords.push_back(g.lo[dims - 1] + static_cast<std::int64_t>(bit));
        out.push_back(std::move(e));
      }
      for (int j = dims - 2; j >= 0; --j) {
        if (++prefix[j] < g.range[j]) break;
        prefix[j] = 0;
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Packed 64-bit keys for Lamplighter products: the lamp window occupies the
// low bits, the shift offset the high bits. Lamp arithmetic over Z/2 is XOR.
// ---------------------------------------------------------------------------

struct WreathStats {
  std::int64_t shift_lo = 0, shift_hi = 0;
  std::int64_t pos_lo = 0, pos_hi = 0;
  bool any_config = false;
};

WreathStats wreath_stats(const FiniteGroupSet& s) {
  WreathStats st;
  bool first = true;
  for (const GroupElement& g : s) {
    if (first) {
      st.shift_lo = st.shift_hi = g.shift;
      first = false;
    } else {
      st.shift_lo = std::min(st.shift_lo, g.shift);
      st.shift_hi = std::max(st.shift_hi, g.shift);
    }
    for (const auto& [pos, val] : g.config) {
      (void)val;
      if (!st.any_config) {
        st.pos_lo = st.pos_hi = pos;
        st.any_config = true;
      } else {
        st.pos_lo = std::min(st.pos_lo, pos);
        st.pos_hi = std::max(st.pos_hi, pos);
      }
    }
  }
  return st;
}

struct LamplighterPlan {
  bool feasible = false;
  std::int64_t window_lo = 0;
  unsigned window_bits = 0;
  std::int64_t shift_lo = 0;
};

LamplighterPlan plan_lamplighter(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  LamplighterPlan plan;
  if (a.descriptor().kind() != GroupKind::Lamplighter || a.empty() || b.empty()) return plan;
  const WreathStats sa = wreath_stats(a);
  const WreathStats sb = wreath_stats(b);
  // Product lamps sit at (a position - b shift) or at a b position.
  std::int64_t wlo = 0, whi = -1;
  bool any = false;
  if (sa.any_config) {
    wlo = sa.pos_lo - sb.shift_hi;
    whi = sa.pos_hi - sb.shift_lo;
    any = true;
  }
  if (sb.any_config) {
    wlo = any ? std::min(wlo, sb.pos_lo) : sb.pos_lo;
    whi = any ? std::max(whi, sb.pos_hi) : sb.pos_hi;
    any = true;
  }
  const std::uint64_t window = any ? static_cast<std::uint64_t>(whi - wlo + 1) : 0;
  const auto shift_range =
      static_cast<std::uint64_t>((sa.shift_hi + sb.shift_hi) - (sa.shift_lo + sb.shift_lo) + 1);
  const auto shift_bits = static_cast<unsigned>(std::bit_width(shift_range));
  if (window + shift_bits > 63) return plan;
  plan.feasible = true;
  plan.window_lo = wlo;
  plan.window_bits = static_cast<unsigned>(window);
  plan.shift_lo = sa.shift_lo + sb.shift_lo;
  return plan;
}

std::uint64_t lamplighter_count(const FiniteGroupSet& a, const FiniteGroupSet& b,
                                const LamplighterPlan& plan) {
  struct Packed {
    std::int64_t shift;
    std::uint64_t mask;
  };
  auto pack = [&plan](const FiniteGroupSet& s) {
    std::vector<Packed> out;
    out.reserve(s.size());
    for (const GroupElement& g : s) {
      std::uint64_t mask = 0;
      for (const auto& [pos, val] : g.config) {
        (void)val;
        mask |= 1ull << static_cast<unsigned>(pos - plan.window_lo);
      }
      out.push_back({g.shift, mask});
    }
    return out;
  };
  const std::vector<Packed> pa = pack(a);
  const std::vector<Packed> pb = pack(b);
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(std::min<std::size_t>(pa.size() * pb.size(), std::size_t{1} << 22));
  for (const Packed& ea : pa) {
    for (const Packed& eb : pb) {
      // (n,u)(m,v): u's lamps move down by m, then XOR with v's lamps.
      const std::uint64_t moved = eb.shift >= 0
                                      ? ea.mask >> static_cast<unsigned>(eb.shift)
                                      : ea.mask << static_cast<unsigned>(-eb.shift);
      std::uint64_t key = moved ^ eb.mask;
      key |= static_cast<std::uint64_t>(ea.shift + eb.shift - plan.shift_lo)
             << plan.window_bits;
      keys.insert(key);
    }
  }
  return keys.size();
}

std::uint64_t generic_count(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  if (pairs > kMaxGenericPairs)
    throw GuardExceededError("product enumeration larger than the safety guard");
  std::unordered_set<std::string> keys;
  keys.reserve(std::min<std::uint64_t>(pairs, std::uint64_t{1} << 22));
  std::string buf;
  for (const GroupElement& x : a) {
    for (const GroupElement& y : b) {
      buf.clear();
      encode_element(multiply(a.descriptor(), x, y), buf);
      keys.insert(buf);
    }
  }
  return keys.size();
}

}  // namespace

FiniteGroupSet::FiniteGroupSet(GroupDescriptor desc, std::vector<GroupElement> elems)
    : desc_(std::move(desc)), elems_(std::move(elems)) {
  for (const GroupElement& g : elems_) validate_element(desc_, g);
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool FiniteGroupSet::contains(const GroupElement& g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

namespace detail {

FiniteGroupSet product_generic(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  require_same_descriptor(a, b);
  const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  if (pairs > kMaxGenericPairs)
    throw GuardExceededError("product enumeration larger than the safety guard");
  std::unordered_set<GroupElement, ElementHash> seen;
  seen.reserve(std::min<std::uint64_t>(pairs, std::uint64_t{1} << 22));
  for (const GroupElement& x : a)
    for (const GroupElement& y : b) seen.insert(multiply(a.descriptor(), x, y));
  std::vector<GroupElement> out(seen.begin(), seen.end());
  return FiniteGroupSet(a.descriptor(), std::move(out));
}

}  // namespace detail

FiniteGroupSet product(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  require_same_descriptor(a, b);
  if (a.empty() || b.empty()) return FiniteGroupSet(a.descriptor());
  if (a.descriptor().is_abelian()) {
    // Walk the smaller side point by point; abelian products commute.
    const FiniteGroupSet& pts = a.size() <= b.size() ? a : b;
    const FiniteGroupSet& grid = a.size() <= b.size() ? b : a;
    GridProductPlan plan = plan_grid_product(pts, grid);
    if (plan.feasible)
      return FiniteGroupSet(a.descriptor(), grid_materialize(a.descriptor(), plan));
  }
  return detail::product_generic(a, b);
}

std::uint64_t product_size(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  require_same_descriptor(a, b);
  if (a.empty() || b.empty()) return 0;
  if (a.descriptor().is_abelian()) {
    const FiniteGroupSet& pts = a.size() <= b.size() ? a : b;
    const FiniteGroupSet& grid = a.size() <= b.size() ? b : a;
    GridProductPlan plan = plan_grid_product(pts, grid);
    if (plan.feasible) return grid_count(a.descriptor(), plan);
  }
  if (a.descriptor().kind() == GroupKind::Lamplighter) {
    LamplighterPlan plan = plan_lamplighter(a, b);
    if (plan.feasible) {
      const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
      if (pairs > (1ull << 28))
        throw GuardExceededError("product enumeration larger than the safety guard");
      return lamplighter_count(a, b, plan);
    }
  }
  return generic_count(a, b);
}

FiniteGroupSet inverse_set(const FiniteGroupSet& a) {
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const GroupElement& g : a) out.push_back(inverse(a.descriptor(), g));
  return FiniteGroupSet(a.descriptor(), std::move(out));
}

FiniteGroupSet translate(const GroupElement& g, const FiniteGroupSet& a, Side side) {
  validate_element(a.descriptor(), g);
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const GroupElement& x : a)
    out.push_back(side == Side::Left ? multiply(a.descriptor(), g, x)
                                     : multiply(a.descriptor(), x, g));
  return FiniteGroupSet(a.descriptor(), std::move(out));
}

FiniteGroupSet set_union(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  require_same_descriptor(a, b);
  std::vector<GroupElement> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteGroupSet(a.descriptor(), std::move(out));
}

bool is_subset(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  require_same_descriptor(a, b);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

InvarianceRatios invariance_exact(const FiniteGroupSet& f,
                                  const std::vector<GroupElement>& generators, Side side) {
  if (f.empty()) throw EmptySetError("invariance of an empty set is undefined");
  InvarianceRatios out;
  out.generators = generators;
  const auto size = static_cast<std::int64_t>(f.size());
  Rational min_ratio(1, 1);
  for (const GroupElement& g : generators) {
    validate_element(f.descriptor(), g);
    std::int64_t overlap = 0;
    for (const GroupElement& x : f) {
      GroupElement y = side == Side::Left ? multiply(f.descriptor(), g, x)
                                          : multiply(f.descriptor(), x, g);
      if (f.contains(y)) ++overlap;
    }
    Rational ratio(overlap, size);
    out.ratios.push_back(ratio);
    min_ratio = std::min(min_ratio, ratio);
  }
  out.defect = Rational(1, 1) - min_ratio;
  return out;
}

InvarianceReport invariance(const FiniteGroupSet& f, const std::vector<GroupElement>& generators,
                            Side side) {
  InvarianceRatios exact = invariance_exact(f, generators, side);
  InvarianceReport out;
  out.generators = std::move(exact.generators);
  out.ratios.reserve(exact.ratios.size());
  for (const Rational& q : exact.ratios) out.ratios.push_back(to_double(q));
  out.defect = to_double(exact.defect);
  return out;
}

namespace {

FiniteGroupSet union_of_inverses(const std::vector<FiniteGroupSet>& prefix,
                                 const FiniteGroupSet& f) {
  FiniteGroupSet u(f.descriptor());
  for (const FiniteGroupSet& s : prefix) {
    require_same_descriptor(s, f);
    u = set_union(u, inverse_set(s));
  }
  return u;
}

}  // namespace

FiniteGroupSet union_inverse_product(const std::vector<FiniteGroupSet>& prefix,
                                     const FiniteGroupSet& f) {
  if (prefix.empty()) return f;
  return product(union_of_inverses(prefix, f), f);
}

std::uint64_t union_inverse_product_size(const std::vector<FiniteGroupSet>& prefix,
                                         const FiniteGroupSet& f) {
  if (prefix.empty()) return f.size();
  return product_size(union_of_inverses(prefix, f), f);
}

FiniteGroupSet parse_set_literal(const GroupDescriptor& desc, std::istream& in) {
  std::vector<GroupElement> elems;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    elems.push_back(parse_element(desc, line.substr(start)));
  }
  return FiniteGroupSet(desc, std::move(elems));
}

void write_set_literal(const FiniteGroupSet& s, std::ostream& out) {
  out << "# group: " << render_descriptor(s.descriptor()) << "\n";
  for (const GroupElement& g : s) out << format_element(s.descriptor(), g) << "\n";
}

}  // namespace folnerlab
