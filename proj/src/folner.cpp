#include "folnerlab/folner.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace folnerlab {

namespace {

constexpr std::uint64_t kMaxSetSize = 1ull << 26;
constexpr std::uint64_t kMaxConstructionSize = 1ull << 22;
constexpr std::int64_t kMaxBoxSize = 1ll << 24;

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod = 0, sum = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
    throw OverflowError("coordinate arithmetic overflow");
  return sum;
}

// Odometer over {0..limit}^dims. Returns false once exhausted.
bool advance_box(std::vector<std::int64_t>& c, std::int64_t limit) {
  for (std::size_t j = c.size(); j-- > 0;) {
    if (++c[j] <= limit) return true;
    c[j] = 0;
  }
  return false;
}

FiniteGroupSet make_box(const GroupDescriptor& desc, int n) {
  if (desc.kind() != GroupKind::FreeAbelian)
    throw Error("box family requires a free abelian group");
  const int d = desc.free_rank();
  std::uint64_t cells = 1;
  for (int j = 0; j < d; ++j) {
    if (static_cast<std::uint64_t>(n) + 1 > kMaxSetSize / cells)
      throw GuardExceededError("box larger than the safety guard");
    cells *= static_cast<std::uint64_t>(n) + 1;
  }
  std::vector<GroupElement> elems;
  elems.reserve(cells);
  std::vector<std::int64_t> c(d, 0);
  do {
    GroupElement e;
    e.coords = c;
    elems.push_back(std::move(e));
  } while (advance_box(c, n));
  return FiniteGroupSet(desc, std::move(elems));
}

FiniteGroupSet make_lamplighter_standard(const GroupDescriptor& desc, int n) {
  if (desc.kind() != GroupKind::Lamplighter)
    throw Error("lamplighter family requires the lamplighter group");
  if (n >= 25) throw GuardExceededError("lamplighter set larger than the safety guard");
  const std::uint64_t patterns = 1ull << (n + 1);
  if (static_cast<std::uint64_t>(n + 1) * patterns > kMaxSetSize)
    throw GuardExceededError("lamplighter set larger than the safety guard");
  std::vector<GroupElement> elems;
  elems.reserve(static_cast<std::size_t>(n + 1) * patterns);
  for (std::int64_t s = 0; s <= n; ++s) {
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      GroupElement e;
      e.shift = s;
      for (int i = 0; i <= n; ++i)
        if (mask >> i & 1) e.config.emplace_back(i, 1);
      elems.push_back(std::move(e));
    }
  }
  return FiniteGroupSet(desc, std::move(elems));
}

FiniteGroupSet make_wreath_standard(const GroupDescriptor& desc, int n, const HeightRule& rule) {
  if (desc.kind() != GroupKind::WreathZZ)
    throw Error("wreath family requires the integer wreath group");
  const std::int64_t h = rule(n);
  if (h < 0) throw Error("height rule produced a negative height");
  const auto values = static_cast<std::uint64_t>(2 * h + 1);
  std::uint64_t configs = 1;
  for (int i = 0; i <= n; ++i) {
    if (values > kMaxSetSize / configs)
      throw GuardExceededError("wreath set larger than the safety guard");
    configs *= values;
  }
  if (static_cast<std::uint64_t>(n + 1) * configs > kMaxSetSize)
    throw GuardExceededError("wreath set larger than the safety guard");
  // Odometer over {-h..h}^(n+1).
  auto advance_vals = [h](std::vector<std::int64_t>& vals) {
    for (std::size_t j = vals.size(); j-- > 0;) {
      if (++vals[j] <= h) return true;
      vals[j] = -h;
    }
    return false;
  };
  std::vector<GroupElement> elems;
  elems.reserve(static_cast<std::size_t>(n + 1) * configs);
  std::vector<std::int64_t> vals(static_cast<std::size_t>(n) + 1, -h);
  for (std::int64_t s = 0; s <= n; ++s) {
    std::fill(vals.begin(), vals.end(), -h);
    do {
      GroupElement e;
      e.shift = s;
      for (int i = 0; i <= n; ++i)
        if (vals[static_cast<std::size_t>(i)] != 0)
          e.config.emplace_back(i, vals[static_cast<std::size_t>(i)]);
      elems.push_back(std::move(e));
    } while (advance_vals(vals));
  }
  return FiniteGroupSet(desc, std::move(elems));
}

std::vector<std::int64_t> torsion_tuple(const GroupDescriptor& desc, const GroupElement& g) {
  return {g.coords.begin(), g.coords.begin() + static_cast<std::ptrdiff_t>(desc.moduli().size())};
}

std::vector<std::int64_t> free_tuple(const GroupDescriptor& desc, const GroupElement& g) {
  return {g.coords.begin() + static_cast<std::ptrdiff_t>(desc.moduli().size()), g.coords.end()};
}

}  // namespace

FiniteGroupSet generate(const FolnerSequenceSpec& spec, int n) {
  if (n < 1 || n > spec.max_index) throw Error("sequence index out of range");
  switch (spec.family) {
    case FolnerFamily::Boxes:
      return make_box(spec.descriptor, n);
    case FolnerFamily::LamplighterStandard:
      return make_lamplighter_standard(spec.descriptor, n);
    case FolnerFamily::WreathStandard:
      return make_wreath_standard(spec.descriptor, n, spec.height);
    case FolnerFamily::AbelianTempelman: {
      auto ctor = construct_abelian_tempelman(
          spec.descriptor, canonical_enumeration(spec.descriptor, n), n);
      return ctor.steps.back().set;
    }
    case FolnerFamily::Explicit: {
      if (static_cast<std::size_t>(n) > spec.explicit_sets.size())
        throw Error("sequence index out of range");
      const FiniteGroupSet& s = spec.explicit_sets[static_cast<std::size_t>(n) - 1];
      if (s.descriptor() != spec.descriptor)
        throw DescriptorMismatchError("explicit set does not match the sequence group");
      return s;
    }
  }
  throw Error("unknown family");
}

std::vector<GroupElement> canonical_enumeration(const GroupDescriptor& desc, int count) {
  if (!desc.is_abelian())
    throw DescriptorMismatchError("canonical enumeration requires an abelian group");
  if (count < 0 || static_cast<std::uint64_t>(count) > (1u << 20))
    throw GuardExceededError("enumeration length outside the safety guard");
  const auto& moduli = desc.moduli();
  const int d = desc.free_rank();

  std::vector<std::vector<std::int64_t>> residue_tuples;
  {
    std::vector<std::int64_t> t(moduli.size(), 0);
    while (true) {
      residue_tuples.push_back(t);
      if (residue_tuples.size() > (1u << 20))
        throw GuardExceededError("torsion part larger than the safety guard");
      std::size_t j = t.size();
      bool carried = true;
      while (j-- > 0) {
        if (++t[j] < moduli[j]) {
          carried = false;
          break;
        }
        t[j] = 0;
      }
      if (carried) break;
    }
  }

  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(count));
  auto emit = [&](const std::vector<std::int64_t>& residues,
                  const std::vector<std::int64_t>& free_part) {
    GroupElement e;
    e.coords.reserve(residues.size() + free_part.size());
    e.coords.insert(e.coords.end(), residues.begin(), residues.end());
    e.coords.insert(e.coords.end(), free_part.begin(), free_part.end());
    out.push_back(std::move(e));
  };

  if (d == 0) {
    for (int i = 0; i < count; ++i)
      emit(residue_tuples[static_cast<std::size_t>(i) % residue_tuples.size()], {});
    return out;
  }

  // Free tuples of sup-norm exactly s, ascending lexicographically. The last
  // coordinate is clamped to {-s, s} when no earlier coordinate reached s.
  std::vector<std::vector<std::int64_t>> shell;
  auto gen_shell = [&](std::int64_t s) {
    shell.clear();
    if (s == 0) {
      shell.emplace_back(d, 0);
      return;
    }
    std::vector<std::int64_t> cur(d, 0);
    auto rec = [&](auto&& self, int pos, bool reached) -> void {
      if (pos == d) {
        shell.push_back(cur);
        return;
      }
      if (pos == d - 1 && !reached) {
        cur[pos] = -s;
        self(self, pos + 1, true);
        cur[pos] = s;
        self(self, pos + 1, true);
        return;
      }
      for (std::int64_t v = -s; v <= s; ++v) {
        cur[pos] = v;
        self(self, pos + 1, reached || v == s || v == -s);
      }
    };
    rec(rec, 0, false);
  };

  for (std::int64_t s = 0; static_cast<int>(out.size()) < count; ++s) {
    gen_shell(s);
    // Element comparison puts residues first, so residues vary slowest.
    for (const auto& residues : residue_tuples) {
      for (const auto& free_part : shell) {
        if (static_cast<int>(out.size()) == count) break;
        emit(residues, free_part);
      }
    }
    if (s > (1 << 20)) throw GuardExceededError("enumeration shell outside the safety guard");
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Integer row-style Hermite normal form over arbitrary precision entries.
// ---------------------------------------------------------------------------

using Row = std::vector<BigInt>;

struct Lattice {
  std::vector<Row> rows;       // echelon, pivots positive, entries above reduced
  std::vector<int> pivot_col;  // strictly increasing
};

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;  // truncated toward zero
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Lattice hermite_normal_form(std::vector<Row> mat, int cols) {
  Lattice out;
  std::size_t r = 0;
  for (int col = 0; col < cols && r < mat.size(); ++col) {
    std::size_t found = r;
    while (found < mat.size() && mat[found][static_cast<std::size_t>(col)] == 0) ++found;
    if (found == mat.size()) continue;
    std::swap(mat[r], mat[found]);
    for (std::size_t i = r + 1; i < mat.size(); ++i) {
      // Euclidean row reduction in this column.
      while (mat[i][static_cast<std::size_t>(col)] != 0) {
        BigInt q = mat[r][static_cast<std::size_t>(col)] / mat[i][static_cast<std::size_t>(col)];
        for (int c = 0; c < cols; ++c)
          mat[r][static_cast<std::size_t>(c)] -= q * mat[i][static_cast<std::size_t>(c)];
        std::swap(mat[r], mat[i]);
      }
    }
    if (mat[r][static_cast<std::size_t>(col)] < 0)
      for (auto& x : mat[r]) x = -x;
    out.pivot_col.push_back(col);
    ++r;
  }
  mat.resize(r);
  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t i = r; i-- > 0;) {
    const int p = out.pivot_col[i];
    for (std::size_t j = 0; j < i; ++j) {
      BigInt q = floor_div(mat[j][static_cast<std::size_t>(p)], mat[i][static_cast<std::size_t>(p)]);
      if (q == 0) continue;
      for (int c = 0; c < cols; ++c)
        mat[j][static_cast<std::size_t>(c)] -= q * mat[i][static_cast<std::size_t>(c)];
    }
  }
  out.rows = std::move(mat);
  return out;
}

// Integer coordinates of v in the lattice basis, or nullopt if v lies
// outside the lattice.
std::optional<std::vector<BigInt>> express_in_basis(const Lattice& lat, Row v) {
  std::vector<BigInt> coeffs;
  coeffs.reserve(lat.rows.size());
  for (std::size_t i = 0; i < lat.rows.size(); ++i) {
    const auto p = static_cast<std::size_t>(lat.pivot_col[i]);
    if (v[p] % lat.rows[i][p] != 0) return std::nullopt;
    BigInt c = v[p] / lat.rows[i][p];
    if (c != 0)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * lat.rows[i][j];
    coeffs.push_back(std::move(c));
  }
  for (const BigInt& x : v)
    if (x != 0) return std::nullopt;
  return coeffs;
}

std::int64_t to_int64_checked(const BigInt& x) {
  if (x < std::numeric_limits<std::int64_t>::min() || x > std::numeric_limits<std::int64_t>::max())
    throw OverflowError("lattice coordinate outside the 64-bit range");
  return static_cast<std::int64_t>(x);
}

// Subgroup of the torsion part generated by `gens`, as residue tuples.
std::set<std::vector<std::int64_t>> torsion_closure(
    const std::vector<std::int64_t>& moduli,
    const std::vector<std::vector<std::int64_t>>& gens) {
  std::set<std::vector<std::int64_t>> closure;
  closure.insert(std::vector<std::int64_t>(moduli.size(), 0));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : gens) {
      std::vector<std::vector<std::int64_t>> fresh;
      for (const auto& s : closure) {
        std::vector<std::int64_t> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = (s[i] + g[i]) % moduli[i];
        if (!closure.count(t)) fresh.push_back(std::move(t));
      }
      for (auto& t : fresh) {
        closure.insert(std::move(t));
        changed = true;
      }
      if (closure.size() > (1u << 20))
        throw ConstructionError("torsion closure larger than the safety guard");
    }
  }
  return closure;
}

// Smallest k >= floor so that the box {0..k}^d translated by each coefficient
// vector keeps an overlap fraction of at least (n-1)/n.
std::int64_t minimal_box_size(const std::vector<std::vector<BigInt>>& shifts, int d, int n,
                              std::int64_t floor_k) {
  auto invariant = [&](std::int64_t k) {
    const BigInt side = BigInt(k) + 1;
    BigInt denom = 1;
    for (int j = 0; j < d; ++j) denom *= side;
    for (const auto& w : shifts) {
      BigInt overlap = 1;
      for (const BigInt& wj : w) {
        BigInt len = side - abs(wj);
        if (len <= 0) {
          overlap = 0;
          break;
        }
        overlap *= len;
      }
      if (overlap * n < denom * (n - 1)) return false;
    }
    return true;
  };
  if (d == 0) return 0;
  std::int64_t hi = std::max<std::int64_t>(floor_k, 1);
  while (!invariant(hi)) {
    if (hi > kMaxBoxSize) throw ConstructionError("box size search exceeded the safety guard");
    hi *= 2;
  }
  std::int64_t lo = floor_k;  // lowest candidate allowed by containment
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (invariant(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

TempelmanConstruction construct_abelian_tempelman(const GroupDescriptor& desc,
                                                  const std::vector<GroupElement>& enumeration,
                                                  int max_index) {
  if (!desc.is_abelian())
    throw DescriptorMismatchError("the torsion-and-box construction requires an abelian group");
  if (max_index < 1) throw Error("construction needs at least one index");
  if (static_cast<std::size_t>(max_index) > enumeration.size())
    throw Error("enumeration shorter than the requested index range");
  for (const GroupElement& g : enumeration) validate_element(desc, g);

  const auto& moduli = desc.moduli();
  const int free_dim = desc.free_rank();

  TempelmanConstruction out{desc, {}};
  out.steps.reserve(static_cast<std::size_t>(max_index));

  std::vector<std::vector<std::int64_t>> torsion_gens;
  std::vector<Row> free_rows;
  Lattice lattice;

  for (int n = 1; n <= max_index; ++n) {
    const GroupElement& a = enumeration[static_cast<std::size_t>(n) - 1];
    torsion_gens.push_back(torsion_tuple(desc, a));
    {
      auto f = free_tuple(desc, a);
      Row row(f.begin(), f.end());
      bool nonzero = false;
      for (const BigInt& x : row) nonzero = nonzero || x != 0;
      if (nonzero) free_rows.push_back(std::move(row));
    }

    const Lattice prev = lattice;
    lattice = hermite_normal_form(free_rows, free_dim);
    const int d = static_cast<int>(lattice.rows.size());

    // Containment floor: the largest coefficient any corner of the previous
    // box needs in the new basis.
    std::int64_t floor_k = 0;
    if (!out.steps.empty() && out.steps.back().free_rank > 0) {
      const std::int64_t k_prev = out.steps.back().box_size;
      std::vector<BigInt> col_sum(static_cast<std::size_t>(d), 0);
      for (const Row& old_row : prev.rows) {
        auto coeffs = express_in_basis(lattice, old_row);
        if (!coeffs) throw ConstructionError("previous lattice escaped the refined one");
        for (std::size_t i = 0; i < coeffs->size(); ++i) {
          if ((*coeffs)[i] < 0)
            throw ConstructionError(
                "change of basis has negative entries; boxes cannot nest along it");
          col_sum[i] += (*coeffs)[i];
        }
      }
      BigInt worst = 0;
      for (const BigInt& s : col_sum) worst = std::max(worst, BigInt(s * k_prev));
      floor_k = to_int64_checked(worst);
    }

    // Every a_1..a_n expressed in the current basis.
    std::vector<std::vector<BigInt>> shifts;
    shifts.reserve(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) {
      auto f = free_tuple(desc, enumeration[static_cast<std::size_t>(m) - 1]);
      Row v(f.begin(), f.end());
      auto coeffs = express_in_basis(lattice, v);
      if (!coeffs) throw ConstructionError("enumeration element escaped its own lattice");
      bool nonzero = false;
      for (const BigInt& c : *coeffs) nonzero = nonzero || c != 0;
      if (nonzero) shifts.push_back(std::move(*coeffs));
    }

    const std::int64_t k = minimal_box_size(shifts, d, n, floor_k);

    auto closure = torsion_closure(moduli, torsion_gens);

    std::uint64_t cells = closure.size();
    for (int j = 0; j < d; ++j) {
      if (static_cast<std::uint64_t>(k) + 1 > kMaxConstructionSize / cells)
        throw ConstructionError("constructed set larger than the safety guard");
      cells *= static_cast<std::uint64_t>(k) + 1;
    }
    if (cells > kMaxConstructionSize)
      throw ConstructionError("constructed set larger than the safety guard");

    // Basis rows as group elements (zero torsion part).
    std::vector<GroupElement> basis_elems;
    basis_elems.reserve(static_cast<std::size_t>(d));
    for (const Row& row : lattice.rows) {
      GroupElement b;
      b.coords.assign(moduli.size(), 0);
      for (const BigInt& x : row) b.coords.push_back(to_int64_checked(x));
      basis_elems.push_back(std::move(b));
    }

    std::vector<GroupElement> elems;
    elems.reserve(cells);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
    for (const auto& t : closure) {
      std::fill(c.begin(), c.end(), 0);
      do {
        GroupElement e;
        e.coords.reserve(moduli.size() + static_cast<std::size_t>(free_dim));
        e.coords.insert(e.coords.end(), t.begin(), t.end());
        for (int j = 0; j < free_dim; ++j) {
          std::int64_t acc = 0;
          for (int i = 0; i < d; ++i)
            acc = checked_mul_add(acc, c[static_cast<std::size_t>(i)],
                                  basis_elems[static_cast<std::size_t>(i)]
                                      .coords[moduli.size() + static_cast<std::size_t>(j)]);
          e.coords.push_back(acc);
        }
        elems.push_back(std::move(e));
      } while (d > 0 && advance_box(c, k));
    }

    FiniteGroupSet f(desc, std::move(elems));
    if (f.size() != cells)
      throw ConstructionError("torsion-and-box assembly produced colliding elements");

    std::vector<GroupElement> torsion_elems;
    torsion_elems.reserve(closure.size());
    for (const auto& t : closure) {
      GroupElement e;
      e.coords.reserve(moduli.size() + static_cast<std::size_t>(free_dim));
      e.coords.insert(e.coords.end(), t.begin(), t.end());
      e.coords.insert(e.coords.end(), static_cast<std::size_t>(free_dim), 0);
      torsion_elems.push_back(std::move(e));
    }

    if (!out.steps.empty() && !is_subset(out.steps.back().set, f))
      throw ConstructionError("constructed sets failed to nest");
    out.steps.push_back(TempelmanStep{n, FiniteGroupSet(desc, std::move(torsion_elems)), d,
                                      std::move(basis_elems), d > 0 ? k : 0, std::move(f)});
  }
  return out;
}

Rational tempelman_constant(const FiniteGroupSet& f) {
  if (f.empty()) throw EmptySetError("constant of an empty set is undefined");
  const std::uint64_t grown = product_size(inverse_set(f), f);
  return Rational(BigInt(grown), BigInt(f.size()));
}

std::vector<Rational> tempered_constants(const std::vector<FiniteGroupSet>& seq) {
  if (seq.empty()) throw EmptySetError("constants of an empty sequence are undefined");
  std::vector<Rational> out;
  out.reserve(seq.size());
  std::optional<FiniteGroupSet> prefix_inverses;
  for (const FiniteGroupSet& f : seq) {
    if (f.empty()) throw EmptySetError("constants of an empty set are undefined");
    if (f.descriptor() != seq.front().descriptor())
      throw DescriptorMismatchError("sequence mixes groups");
    if (!prefix_inverses) {
      out.emplace_back(1);
    } else {
      const std::uint64_t grown = product_size(*prefix_inverses, f);
      out.emplace_back(BigInt(grown), BigInt(f.size()));
    }
    FiniteGroupSet inv = inverse_set(f);
    prefix_inverses =
        prefix_inverses ? set_union(*prefix_inverses, inv) : std::move(inv);
  }
  return out;
}

std::vector<int> extract_tempered(const FolnerSequenceSpec& spec, const Rational& c, int count) {
  if (count < 1) throw Error("selection count must be positive");
  if (c <= Rational(0)) throw Error("tempered constant must be positive");
  std::vector<int> chosen;
  std::optional<FiniteGroupSet> prefix_inverses;
  for (int n = 1; n <= spec.max_index; ++n) {
    FiniteGroupSet f = generate(spec, n);
    if (f.empty()) throw EmptySetError("sequence produced an empty set");
    bool take;
    if (!prefix_inverses) {
      take = true;
    } else {
      const std::uint64_t grown = product_size(*prefix_inverses, f);
      // grown/|f| <= c, compared exactly.
      take = BigInt(grown) * c.denominator() <= c.numerator() * BigInt(f.size());
    }
    if (!take) continue;
    chosen.push_back(n);
    FiniteGroupSet inv = inverse_set(f);
    prefix_inverses =
        prefix_inverses ? set_union(*prefix_inverses, inv) : std::move(inv);
    if (static_cast<int>(chosen.size()) == count) return chosen;
  }
  throw ExhaustionError("ran out of indices before completing the selection", std::move(chosen));
}

bool verify_tempered(const std::vector<FiniteGroupSet>& seq, const Rational& c) {
  const std::vector<Rational> t = tempered_constants(seq);
  return std::all_of(t.begin(), t.end(), [&](const Rational& x) { return x <= c; });
}

SequenceReport sequence_report(const std::vector<FiniteGroupSet>& seq,
                               const ZdEmbedding& embedding) {
  if (seq.empty()) throw EmptySetError("cannot report on an empty sequence");
  SequenceReport report{seq.front().descriptor(), {}};
  if (embedding.descriptor() != report.descriptor)
    throw DescriptorMismatchError("embedding lives in a different group");
  const std::vector<Rational> tempered = tempered_constants(seq);
  report.rows.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const FiniteGroupSet& f = seq[i];
    if (f.descriptor() != report.descriptor)
      throw DescriptorMismatchError("sequence mixes groups");
    SequenceReportRow row;
    row.n = static_cast<int>(i) + 1;
    row.size = f.size();
    row.tempelman = tempelman_constant(f);
    row.tempered = tempered[i];
    if (i > 0) row.growth = Rational(BigInt(f.size()), BigInt(seq[i - 1].size()));
    row.defect = invariance_exact(f, embedding.images(), Side::Left).defect;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_csv(const SequenceReport& report, std::ostream& out) {
  out << "n,size,c_n,t_n,ratio,defect\n";
  for (const SequenceReportRow& row : report.rows) {
    out << row.n << ',' << row.size << ',' << rational_to_string(row.tempelman) << ','
        << rational_to_string(row.tempered) << ',';
    if (row.growth) out << rational_to_string(*row.growth);
    out << ',' << rational_to_string(row.defect) << '\n';
  }
}

}  // namespace folnerlab
