#include "folnerlab/inequality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <thread>

#include "folnerlab/error.hpp"

namespace folnerlab {
namespace {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf, 16);
}

void digest_set(const FiniteGroupSet& f, std::string& out) {
  out += 'S';
  out += std::to_string(f.size());
  out += ':';
  for (const GroupElement& g : f.elements()) encode_element(g, out);
}

void digest_rational(const Rational& q, std::string& out) {
  out += q.numerator().str();
  out += '/';
  out += q.denominator().str();
}

std::string digest_from(Statement s, const GroupDescriptor& desc,
                        const std::vector<const FiniteGroupSet*>& sets, const std::string& extra) {
  std::string bytes = statement_token(s);
  bytes += '|';
  bytes += render_descriptor(desc);
  bytes += '|';
  for (const FiniteGroupSet* f : sets) digest_set(*f, bytes);
  bytes += extra;
  return hex16(fnv1a64(bytes));
}

/// holds <=> lhs >= rhs - slack; vacuous <=> rhs carries no content.
InequalityReport finish(Statement s, BigInt lhs, double rhs, double delta, int d,
                        std::string digest) {
  InequalityReport r{s, std::move(lhs), rhs, delta, d, false, false, Verdict::Holds,
                     std::move(digest)};
  r.holds = to_double(r.lhs) >= rhs - kInequalitySlack;
  r.vacuous = rhs <= 0.0;
  r.verdict = !r.holds ? Verdict::Fails : (r.vacuous ? Verdict::Vacuous : Verdict::Holds);
  return r;
}

std::vector<GroupElement> standard_basis(const GroupDescriptor& desc) {
  std::vector<GroupElement> basis;
  basis.reserve(static_cast<std::size_t>(desc.free_rank()));
  for (int i = 0; i < desc.free_rank(); ++i) {
    std::vector<std::int64_t> coords(desc.coord_count(), 0);
    coords[desc.moduli().size() + static_cast<std::size_t>(i)] = 1;
    basis.push_back(make_abelian(desc, std::move(coords)));
  }
  return basis;
}

double sumset_bound(int d, double delta, double size_a, double size_b) {
  double coefficient = 1.0 - 2.0 * d * d * delta;
  double base = std::pow(size_a, 1.0 / d) + std::pow(size_b, 1.0 / d);
  return coefficient * std::pow(base, static_cast<double>(d));
}

/// 2^d (1 - 2 d^2 sqrt(delta)) (1 - d sqrt(delta)) * size. The second
/// factor is clamped at zero: once it goes negative the product of two
/// negative factors would turn spuriously positive, and in that regime
/// (delta > 1/d^2, where the first factor is negative too) the bound has
/// no content. The clamp keeps rhs <= 0 there so the report reads vacuous.
double inverse_product_bound(int d, double delta, double size) {
  double root = std::sqrt(delta);
  return std::ldexp(1.0, d) * (1.0 - 2.0 * d * d * root) *
         std::max(1.0 - d * root, 0.0) * size;
}

Rational measured_defect(const FiniteGroupSet& f, const std::vector<GroupElement>& generators) {
  return invariance_exact(f, generators, Side::Left).defect;
}

void require_same_group(const FiniteGroupSet& f, const ZdEmbedding& embedding) {
  if (f.descriptor() != embedding.descriptor())
    throw DescriptorMismatchError("set and embedding live in different groups");
}

/// Shared body of the same-size lemma, the diff-size lemma and the
/// per-index lower bound rows; the three differ only in the statement tag
/// and in which sets feed the defect and the size factor.
InequalityReport inverse_product_report(Statement s, const FiniteGroupSet& f1,
                                        const FiniteGroupSet& f2, const ZdEmbedding& embedding) {
  require_same_group(f1, embedding);
  require_same_group(f2, embedding);
  if (f1.empty() || f2.empty()) throw EmptySetError("lemma checks need nonempty sets");
  int d = embedding.dimension();
  Rational delta = measured_defect(f1, embedding.images());
  if (&f1 != &f2) delta = std::max(delta, measured_defect(f2, embedding.images()));
  BigInt lhs = product_size(inverse_set(f1), f2);
  double delta_dbl = to_double(delta);
  double size = static_cast<double>(std::min(f1.size(), f2.size()));
  double rhs = inverse_product_bound(d, delta_dbl, size);
  std::string extra = "d=" + std::to_string(d);
  std::string digest = digest_from(s, f1.descriptor(), {&f1, &f2}, extra);
  return finish(s, std::move(lhs), rhs, delta_dbl, d, std::move(digest));
}

}  // namespace

const char* statement_token(Statement s) {
  switch (s) {
    case Statement::DiscreteBM: return "dbm";
    case Statement::ProductLemma: return "lemma-ab";
    case Statement::SameSizeLemma: return "lemma-ff";
    case Statement::DiffSizeLemma: return "lemma-f1f2";
    case Statement::LowerBound: return "lower-bound";
    case Statement::Growth: return "growth";
  }
  return "unknown";
}

const char* verdict_token(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

InequalityReport check_discrete_bm(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  if (a.descriptor() != b.descriptor())
    throw DescriptorMismatchError("sumset bound needs both sets in one group");
  if (a.descriptor().kind() != GroupKind::FreeAbelian)
    throw DescriptorMismatchError("sumset bound is stated over free abelian groups");
  if (a.empty() || b.empty()) throw EmptySetError("sumset bound needs nonempty sets");
  int d = a.descriptor().free_rank();
  Rational delta = measured_defect(a, standard_basis(a.descriptor()));
  BigInt lhs = product_size(a, b);
  double delta_dbl = to_double(delta);
  double rhs = sumset_bound(d, delta_dbl, static_cast<double>(a.size()),
                            static_cast<double>(b.size()));
  std::string digest = digest_from(Statement::DiscreteBM, a.descriptor(), {&a, &b}, "");
  return finish(Statement::DiscreteBM, std::move(lhs), rhs, delta_dbl, d, std::move(digest));
}

std::pair<InequalityReport, InequalityReport> check_lemma_abelian_product(
    const FiniteGroupSet& a, const FiniteGroupSet& b, const ZdEmbedding& embedding) {
  require_same_group(a, embedding);
  require_same_group(b, embedding);
  if (a.empty() || b.empty()) throw EmptySetError("product lemma needs nonempty sets");
  for (const GroupElement& g : a) {
    if (!embedding.contains(g))
      throw ContainmentError("element " + format_element(a.descriptor(), g) +
                             " is outside the embedded subgroup");
  }
  int d = embedding.dimension();
  Rational delta = measured_defect(a, embedding.images());
  double delta_dbl = to_double(delta);
  double rhs = sumset_bound(d, delta_dbl, static_cast<double>(a.size()),
                            static_cast<double>(b.size()));
  BigInt lhs_ab = product_size(a, b);
  BigInt lhs_ba = product_size(b, a);
  std::string digest_ab = digest_from(Statement::ProductLemma, a.descriptor(), {&a, &b}, "ab");
  std::string digest_ba = digest_from(Statement::ProductLemma, a.descriptor(), {&a, &b}, "ba");
  return {finish(Statement::ProductLemma, std::move(lhs_ab), rhs, delta_dbl, d,
                 std::move(digest_ab)),
          finish(Statement::ProductLemma, std::move(lhs_ba), rhs, delta_dbl, d,
                 std::move(digest_ba))};
}

InequalityReport check_lemma_same_size(const FiniteGroupSet& f, const ZdEmbedding& embedding) {
  return inverse_product_report(Statement::SameSizeLemma, f, f, embedding);
}

InequalityReport check_lemma_diff_size(const FiniteGroupSet& f1, const FiniteGroupSet& f2,
                                       const ZdEmbedding& embedding) {
  return inverse_product_report(Statement::DiffSizeLemma, f1, f2, embedding);
}

std::vector<InequalityReport> check_growth_implication_metrics(const GrowthMetrics& metrics,
                                                               const Rational& c, int dimension) {
  if (metrics.sizes.size() != metrics.defects.size())
    throw InsufficientDataError("growth metrics need one defect per size");
  if (c <= Rational(0)) throw Error("growth constant must be positive");
  if (dimension < 1) throw RankExceededError("growth check needs dimension >= 1");
  const std::size_t count = metrics.sizes.size();
  std::vector<InequalityReport> rows;
  rows.reserve(count);
  if (count == 0) return rows;

  // Threshold defect 1/(16 d^2); onset = first index with every later
  // defect at or below it (none when the suffix never settles).
  const Rational threshold(BigInt(1), BigInt(16) * dimension * dimension);
  std::size_t onset = count;
  for (std::size_t i = count; i-- > 0;) {
    if (metrics.defects[i] > threshold) break;
    onset = i;
  }
  const bool has_onset = onset < count;

  // Factor 2^{d-2}/C is at most 1 exactly when 2^d <= 4C.
  const bool factor_trivial = (BigInt(1) << dimension) * c.denominator() <= 4 * c.numerator();
  const double factor = std::ldexp(1.0, dimension - 2) / to_double(c);

  for (std::size_t i = 0; i < count; ++i) {
    std::string bytes = statement_token(Statement::Growth);
    bytes += "|d=" + std::to_string(dimension) + "|c=";
    digest_rational(c, bytes);
    bytes += "|n=" + std::to_string(i) + "|size=" + metrics.sizes[i].str() + "|defect=";
    digest_rational(metrics.defects[i], bytes);
    std::string digest = hex16(fnv1a64(bytes));
    double delta_dbl = to_double(metrics.defects[i]);

    if (!has_onset || i <= onset) {
      rows.push_back(InequalityReport{Statement::Growth, metrics.sizes[i], 0.0, delta_dbl,
                                      dimension, true, false, Verdict::NotApplicable,
                                      std::move(digest)});
      continue;
    }
    // |F_n| >= (2^{d-2}/C) |F_{n-1}|, cleared of denominators:
    // 4 * num(C) * |F_n| >= 2^d * den(C) * |F_{n-1}|.
    bool holds = 4 * c.numerator() * metrics.sizes[i] >=
                 (BigInt(1) << dimension) * c.denominator() * metrics.sizes[i - 1];
    double rhs = factor * to_double(metrics.sizes[i - 1]);
    Verdict verdict = !holds ? Verdict::Fails
                             : (factor_trivial ? Verdict::Vacuous : Verdict::Holds);
    rows.push_back(InequalityReport{Statement::Growth, metrics.sizes[i], rhs, delta_dbl,
                                    dimension, holds, factor_trivial, verdict,
                                    std::move(digest)});
  }
  return rows;
}

std::vector<InequalityReport> check_growth_implication(const std::vector<FiniteGroupSet>& seq,
                                                       const Rational& c,
                                                       const ZdEmbedding& embedding) {
  GrowthMetrics metrics;
  metrics.sizes.reserve(seq.size());
  metrics.defects.reserve(seq.size());
  for (const FiniteGroupSet& f : seq) {
    require_same_group(f, embedding);
    if (f.empty()) throw EmptySetError("growth check needs nonempty sets");
    metrics.sizes.emplace_back(f.size());
    metrics.defects.push_back(measured_defect(f, embedding.images()));
  }
  return check_growth_implication_metrics(metrics, c, embedding.dimension());
}

LowerBoundReport check_lower_bound_claim(const std::vector<FiniteGroupSet>& seq,
                                         const ZdEmbedding& embedding) {
  if (seq.empty()) throw EmptySetError("lower bound claim needs at least one set");
  LowerBoundReport out{{}, Rational(0), embedding.dimension(), true};
  out.per_index.reserve(seq.size());
  for (const FiniteGroupSet& f : seq) {
    InequalityReport row = inverse_product_report(Statement::LowerBound, f, f, embedding);
    out.max_constant = std::max(out.max_constant, Rational(row.lhs, BigInt(f.size())));
    out.holds = out.holds && row.holds;
    out.per_index.push_back(std::move(row));
  }
  return out;
}

namespace {

struct OracleGeometry {
  int dimension = 0;
  int side = 0;
  int cells = 0;
  std::uint64_t mask_count = 0;              // 2^cells - 1
  std::vector<int> sum_offset;               // cell -> bit position in the sumset grid
  std::vector<std::uint64_t> shift_keep;     // per dim: cells with room to step
  std::vector<int> shift_stride;             // per dim: +1 step in cell index
};

OracleGeometry make_geometry(int dimension, int side) {
  if (dimension < 1) throw RankExceededError("oracle needs dimension >= 1");
  if (side < 1) throw GuardExceededError("oracle box side must be positive");
  std::uint64_t cells = 1;
  for (int i = 0; i < dimension; ++i) {
    cells *= static_cast<std::uint64_t>(side);
    if (cells > 26) throw GuardExceededError("oracle domain exceeds the 2^26 pair guard");
  }
  OracleGeometry geo;
  geo.dimension = dimension;
  geo.side = side;
  geo.cells = static_cast<int>(cells);
  geo.mask_count = (1ull << geo.cells) - 1;
  if (geo.mask_count * geo.mask_count > (1ull << 26))
    throw GuardExceededError("oracle domain exceeds the 2^26 pair guard");

  int sum_side = 2 * side - 1;
  std::int64_t sum_cells = 1;
  for (int i = 0; i < dimension; ++i) sum_cells *= sum_side;
  if (sum_cells > 64) throw GuardExceededError("oracle sumset grid exceeds one machine word");

  // Big-endian strides: last coordinate varies fastest.
  std::vector<int> stride(static_cast<std::size_t>(dimension), 1);
  std::vector<int> sum_stride(static_cast<std::size_t>(dimension), 1);
  for (int j = dimension - 2; j >= 0; --j) {
    stride[j] = stride[j + 1] * side;
    sum_stride[j] = sum_stride[j + 1] * sum_side;
  }
  geo.shift_stride = stride;
  geo.shift_keep.assign(static_cast<std::size_t>(dimension), 0);
  geo.sum_offset.assign(static_cast<std::size_t>(geo.cells), 0);
  for (int cell = 0; cell < geo.cells; ++cell) {
    int rest = cell;
    int offset = 0;
    for (int j = 0; j < dimension; ++j) {
      int coord = rest / stride[j];
      rest %= stride[j];
      offset += coord * sum_stride[j];
      if (coord < side - 1) geo.shift_keep[j] |= 1ull << cell;
    }
    geo.sum_offset[cell] = offset;
  }
  return geo;
}

double mask_defect(const OracleGeometry& geo, std::uint64_t mask) {
  int size = std::popcount(mask);
  int worst = size;
  for (int j = 0; j < geo.dimension; ++j) {
    std::uint64_t stepped = (mask & geo.shift_keep[j]) << geo.shift_stride[j];
    worst = std::min(worst, std::popcount(stepped & mask));
  }
  return 1.0 - static_cast<double>(worst) / static_cast<double>(size);
}

struct OracleSlice {
  std::optional<OracleCounterexample> counterexample;
  std::vector<int> min_sumset;  // (size_a, size_b) -> min |A+B|, flattened
};

}  // namespace

OracleResult brute_force_oracle(int dimension, int box_side, const OraclePredicate& predicate,
                                int workers) {
  OracleGeometry geo = make_geometry(dimension, box_side);
  const int cells = geo.cells;
  const std::uint64_t mask_count = geo.mask_count;

  // Per-mask tables; both fit easily under the 2^13-mask guard.
  std::vector<std::uint64_t> embedded(mask_count + 1, 0);
  std::vector<double> defect(mask_count + 1, 0.0);
  for (std::uint64_t m = 1; m <= mask_count; ++m) {
    int low = std::countr_zero(m);
    embedded[m] = embedded[m & (m - 1)] | (1ull << geo.sum_offset[static_cast<std::size_t>(low)]);
    defect[m] = mask_defect(geo, m);
  }

  int thread_count = std::max(1, std::min<int>(workers, static_cast<int>(mask_count)));
  const int table = (cells + 1) * (cells + 1);
  std::vector<OracleSlice> slices(static_cast<std::size_t>(thread_count));
  for (auto& s : slices) s.min_sumset.assign(static_cast<std::size_t>(table), 0);

  auto run_slice = [&](int w, std::uint64_t a_begin, std::uint64_t a_end) {
    OracleSlice& slice = slices[static_cast<std::size_t>(w)];
    for (std::uint64_t a = a_begin; a < a_end; ++a) {
      const std::uint64_t ea = embedded[a];
      const int sa = std::popcount(a);
      const double da = defect[a];
      for (std::uint64_t b = 1; b <= mask_count; ++b) {
        std::uint64_t sum = 0;
        for (std::uint64_t rest = b; rest != 0; rest &= rest - 1) {
          sum |= ea << geo.sum_offset[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        const int sb = std::popcount(b);
        const int ss = std::popcount(sum);
        int& best = slice.min_sumset[static_cast<std::size_t>(sa * (cells + 1) + sb)];
        if (best == 0 || ss < best) best = ss;
        if (!slice.counterexample) {
          OracleInstance inst{a, b, dimension, box_side, sa, sb, ss, da, defect[b]};
          if (!predicate(inst))
            slice.counterexample = OracleCounterexample{a, b, (a - 1) * mask_count + (b - 1)};
        }
      }
    }
  };

  if (thread_count == 1) {
    run_slice(0, 1, mask_count + 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    std::uint64_t chunk = (mask_count + static_cast<std::uint64_t>(thread_count) - 1) /
                          static_cast<std::uint64_t>(thread_count);
    for (int w = 0; w < thread_count; ++w) {
      std::uint64_t begin = 1 + static_cast<std::uint64_t>(w) * chunk;
      std::uint64_t end = std::min<std::uint64_t>(begin + chunk, mask_count + 1);
      if (begin > mask_count) break;
      pool.emplace_back(run_slice, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  OracleResult result{mask_count * mask_count, std::nullopt, {}};
  std::vector<int> min_sumset(static_cast<std::size_t>(table), 0);
  for (const OracleSlice& slice : slices) {
    if (slice.counterexample &&
        (!result.counterexample || slice.counterexample->rank < result.counterexample->rank))
      result.counterexample = slice.counterexample;
    for (int i = 0; i < table; ++i) {
      int v = slice.min_sumset[static_cast<std::size_t>(i)];
      int& best = min_sumset[static_cast<std::size_t>(i)];
      if (v != 0 && (best == 0 || v < best)) best = v;
    }
  }
  for (int sa = 1; sa <= cells; ++sa) {
    for (int sb = 1; sb <= cells; ++sb) {
      int v = min_sumset[static_cast<std::size_t>(sa * (cells + 1) + sb)];
      if (v != 0) result.extremal.push_back(SumsetExtremal{sa, sb, v});
    }
  }
  return result;
}

OraclePredicate discrete_bm_predicate() {
  return [](const OracleInstance& x) {
    double rhs = sumset_bound(x.dimension, x.defect_a, static_cast<double>(x.size_a),
                              static_cast<double>(x.size_b));
    return static_cast<double>(x.sumset_size) >= rhs - kInequalitySlack;
  };
}

OraclePredicate sumset_floor_predicate() {
  return [](const OracleInstance& x) { return x.sumset_size >= x.size_a + x.size_b; };
}

FiniteGroupSet oracle_mask_to_set(std::uint64_t mask, int dimension, int side) {
  OracleGeometry geo = make_geometry(dimension, side);
  GroupDescriptor desc = GroupDescriptor::free_abelian(dimension);
  std::vector<GroupElement> elems;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    int cell = std::countr_zero(rest);
    std::vector<std::int64_t> coords(static_cast<std::size_t>(dimension), 0);
    int r = cell;
    for (int j = 0; j < dimension; ++j) {
      coords[static_cast<std::size_t>(j)] = r / geo.shift_stride[j];
      r %= geo.shift_stride[j];
    }
    elems.push_back(make_abelian(desc, std::move(coords)));
  }
  return FiniteGroupSet(desc, std::move(elems));
}

}  // namespace folnerlab
