#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "folnerlab/error.hpp"
#include "folnerlab/folner.hpp"
#include "folnerlab/inequality.hpp"
#include "folnerlab/sets.hpp"

using namespace folnerlab;

namespace {

FiniteGroupSet box2(const GroupDescriptor& d, int lo, int hi) {
  std::vector<GroupElement> e;
  for (int x = lo; x <= hi; ++x)
    for (int y = lo; y <= hi; ++y) e.push_back(make_abelian(d, {x, y}));
  return FiniteGroupSet(d, std::move(e));
}

std::uint64_t next_rand(std::uint64_t& state) {
  state = state * 6364136223846793005ull + 1442695040888963407ull;
  return state >> 33;
}

}  // namespace

TEST_CASE("sumset bound on boxes, simplices, and intervals") {
  auto z1 = GroupDescriptor::free_abelian(1);
  auto z2 = GroupDescriptor::free_abelian(2);

  InequalityReport r = check_discrete_bm(box2(z2, 0, 9), box2(z2, 0, 4));
  CHECK(r.statement == Statement::DiscreteBM);
  CHECK(r.lhs == 196);
  CHECK(r.rhs == doctest::Approx(45.0).epsilon(1e-9));
  CHECK(r.delta_used == doctest::Approx(0.1));
  CHECK(r.dimension == 2);
  CHECK(r.holds);
  CHECK_FALSE(r.vacuous);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.inputs_digest.size() == 16);

  FiniteGroupSet simplex(z2, {make_abelian(z2, {0, 0}), make_abelian(z2, {1, 0}),
                              make_abelian(z2, {0, 1})});
  InequalityReport s = check_discrete_bm(simplex, simplex);
  CHECK(s.lhs == 6);
  CHECK(s.rhs == doctest::Approx(-52.0));
  CHECK(s.vacuous);
  CHECK(s.holds);
  CHECK(s.verdict == Verdict::Vacuous);

  std::vector<GroupElement> a, b;
  for (int x = 0; x <= 7; ++x) a.push_back(make_abelian(z1, {x}));
  b.push_back(make_abelian(z1, {5}));
  InequalityReport t = check_discrete_bm(FiniteGroupSet(z1, a), FiniteGroupSet(z1, b));
  CHECK(t.lhs == 8);
  CHECK(t.rhs == doctest::Approx(6.75));
  CHECK(t.holds);

  CHECK_THROWS_AS(check_discrete_bm(FiniteGroupSet(z1), FiniteGroupSet(z1, b)),
                  EmptySetError);
  CHECK_THROWS_AS(check_discrete_bm(FiniteGroupSet(z1, a), FiniteGroupSet(z2, {identity(z2)})),
                  DescriptorMismatchError);
}

TEST_CASE("product lemma over a torsion-by-free group") {
  auto g = GroupDescriptor::finite_by_free({5}, 2);
  auto emb = standard_embedding(g, 2);
  std::vector<GroupElement> a, b;
  for (int x = 0; x <= 9; ++x)
    for (int y = 0; y <= 9; ++y) a.push_back(make_abelian(g, {0, x, y}));
  for (int t = 0; t < 5; ++t) b.push_back(make_abelian(g, {t, 0, 0}));

  auto [ab, ba] = check_lemma_abelian_product(FiniteGroupSet(g, a), FiniteGroupSet(g, b), emb);
  CHECK(ab.statement == Statement::ProductLemma);
  CHECK(ab.lhs == 500);
  CHECK(ba.lhs == 500);
  CHECK(ab.rhs == doctest::Approx(29.944272).epsilon(1e-6));
  CHECK(ab.holds);
  CHECK(ba.holds);
  CHECK(ab.inputs_digest != ba.inputs_digest);

  auto [sb, sb2] = check_lemma_abelian_product(FiniteGroupSet(g, a),
                                               FiniteGroupSet(g, {identity(g)}), emb);
  CHECK(sb.lhs == 100);
  CHECK(sb.rhs == doctest::Approx(24.2).epsilon(1e-3));
  CHECK(sb2.holds);

  auto [sa, sa2] = check_lemma_abelian_product(FiniteGroupSet(g, {identity(g)}),
                                               FiniteGroupSet(g, b), emb);
  CHECK(sa.vacuous);
  CHECK(sa.holds);
  CHECK(sa2.vacuous);

  CHECK_THROWS_AS(
      check_lemma_abelian_product(FiniteGroupSet(g, b), FiniteGroupSet(g, a), emb),
      ContainmentError);
}

TEST_CASE("inverse-product bound for one set") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto emb = standard_embedding(z2, 2);

  InequalityReport r = check_lemma_same_size(box2(z2, 0, 99), emb);
  CHECK(r.statement == Statement::SameSizeLemma);
  CHECK(r.lhs == 39601);
  CHECK(r.rhs == doctest::Approx(6400.0).epsilon(1e-6));
  CHECK(r.holds);
  CHECK_FALSE(r.vacuous);

  InequalityReport single = check_lemma_same_size(FiniteGroupSet(z2, {identity(z2)}), emb);
  CHECK(single.vacuous);
  CHECK(single.holds);

  auto lamp = GroupDescriptor::lamplighter();
  FolnerSequenceSpec spec{lamp, FolnerFamily::LamplighterStandard, HeightRule{}, {}, 64};
  FiniteGroupSet f2 = generate(spec, 2);
  auto lemb = standard_embedding(lamp, 1);
  InequalityReport lr = check_lemma_same_size(f2, lemb);
  CHECK(f2.size() == 24);
  CHECK(lr.lhs == 104);
  CHECK(lr.holds);
}

TEST_CASE("inverse-product bound for two sets agrees with the one-set case") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto emb = standard_embedding(z2, 2);

  InequalityReport small = check_lemma_diff_size(box2(z2, 0, 99), box2(z2, 0, 49), emb);
  CHECK(small.statement == Statement::DiffSizeLemma);
  CHECK(small.vacuous);
  CHECK(small.holds);
  CHECK(small.rhs < 0.0);

  InequalityReport big = check_lemma_diff_size(box2(z2, 0, 399), box2(z2, 0, 399), emb);
  CHECK(big.lhs == 638401);
  CHECK(big.rhs == doctest::Approx(345600.0).epsilon(1e-6));
  CHECK(big.holds);

  InequalityReport same = check_lemma_same_size(box2(z2, 0, 399), emb);
  CHECK(same.rhs == big.rhs);  // bitwise: both run through one code path
  CHECK(same.lhs == big.lhs);

  InequalityReport single =
      check_lemma_diff_size(FiniteGroupSet(z2, {identity(z2)}), box2(z2, 0, 3), emb);
  CHECK(single.lhs == 16);
  CHECK(single.vacuous);
  CHECK(single.holds);
}

TEST_CASE("growth rows classify onset, vacuity, and genuine checks") {
  GrowthMetrics m;
  for (int n = 1; n <= 405; ++n) {
    m.sizes.push_back(pow_rational(make_rational(n + 1), 5).numerator());
    m.defects.push_back(make_rational(1, n + 1));
  }
  auto rows = check_growth_implication_metrics(m, make_rational(32), 5);
  REQUIRE(rows.size() == 405);
  int na = 0, vac = 0, holds = 0, fails = 0;
  for (const InequalityReport& r : rows) {
    CHECK(r.statement == Statement::Growth);
    if (r.verdict == Verdict::NotApplicable) ++na;
    if (r.verdict == Verdict::Vacuous) ++vac;
    if (r.verdict == Verdict::Holds) ++holds;
    if (r.verdict == Verdict::Fails) ++fails;
  }
  CHECK(na == 399);
  CHECK(vac == 6);
  CHECK(holds == 0);
  CHECK(fails == 0);

  GrowthMetrics dbl;
  for (int j = 0; j <= 40; ++j) {
    BigInt side = (BigInt(1) << j) + 1;
    dbl.sizes.push_back(side * side * side * side * side);
    dbl.defects.push_back(Rational(BigInt(1), side));
  }
  auto rows2 = check_growth_implication_metrics(dbl, Rational(BigInt(243), BigInt(32)), 5);
  int holds2 = 0, na2 = 0;
  for (const InequalityReport& r : rows2) {
    if (r.verdict == Verdict::Holds) ++holds2;
    if (r.verdict == Verdict::NotApplicable) ++na2;
    CHECK(r.verdict != Verdict::Fails);
    CHECK(r.verdict != Verdict::Vacuous);
  }
  CHECK(na2 == 10);
  CHECK(holds2 == 31);

  GrowthMetrics cst;
  for (int i = 0; i < 6; ++i) {
    cst.sizes.push_back(16);
    cst.defects.push_back(Rational(0));
  }
  auto rows3 = check_growth_implication_metrics(cst, make_rational(4), 2);
  CHECK(rows3[0].verdict == Verdict::NotApplicable);
  for (std::size_t i = 1; i < rows3.size(); ++i) {
    CHECK(rows3[i].verdict == Verdict::Vacuous);
    CHECK(rows3[i].holds);
    CHECK(rows3[i].vacuous);
  }

  GrowthMetrics never;
  for (int i = 0; i < 4; ++i) {
    never.sizes.push_back(100);
    never.defects.push_back(make_rational(1, 2));
  }
  for (const InequalityReport& r :
       check_growth_implication_metrics(never, make_rational(2), 3)) {
    CHECK(r.verdict == Verdict::NotApplicable);
    CHECK(r.holds);
  }

  // a shrinking sequence past onset must fail a non-trivial factor
  GrowthMetrics shrink;
  shrink.sizes = {BigInt(1000), BigInt(1000), BigInt(10)};
  shrink.defects = {Rational(0), Rational(0), Rational(0)};
  auto rows4 = check_growth_implication_metrics(shrink, make_rational(1), 4);
  CHECK(rows4[2].verdict == Verdict::Fails);
  CHECK_FALSE(rows4[2].holds);
}

TEST_CASE("growth over concrete box sequences stays before onset") {
  auto z2 = GroupDescriptor::free_abelian(2);
  std::vector<FiniteGroupSet> seq;
  for (int n = 1; n <= 6; ++n) seq.push_back(box2(z2, 0, n));
  auto emb = standard_embedding(z2, 2);
  auto rows = check_growth_implication(seq, make_rational(4), emb);
  REQUIRE(rows.size() == 6);
  for (const InequalityReport& r : rows) CHECK(r.verdict == Verdict::NotApplicable);
}

TEST_CASE("lower bound scan reports the exact running maximum") {
  auto z1 = GroupDescriptor::free_abelian(1);
  std::vector<FiniteGroupSet> seq;
  for (int n = 1; n <= 10; ++n) {
    std::vector<GroupElement> e;
    for (int x = 0; x <= n; ++x) e.push_back(make_abelian(z1, {x}));
    seq.push_back(FiniteGroupSet(z1, e));
  }
  auto emb = standard_embedding(z1, 1);
  LowerBoundReport rep = check_lower_bound_claim(seq, emb);
  CHECK(rep.holds);
  CHECK(rep.dimension == 1);
  CHECK(rep.max_constant == Rational(BigInt(21), BigInt(11)));
  CHECK(rep.per_index.size() == 10);
  for (const InequalityReport& r : rep.per_index) {
    CHECK(r.statement == Statement::LowerBound);
    CHECK(r.holds);
  }

  CHECK_THROWS_AS(check_lower_bound_claim({}, emb), EmptySetError);
}

TEST_CASE("exhaustive oracle sweeps find no sumset-bound violation") {
  OracleResult r1 = brute_force_oracle(1, 8, discrete_bm_predicate(), 1);
  CHECK(r1.pairs_checked == 65025);
  CHECK_FALSE(r1.counterexample.has_value());

  OracleResult r2 = brute_force_oracle(2, 3, discrete_bm_predicate(), 3);
  CHECK(r2.pairs_checked == 261121);
  CHECK_FALSE(r2.counterexample.has_value());

  bool found11 = false, found22 = false, found88 = false;
  for (const SumsetExtremal& e : r1.extremal) {
    if (e.size_a == 1 && e.size_b == 1) {
      CHECK(e.min_sumset == 1);
      found11 = true;
    }
    if (e.size_a == 2 && e.size_b == 2) {
      CHECK(e.min_sumset == 3);
      found22 = true;
    }
    if (e.size_a == 8 && e.size_b == 8) {
      CHECK(e.min_sumset == 15);
      found88 = true;
    }
  }
  CHECK(found11);
  CHECK(found22);
  CHECK(found88);
}

TEST_CASE("oracle counterexamples are deterministic across worker counts") {
  OracleResult r3 = brute_force_oracle(1, 2, sumset_floor_predicate(), 1);
  REQUIRE(r3.counterexample.has_value());
  CHECK(r3.counterexample->a_mask == 1);
  CHECK(r3.counterexample->b_mask == 1);
  CHECK(r3.counterexample->rank == 0);

  OracleResult w1 = brute_force_oracle(2, 3, sumset_floor_predicate(), 1);
  OracleResult w4 = brute_force_oracle(2, 3, sumset_floor_predicate(), 4);
  REQUIRE(w1.counterexample.has_value());
  REQUIRE(w4.counterexample.has_value());
  CHECK(w1.counterexample->rank == w4.counterexample->rank);
  CHECK(w1.counterexample->a_mask == w4.counterexample->a_mask);
  REQUIRE(w1.extremal.size() == w4.extremal.size());
  for (std::size_t i = 0; i < w1.extremal.size(); ++i) {
    CHECK(w1.extremal[i].size_a == w4.extremal[i].size_a);
    CHECK(w1.extremal[i].size_b == w4.extremal[i].size_b);
    CHECK(w1.extremal[i].min_sumset == w4.extremal[i].min_sumset);
  }

  CHECK_THROWS_AS(brute_force_oracle(1, 20, discrete_bm_predicate(), 1),
                  GuardExceededError);
}

TEST_CASE("oracle instances agree with the set engine") {
  std::vector<OracleInstance> captured;
  brute_force_oracle(2, 2, [&](const OracleInstance& inst) {
    if (inst.a_mask < 8 && inst.b_mask < 4) captured.push_back(inst);
    return true;
  }, 1);
  REQUIRE(!captured.empty());

  for (const OracleInstance& inst : captured) {
    FiniteGroupSet a = oracle_mask_to_set(inst.a_mask, inst.dimension, inst.side);
    FiniteGroupSet b = oracle_mask_to_set(inst.b_mask, inst.dimension, inst.side);
    CHECK(a.size() == static_cast<std::size_t>(inst.size_a));
    CHECK(b.size() == static_cast<std::size_t>(inst.size_b));
    CHECK(product_size(a, b) == static_cast<std::uint64_t>(inst.sumset_size));

    auto z2 = a.descriptor();
    std::vector<GroupElement> basis{make_abelian(z2, {1, 0}), make_abelian(z2, {0, 1})};
    double measured = to_double(invariance_exact(a, basis, Side::Left).defect);
    CHECK(inst.defect_a == doctest::Approx(measured).epsilon(1e-12));
  }
}

TEST_CASE("seeded random pairs never produce a genuine violation") {
  auto z3 = GroupDescriptor::free_abelian(3);
  std::uint64_t state = 0x243f6a8885a308d3ull;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<GroupElement> ea, eb;
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y)
        for (int z = 0; z < 5; ++z) {
          if (next_rand(state) & 1) ea.push_back(make_abelian(z3, {x, y, z}));
          if (next_rand(state) & 1) eb.push_back(make_abelian(z3, {x, y, z}));
        }
    if (ea.empty()) ea.push_back(make_abelian(z3, {0, 0, 0}));
    if (eb.empty()) eb.push_back(make_abelian(z3, {0, 0, 0}));
    InequalityReport r =
        check_discrete_bm(FiniteGroupSet(z3, std::move(ea)), FiniteGroupSet(z3, std::move(eb)));
    CHECK(r.holds);
  }
}

TEST_CASE("digests are stable on reruns and sensitive to inputs") {
  auto z2 = GroupDescriptor::free_abelian(2);
  InequalityReport r1 = check_discrete_bm(box2(z2, 0, 9), box2(z2, 0, 4));
  InequalityReport r2 = check_discrete_bm(box2(z2, 0, 9), box2(z2, 0, 4));
  CHECK(r1.inputs_digest == r2.inputs_digest);
  InequalityReport r3 = check_discrete_bm(box2(z2, 0, 9), box2(z2, 0, 5));
  CHECK(r1.inputs_digest != r3.inputs_digest);
  InequalityReport r4 = check_discrete_bm(box2(z2, 0, 4), box2(z2, 0, 9));
  CHECK(r1.inputs_digest != r4.inputs_digest);
}
