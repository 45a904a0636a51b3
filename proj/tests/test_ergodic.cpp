#include <doctest.h>

#include <cmath>
#include <vector>

#include "folnerlab/ergodic.hpp"
#include "folnerlab/error.hpp"
#include "folnerlab/folner.hpp"

using namespace folnerlab;

namespace {

FiniteGroupSet square(const GroupDescriptor& g, int side) {
  std::vector<GroupElement> e;
  for (int x = 0; x < side; ++x)
    for (int y = 0; y < side; ++y) e.push_back(make_abelian(g, {x, y}));
  return FiniteGroupSet(g, std::move(e));
}

}  // namespace

TEST_CASE("site averages approach the density on large boxes") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto omega0 = make_cylinder(z2, {identity(z2)}, {0.0, 1.0});
  BernoulliAction action = make_bernoulli(z2, 0.5, 1234);

  AverageResult r = average(action, omega0, square(z2, 201));
  CHECK(r.set_size == 40401);
  CHECK(r.sample_count == 40401);
  CHECK(r.target == 0.5);
  CHECK(std::fabs(r.deviation) < 0.01);

  auto one = make_cylinder(z2, {identity(z2)}, {1.0, 1.0});
  BernoulliAction a2 = make_bernoulli(z2, 0.3, 7);
  FiniteGroupSet two(z2, {make_abelian(z2, {3, -2}), make_abelian(z2, {0, 0})});
  AverageResult c = average(a2, one, two);
  CHECK(c.empirical == 1.0);
  CHECK(c.target == 1.0);
  CHECK(c.deviation == 0.0);

  AverageResult s = average(action, omega0, FiniteGroupSet(z2, {identity(z2)}));
  CHECK((s.empirical == 0.0 || s.empirical == 1.0));
}

TEST_CASE("sample paths are deterministic and memoized") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto omega0 = make_cylinder(z2, {identity(z2)}, {0.0, 1.0});
  BernoulliAction action = make_bernoulli(z2, 0.5, 42);

  std::vector<GroupElement> e;
  for (int x = 0; x < 20; ++x)
    for (int y = 0; y < 20; ++y) e.push_back(make_abelian(z2, {x, y}));
  FiniteGroupSet f(z2, e);

  AverageResult r1 = average(action, omega0, f);
  AverageResult r2 = average(action, omega0, f);
  CHECK(r1.empirical == r2.empirical);

  SamplePath fwd(action), rev(action);
  double sf = 0.0, sr = 0.0;
  for (auto it = e.begin(); it != e.end(); ++it) sf += fwd.coordinate(*it);
  for (auto it = e.rbegin(); it != e.rend(); ++it) sr += rev.coordinate(*it);
  CHECK(sf == sr);

  SamplePath p(action);
  int bit = p.coordinate(e[5]);
  for (int i = 0; i < 10; ++i) CHECK(p.coordinate(e[5]) == bit);
  CHECK(p.sampled() == 1);

  // distinct path indices decorrelate; with 400 sites agreement of every bit
  // would be a 2^-400 coincidence
  SamplePath q0(action, 0), q1(action, 1);
  bool all_equal = true;
  for (const GroupElement& g : e)
    if (q0.coordinate(g) != q1.coordinate(g)) all_equal = false;
  CHECK_FALSE(all_equal);

  // different seeds decorrelate the same way
  BernoulliAction other = make_bernoulli(z2, 0.5, 43);
  SamplePath o(other);
  all_equal = true;
  for (const GroupElement& g : e)
    if (q0.coordinate(g) != o.coordinate(g)) all_equal = false;
  CHECK_FALSE(all_equal);
}

TEST_CASE("cylinder expectations match product weights") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto phi = make_cylinder(z2, {identity(z2), make_abelian(z2, {1, 0})},
                           {0.25, -1.5, 2.0, 0.75});
  double p = 0.3;
  double want = 0.25 * 0.7 * 0.7 + (-1.5) * 0.3 * 0.7 + 2.0 * 0.7 * 0.3 + 0.75 * 0.3 * 0.3;
  CHECK(expectation(phi, p) == doctest::Approx(want).epsilon(1e-15));

  auto omega0 = make_cylinder(z2, {identity(z2)}, {0.0, 1.0});
  CHECK(expectation(omega0, 0.5) == 0.5);
  CHECK(expectation(omega0, 0.125) == 0.125);
}

TEST_CASE("correlation windows converge to the product density") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto phi = make_cylinder(z2, {identity(z2), make_abelian(z2, {1, 0})}, {0, 0, 0, 1});
  BernoulliAction action = make_bernoulli(z2, 0.5, 5);
  FolnerSequenceSpec spec{z2, FolnerFamily::Boxes, HeightRule{}, {}, 128};

  auto pts = convergence_sweep(action, phi, spec, {10, 20, 40, 80}, 32);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].target == 0.25);
  CHECK(pts[0].index == 10);
  CHECK(pts[0].set_size == 121);
  CHECK(pts[3].set_size == 6561);
  CHECK(pts[3].mse < pts[0].mse);
  CHECK(loglog_slope(pts) < -0.8);

  auto again = convergence_sweep(action, phi, spec, {10, 20, 40, 80}, 32);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].mse == again[i].mse);
}

TEST_CASE("density windows meet the convergence-rate thresholds") {
  auto z2 = GroupDescriptor::free_abelian(2);
  auto omega0 = make_cylinder(z2, {identity(z2)}, {0.0, 1.0});
  FolnerSequenceSpec spec{z2, FolnerFamily::Boxes, HeightRule{}, {}, 128};
  BernoulliAction action = make_bernoulli(z2, 0.5, 2);

  auto pts = convergence_sweep(action, omega0, spec, {10, 20, 40, 80}, 32);
  CHECK(loglog_slope(pts) <= -0.8);

  AverageResult big = average(action, omega0, generate(spec, 80));
  CHECK(std::fabs(big.deviation) <= 0.01);
}

TEST_CASE("slope fits recover an exact power law") {
  std::vector<ConvergencePoint> pts;
  for (int k = 1; k <= 4; ++k) {
    ConvergencePoint pt;
    pt.index = k;
    pt.set_size = 1;
    for (int i = 0; i < k; ++i) pt.set_size *= 10;
    pt.mse = 1.0 / static_cast<double>(pt.set_size);
    pt.target = 0.5;
    pts.push_back(pt);
  }
  CHECK(loglog_slope(pts) == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(loglog_slope({pts[0]}), Error);
  pts[1].mse = 0.0;
  CHECK_THROWS_AS(loglog_slope(pts), Error);
  pts[1].mse = 0.1;
  pts[1].set_size = pts[0].set_size;
  pts.resize(2);
  CHECK_THROWS_AS(loglog_slope(pts), Error);
}

TEST_CASE("invalid actions and windows are rejected") {
  auto z2 = GroupDescriptor::free_abelian(2);
  CHECK_THROWS_AS(make_bernoulli(z2, 1.0, 1), Error);
  CHECK_THROWS_AS(make_bernoulli(z2, 0.0, 1), Error);
  CHECK_THROWS_AS(make_bernoulli(GroupDescriptor::lamplighter(), 0.5, 1),
                  DescriptorMismatchError);

  CHECK_THROWS_AS(make_cylinder(z2, {}, {}), EmptySetError);
  CHECK_THROWS_AS(make_cylinder(z2, {identity(z2)}, {1.0}), InsufficientDataError);
  CHECK_THROWS_AS(make_cylinder(z2, {identity(z2), identity(z2)}, {0, 0, 0, 1}), Error);

  BernoulliAction action = make_bernoulli(z2, 0.5, 1);
  auto omega0 = make_cylinder(z2, {identity(z2)}, {0.0, 1.0});
  FolnerSequenceSpec spec{z2, FolnerFamily::Boxes, HeightRule{}, {}, 128};
  CHECK_THROWS_AS(convergence_sweep(action, omega0, spec, {10, 20}, 32),
                  InsufficientDataError);
}
