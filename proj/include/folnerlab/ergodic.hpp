#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "folnerlab/folner.hpp"
#include "folnerlab/groups.hpp"
#include "folnerlab/sets.hpp"

namespace folnerlab {

/// Product-measure shift action on {0,1}^G for a free abelian G. Each
/// coordinate is an independent Bernoulli(p) bit derived statelessly from
/// (seed, path index, coordinate), so sample paths are reproducible and
/// evaluation order never matters.
struct BernoulliAction {
  GroupDescriptor descriptor;
  double p;
  std::uint64_t seed;
};

/// Validates the descriptor kind (free abelian only) and p in (0,1).
BernoulliAction make_bernoulli(GroupDescriptor descriptor, double p, std::uint64_t seed);

/// Function of finitely many coordinates: reads the bits at the window
/// points and looks the pattern up in `table`. Bit j of the table index is
/// the sampled bit at window[j], least significant bit first.
struct CylinderFunction {
  GroupDescriptor descriptor;
  std::vector<GroupElement> window;
  std::vector<double> table;  // size 2^|window|
};

/// Validates window nonempty with distinct in-group points and the table
/// sized to one entry per bit pattern. Windows are capped at 20 points.
CylinderFunction make_cylinder(GroupDescriptor descriptor, std::vector<GroupElement> window,
                               std::vector<double> table);

/// Expectation of the cylinder function under the product measure: each
/// table entry weighted by p^(ones) (1-p)^(zeros) of its bit pattern.
double expectation(const CylinderFunction& phi, double p);

/// One lazily sampled configuration. Coordinates are drawn on first read
/// and memoized; a repeated read returns the same bit.
class SamplePath {
 public:
  explicit SamplePath(const BernoulliAction& action, std::uint64_t path_index = 0);

  /// The bit at coordinate x, sampling it if not yet drawn.
  int coordinate(const GroupElement& x);

  /// Distinct coordinates drawn so far.
  std::size_t sampled() const { return memo_.size(); }

 private:
  std::uint64_t path_seed_;
  double p_;
  std::unordered_map<std::string, int> memo_;
};

struct AverageResult {
  std::uint64_t set_size;
  double empirical;      // (1/|F|) sum over g in F of phi(g . omega)
  double target;         // analytic expectation of phi
  double deviation;      // empirical - target
  std::uint64_t sample_count;  // distinct coordinates drawn for this average
};

/// Averages phi over one sample path: the shift convention is
/// (g . omega)(x) = omega(x + g), so the term at g reads the window
/// translated by g. path_index selects one of the independent paths.
AverageResult average(const BernoulliAction& action, const CylinderFunction& phi,
                      const FiniteGroupSet& f, std::uint64_t path_index = 0);

struct ConvergencePoint {
  int index;               // sequence index n
  std::uint64_t set_size;  // |F_n|
  double mse;              // mean squared deviation across sample paths
  double target;
};

/// For each requested index, generates F_n from the sequence spec and runs
/// `paths` independent sample paths, reporting the mean squared deviation
/// of the empirical average from the expectation. Paths run concurrently;
/// aggregation order is fixed, so results are identical for any thread
/// count. Throws InsufficientDataError for fewer than 3 indices.
std::vector<ConvergencePoint> convergence_sweep(const BernoulliAction& action,
                                                const CylinderFunction& phi,
                                                const FolnerSequenceSpec& seq_spec,
                                                const std::vector<int>& indices, int paths = 32);

/// Least-squares slope of log(mse) against log(set size). Needs at least
/// two points with positive mse and distinct sizes.
double loglog_slope(const std::vector<ConvergencePoint>& points);

}  // namespace folnerlab
