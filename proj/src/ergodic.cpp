#include "folnerlab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "folnerlab/error.hpp"

namespace folnerlab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Stateless coordinate hash: chain the mixed path seed through every
/// coordinate so distinct lattice points decouple.
std::uint64_t coordinate_hash(std::uint64_t path_seed, const GroupElement& x) {
  std::uint64_t h = path_seed;
  for (std::int64_t c : x.coords) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
  return h;
}

double uniform01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

BernoulliAction make_bernoulli(GroupDescriptor descriptor, double p, std::uint64_t seed) {
  if (descriptor.kind() != GroupKind::FreeAbelian)
    throw DescriptorMismatchError("coordinate sampling is defined over free abelian groups");
  if (!(p > 0.0 && p < 1.0)) throw Error("symbol probability must lie strictly in (0,1)");
  return BernoulliAction{std::move(descriptor), p, seed};
}

CylinderFunction make_cylinder(GroupDescriptor descriptor, std::vector<GroupElement> window,
                               std::vector<double> table) {
  if (window.empty()) throw EmptySetError("cylinder window must be nonempty");
  if (window.size() > 20) throw GuardExceededError("cylinder window is capped at 20 points");
  for (const GroupElement& w : window) validate_element(descriptor, w);
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j)
      if (window[i] == window[j]) throw Error("cylinder window points must be distinct");
  if (table.size() != (std::size_t{1} << window.size()))
    throw InsufficientDataError("cylinder table needs one entry per window bit pattern");
  return CylinderFunction{std::move(descriptor), std::move(window), std::move(table)};
}

double expectation(const CylinderFunction& phi, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("symbol probability must lie strictly in (0,1)");
  double total = 0.0;
  const std::size_t patterns = phi.table.size();
  for (std::size_t idx = 0; idx < patterns; ++idx) {
    double weight = 1.0;
    for (std::size_t j = 0; j < phi.window.size(); ++j)
      weight *= (idx >> j & 1u) ? p : 1.0 - p;
    total += phi.table[idx] * weight;
  }
  return total;
}

SamplePath::SamplePath(const BernoulliAction& action, std::uint64_t path_index)
    : path_seed_(splitmix64(action.seed ^ splitmix64(path_index))), p_(action.p) {}

int SamplePath::coordinate(const GroupElement& x) {
  std::string key;
  encode_element(x, key);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  int bit = uniform01(coordinate_hash(path_seed_, x)) < p_ ? 1 : 0;
  memo_.emplace(std::move(key), bit);
  return bit;
}

AverageResult average(const BernoulliAction& action, const CylinderFunction& phi,
                      const FiniteGroupSet& f, std::uint64_t path_index) {
  if (f.descriptor() != action.descriptor || phi.descriptor != action.descriptor)
    throw DescriptorMismatchError("action, function and set must share one group");
  if (f.empty()) throw EmptySetError("averaging set must be nonempty");
  SamplePath path(action, path_index);
  const GroupDescriptor& desc = action.descriptor;
  double sum = 0.0;
  for (const GroupElement& g : f) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < phi.window.size(); ++j) {
      GroupElement point = multiply(desc, phi.window[j], g);
      idx |= static_cast<std::size_t>(path.coordinate(point)) << j;
    }
    sum += phi.table[idx];
  }
  double empirical = sum / static_cast<double>(f.size());
  double target = expectation(phi, action.p);
  return AverageResult{f.size(), empirical, target, empirical - target, path.sampled()};
}

std::vector<ConvergencePoint> convergence_sweep(const BernoulliAction& action,
                                                const CylinderFunction& phi,
                                                const FolnerSequenceSpec& seq_spec,
                                                const std::vector<int>& indices, int paths) {
  if (indices.size() < 3)
    throw InsufficientDataError("convergence sweep needs at least 3 indices");
  if (paths < 1) throw InsufficientDataError("convergence sweep needs at least one path");
  if (seq_spec.descriptor != action.descriptor)
    throw DescriptorMismatchError("sequence spec and action must share one group");

  std::vector<ConvergencePoint> out;
  out.reserve(indices.size());
  for (int n : indices) {
    FiniteGroupSet f = generate(seq_spec, n);
    std::vector<double> deviations(static_cast<std::size_t>(paths), 0.0);

    int workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, paths);
    auto run_range = [&](int begin, int end) {
      for (int r = begin; r < end; ++r)
        deviations[static_cast<std::size_t>(r)] =
            average(action, phi, f, static_cast<std::uint64_t>(r)).deviation;
    };
    if (workers == 1) {
      run_range(0, paths);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      int chunk = (paths + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        int begin = w * chunk;
        if (begin >= paths) break;
        pool.emplace_back(run_range, begin, std::min(paths, begin + chunk));
      }
      for (auto& t : pool) t.join();
    }

    // Fixed summation order keeps the result identical for any worker count.
    double mse = 0.0;
    for (double dev : deviations) mse += dev * dev;
    mse /= static_cast<double>(paths);
    out.push_back(ConvergencePoint{n, f.size(), mse, expectation(phi, action.p)});
  }
  return out;
}

double loglog_slope(const std::vector<ConvergencePoint>& points) {
  if (points.size() < 2) throw InsufficientDataError("slope fit needs at least two points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const ConvergencePoint& pt : points) {
    if (pt.mse <= 0.0)
      throw InsufficientDataError("slope fit needs positive mean squared deviations");
    xs.push_back(std::log(static_cast<double>(pt.set_size)));
    ys.push_back(std::log(pt.mse));
  }
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(xs.size());
  ybar /= static_cast<double>(ys.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - xbar) * (ys[i] - ybar);
    den += (xs[i] - xbar) * (xs[i] - xbar);
  }
  if (den == 0.0) throw InsufficientDataError("slope fit needs distinct set sizes");
  return num / den;
}

}  // namespace folnerlab
