#include "nlexit/grid_path.hpp"

#include <algorithm>
#include <cmath>

namespace nlexit {

void require_same_layout(const GridPath& a, const GridPath& b) {
  if (a.dim() != b.dim())
    throw DimensionError("paths have different dimensions");
  if (!(a.grid() == b.grid()))
    throw DimensionError("paths live on different time grids");
}

namespace {

double node_distance(const GridPath& a, const GridPath& b, std::size_t i) {
  double s = 0.0;
  const auto xa = a.state(i);
  const auto xb = b.state(i);
  for (int c = 0; c < a.dim(); ++c) {
    const double d = xa[c] - xb[c];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

PathMetricValue path_metric(const GridPath& a, const GridPath& b, int n_max) {
  require_same_layout(a, b);
  if (n_max < 1) throw ArgumentError("path_metric: n_max must be >= 1");

  // Running sup over [0, N]; node index advanced window by window.
  double sup = 0.0;
  std::size_t node = 0;
  const std::size_t last = a.grid().steps();
  double value = 0.0;
  double weight = 1.0;
  for (int N = 1; N <= n_max; ++N) {
    weight *= 0.5;
    while (node <= last && a.grid().time(node) <= static_cast<double>(N)) {
      sup = std::max(sup, node_distance(a, b, node));
      ++node;
    }
    value += weight * std::min(sup, 1.0);
  }
  return {value, std::ldexp(1.0, -n_max)};
}

double sup_distance(const GridPath& a, const GridPath& b, double up_to) {
  require_same_layout(a, b);
  if (up_to < 0.0 || up_to > a.grid().horizon())
    throw ArgumentError("sup_distance: up_to outside [0, horizon]");
  const std::size_t last = a.grid().node_at_or_before(up_to);
  double sup = 0.0;
  for (std::size_t i = 0; i <= last; ++i)
    sup = std::max(sup, node_distance(a, b, i));
  return sup;
}

GridPath perturb(const GridPath& p, const GridPath& bump) {
  require_same_layout(p, bump);
  GridPath out = p;
  auto& v = out.raw();
  const auto& w = bump.raw();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  return out;
}

}  // namespace nlexit
