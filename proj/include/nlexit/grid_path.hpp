#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nlexit/errors.hpp"

namespace nlexit {

/// Uniform grid on [0, horizon]. Stores (horizon, steps); dt is derived so
/// that dt * steps reproduces horizon exactly in the stored representation.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
      throw ArgumentError("TimeGrid: horizon must be positive and finite");
    if (steps < 1) throw ArgumentError("TimeGrid: steps must be >= 1");
  }

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  std::size_t node_count() const { return steps_ + 1; }
  double dt() const { return horizon_ / static_cast<double>(steps_); }

  /// Time of node i, computed as horizon*i/steps (exact at i == steps).
  double time(std::size_t i) const {
    return horizon_ * static_cast<double>(i) / static_cast<double>(steps_);
  }

  /// Largest node index with time(i) <= t (clamped to the grid).
  std::size_t node_at_or_before(double t) const {
    if (t <= 0.0) return 0;
    if (t >= horizon_) return steps_;
    auto i = static_cast<std::size_t>(std::floor(
        t / horizon_ * static_cast<double>(steps_) * (1.0 + 1e-15)));
    if (i > steps_) i = steps_;
    while (i + 1 <= steps_ && time(i + 1) <= t) ++i;
    while (i > 0 && time(i) > t) --i;
    return i;
  }

  bool operator==(const TimeGrid& o) const {
    return horizon_ == o.horizon_ && steps_ == o.steps_;
  }

 private:
  double horizon_;
  std::size_t steps_;
};

/// A discretized continuous path: d-dimensional state at each grid node.
/// Value type; states are stored contiguously, node-major.
class GridPath {
 public:
  GridPath(TimeGrid grid, int dim)
      : grid_(grid), dim_(dim),
        states_(static_cast<std::size_t>(dim) * grid.node_count(), 0.0) {
    if (dim < 1) throw ArgumentError("GridPath: dim must be >= 1");
  }

  static GridPath constant(TimeGrid grid, std::span<const double> x) {
    GridPath p(grid, static_cast<int>(x.size()));
    for (std::size_t i = 0; i < grid.node_count(); ++i)
      for (std::size_t c = 0; c < x.size(); ++c) p.states_[i * x.size() + c] = x[c];
    return p;
  }

  static GridPath constant1d(TimeGrid grid, double x) {
    return constant(grid, std::span<const double>(&x, 1));
  }

  /// Builds a 1-D path from t -> f(t) sampled at the grid nodes.
  static GridPath from_function1d(TimeGrid grid,
                                  const std::function<double(double)>& f) {
    GridPath p(grid, 1);
    for (std::size_t i = 0; i < grid.node_count(); ++i)
      p.states_[i] = f(grid.time(i));
    return p;
  }

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return dim_; }

  std::span<const double> state(std::size_t node) const {
    return {states_.data() + node * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::span<double> state(std::size_t node) {
    return {states_.data() + node * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& raw() const { return states_; }
  std::vector<double>& raw() { return states_; }

  bool all_finite() const {
    for (double v : states_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const GridPath& o) const {
    return grid_ == o.grid_ && dim_ == o.dim_ && states_ == o.states_;
  }

 private:
  TimeGrid grid_;
  int dim_;
  std::vector<double> states_;
};

/// Throws DimensionError unless a and b share grid and dimension.
void require_same_layout(const GridPath& a, const GridPath& b);

struct PathMetricValue {
  double value;       // truncated sum
  double tail_bound;  // 2^-n_max, bound on the dropped tail
};

/// Truncated path distance sum_{N=1..n_max} 2^-N [ (sup_{[0,N]} |a-b|) ^ 1 ].
/// Windows past the horizon use the sup over the whole available path.
PathMetricValue path_metric(const GridPath& a, const GridPath& b, int n_max = 20);

/// Max Euclidean distance |a_t - b_t| over grid nodes with t <= up_to.
double sup_distance(const GridPath& a, const GridPath& b, double up_to);

/// Nodewise sum p + bump.
GridPath perturb(const GridPath& p, const GridPath& bump);

}  // namespace nlexit
