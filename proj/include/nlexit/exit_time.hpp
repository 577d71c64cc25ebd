#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "nlexit/domain.hpp"
#include "nlexit/grid_path.hpp"
#include "nlexit/simulate.hpp"

namespace nlexit {

/// Exit times of a grid path from Q and from its closure. "Never exits
/// before the horizon" is the disengaged optional, not a large float.
/// Conventions: a node on the boundary counts as exited for tau_open
/// (boundary points belong to Q^c) and not exited for tau_closed.
struct ExitReport {
  std::optional<double> tau_open;    // tau_Q
  std::optional<double> tau_closed;  // tau_Qbar; tau_open <= tau_closed
  std::optional<std::size_t> hit_index_open;
  std::optional<std::size_t> hit_index_closed;
  double grid_dt = 0.0;

  // min(tau, clamp) with the sentinel mapping to clamp; the canonical
  // bounded functional for upper-expectation estimates.
  double tau_open_clamped(double clamp) const {
    return tau_open ? std::min(*tau_open, clamp) : clamp;
  }
  double tau_closed_clamped(double clamp) const {
    return tau_closed ? std::min(*tau_closed, clamp) : clamp;
  }
};

/// Scans the grid nodes in order; first node not in Q gives tau_open, first
/// node outside the closure gives tau_closed. True crossing times for
/// transversal paths lie within one dt below the reported values.
ExitReport exit_times(const GridPath& p, const DomainSpec& q);

/// States frozen from the last grid node <= tau onward.
GridPath stopped_path(const GridPath& p, double tau);

struct SemicontinuityRow {
  double delta;   // sup distance between base and perturbed path
  double v_lsc;   // violation of lower semicontinuity of tau_Q (clamped)
  double v_usc;   // violation of upper semicontinuity of tau_Qbar (clamped)
};

struct SemicontinuityReport {
  ExitReport base;
  std::vector<SemicontinuityRow> rows;
};

/// Lower/upper semicontinuity probe: perturbs the base path by each bump and
/// reports how far the clamped exit times move against the semicontinuity
/// directions. For transversal analytic paths the violations stay within
/// slope * delta + dt.
SemicontinuityReport semicontinuity_probe(const GridPath& base,
                                          const DomainSpec& q,
                                          const std::vector<GridPath>& bumps,
                                          double clamp);

/// Streaming exit scan for use with simulate_path: detects both exit times
/// without storing the path and stops the simulation once the closure has
/// been left.
class ExitScanSink {
 public:
  ExitScanSink(const DomainSpec& q, const TimeGrid& grid)
      : q_(&q), grid_(grid) {}

  void begin(std::uint64_t, std::span<const double> x0) {
    open_idx_.reset();
    closed_idx_.reset();
    failed_ = false;
    classify_node(0, x0);
  }
  bool step(std::size_t i, std::span<const double> state,
            std::span<const double>, std::span<const double>, const SymMat&) {
    classify_node(i + 1, state);
    return !closed_idx_.has_value();
  }
  void fail(std::size_t) { failed_ = true; }

  bool failed() const { return failed_; }

  ExitReport report() const {
    ExitReport r;
    r.grid_dt = grid_.dt();
    r.hit_index_open = open_idx_;
    r.hit_index_closed = closed_idx_;
    if (open_idx_) r.tau_open = grid_.time(*open_idx_);
    if (closed_idx_) r.tau_closed = grid_.time(*closed_idx_);
    return r;
  }

 private:
  void classify_node(std::size_t node, std::span<const double> x) {
    const Region reg = q_->classify(x);
    if (!open_idx_ && reg != Region::InQ) open_idx_ = node;
    if (!closed_idx_ && reg == Region::InClosureComplement) closed_idx_ = node;
  }

  const DomainSpec* q_;
  TimeGrid grid_;
  std::optional<std::size_t> open_idx_, closed_idx_;
  bool failed_ = false;
};

/// Exit report for one simulated path, computed without materializing it.
inline ExitReport scan_exit(const PreparedEnsemble& prep,
                            std::uint64_t path_index, const DomainSpec& q,
                            bool* failed = nullptr) {
  ExitScanSink sink(q, prep.spec().grid);
  simulate_path(prep, path_index, sink);
  if (failed) *failed = sink.failed();
  return sink.report();
}

}  // namespace nlexit
