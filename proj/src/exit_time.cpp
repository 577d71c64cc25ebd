#include "nlexit/exit_time.hpp"

namespace nlexit {

ExitReport exit_times(const GridPath& p, const DomainSpec& q) {
  if (p.dim() != q.dim())
    throw DimensionError("exit_times: path/domain dimension mismatch");
  ExitReport r;
  r.grid_dt = p.grid().dt();
  for (std::size_t node = 0; node < p.grid().node_count(); ++node) {
    const Region reg = q.classify(p.state(node));
    if (!r.hit_index_open && reg != Region::InQ) {
      r.hit_index_open = node;
      r.tau_open = p.grid().time(node);
    }
    if (reg == Region::InClosureComplement) {
      r.hit_index_closed = node;
      r.tau_closed = p.grid().time(node);
      break;
    }
  }
  return r;
}

GridPath stopped_path(const GridPath& p, double tau) {
  if (tau < 0.0) throw ArgumentError("stopped_path: tau must be >= 0");
  if (tau >= p.grid().horizon()) return p;
  const std::size_t hold = p.grid().node_at_or_before(tau);
  GridPath out = p;
  const auto held = p.state(hold);
  for (std::size_t node = hold + 1; node < p.grid().node_count(); ++node) {
    auto s = out.state(node);
    std::copy(held.begin(), held.end(), s.begin());
  }
  return out;
}

SemicontinuityReport semicontinuity_probe(const GridPath& base,
                                          const DomainSpec& q,
                                          const std::vector<GridPath>& bumps,
                                          double clamp) {
  SemicontinuityReport rep;
  rep.base = exit_times(base, q);
  const double base_open = rep.base.tau_open_clamped(clamp);
  const double base_closed = rep.base.tau_closed_clamped(clamp);
  for (const auto& bump : bumps) {
    const GridPath moved = perturb(base, bump);
    const double delta = sup_distance(base, moved, base.grid().horizon());
    const ExitReport er = exit_times(moved, q);
    SemicontinuityRow row;
    row.delta = delta;
    row.v_lsc = std::max(0.0, base_open - er.tau_open_clamped(clamp));
    row.v_usc = std::max(0.0, er.tau_closed_clamped(clamp) - base_closed);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace nlexit
