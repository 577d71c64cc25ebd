#include "nlexit/simulate.hpp"

#include <algorithm>

namespace nlexit {

namespace {

std::vector<double> default_x0(std::vector<double> x0, int dim) {
  if (x0.empty()) x0.assign(static_cast<std::size_t>(dim), 0.0);
  if (static_cast<int>(x0.size()) != dim)
    throw DimensionError("x0 dimension does not match the family dimension");
  return x0;
}

}  // namespace

std::vector<EnsembleSpec> gbm_family(const ControlSet& cs, ScheduleMode mode,
                                     const TimeGrid& grid,
                                     std::vector<double> x0,
                                     std::uint64_t n_paths, std::uint64_t seed,
                                     const ScheduleOptions& opt) {
  if (cs.is_point_mass())
    throw ArgumentError("gbm_family: control set is a point-mass family");
  const int k = cs.bm_dim();
  x0 = default_x0(std::move(x0), k);
  std::vector<EnsembleSpec> out;
  for (auto& law : family_controls(cs, mode, grid, opt)) {
    EnsembleSpec e;
    e.kind = FamilyKind::Gbm;
    e.law = std::move(law);
    e.grid = grid;
    e.dim = k;
    e.bm_dim = k;
    e.x0 = x0;
    e.seed = seed;
    e.n_paths = n_paths;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EnsembleSpec> pointmass_family(const ControlSet& cs,
                                           const TimeGrid& grid) {
  if (!cs.is_point_mass())
    throw ArgumentError("pointmass_family: control set is not a point-mass set");
  std::vector<EnsembleSpec> out;
  for (auto& law : family_controls(cs, ScheduleMode::ConstantOnly, grid)) {
    EnsembleSpec e;
    e.kind = FamilyKind::PointMass;
    e.grid = grid;
    e.dim = 1;
    e.bm_dim = 1;
    e.x0 = {law.point_mass_x.value()};
    e.seed = 0;
    e.n_paths = 1;  // the law is a point mass: one deterministic path
    e.law = std::move(law);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EnsembleSpec> gsde_family(std::shared_ptr<const SdeCoefficients> c,
                                      int dim, const ControlSet& cs,
                                      ScheduleMode mode, const TimeGrid& grid,
                                      std::vector<double> x0,
                                      std::uint64_t n_paths, std::uint64_t seed,
                                      const ScheduleOptions& opt) {
  if (!c || !c->diffusion)
    throw ArgumentError("gsde_family: diffusion coefficient is required");
  if (cs.is_point_mass())
    throw ArgumentError("gsde_family: control set is a point-mass family");
  x0 = default_x0(std::move(x0), dim);
  std::vector<EnsembleSpec> out;
  for (auto& law : family_controls(cs, mode, grid, opt)) {
    EnsembleSpec e;
    e.kind = FamilyKind::Gsde;
    e.law = std::move(law);
    e.grid = grid;
    e.dim = dim;
    e.bm_dim = cs.bm_dim();
    e.x0 = x0;
    e.seed = seed;
    e.n_paths = n_paths;
    e.coeffs = c;
    out.push_back(std::move(e));
  }
  return out;
}

PreparedEnsemble::PreparedEnsemble(const EnsembleSpec& spec) : spec_(&spec) {
  if (spec.kind == FamilyKind::PointMass) return;
  const double dt = spec.grid.dt();
  for (const auto& p : spec.law.pieces) {
    Piece prepared{p.start_step, p.gamma, p.gamma.psd_factor(),
                   p.gamma.scaled(dt)};
    pieces_.push_back(std::move(prepared));
  }
  if (pieces_.empty()) throw ArgumentError("ensemble law has no pieces");
}

namespace {

struct RecordSink {
  SemimartingaleRecord* rec;
  int d;

  void begin(std::uint64_t path_index, std::span<const double> x0) {
    rec->path_index = path_index;
    rec->failed = false;
    auto s0 = rec->path.state(0);
    std::copy(x0.begin(), x0.end(), s0.begin());
  }
  bool step(std::size_t i, std::span<const double> state,
            std::span<const double> mart, std::span<const double> fv,
            const SymMat& qv) {
    auto s = rec->path.state(i + 1);
    std::copy(state.begin(), state.end(), s.begin());
    const auto dd = static_cast<std::size_t>(d);
    std::copy(mart.begin(), mart.end(), rec->mart_inc.begin() + i * dd);
    std::copy(fv.begin(), fv.end(), rec->fv_inc.begin() + i * dd);
    std::copy(qv.raw().begin(), qv.raw().end(),
              rec->qv_inc.begin() + i * dd * dd);
    return true;
  }
  void fail(std::size_t i) {
    rec->failed = true;
    rec->failed_step = i;
    // Freeze the remaining nodes at the last finite state.
    const auto& prev = rec->path.state(i);
    std::vector<double> hold(prev.begin(), prev.end());
    for (std::size_t node = i + 1; node < rec->path.grid().node_count(); ++node) {
      auto s = rec->path.state(node);
      std::copy(hold.begin(), hold.end(), s.begin());
    }
  }
};

}  // namespace

void materialize_record_into(const PreparedEnsemble& prep,
                             std::uint64_t path_index,
                             SemimartingaleRecord& out) {
  const auto& e = prep.spec();
  if (!(out.path.grid() == e.grid) || out.dim() != e.dim)
    out = SemimartingaleRecord(e.grid, e.dim);
  out.law_id = e.law.id;
  RecordSink sink{&out, e.dim};
  simulate_path(prep, path_index, sink);
}

SemimartingaleRecord materialize_record(const PreparedEnsemble& prep,
                                        std::uint64_t path_index) {
  SemimartingaleRecord rec(prep.spec().grid, prep.spec().dim);
  materialize_record_into(prep, path_index, rec);
  return rec;
}

}  // namespace nlexit
