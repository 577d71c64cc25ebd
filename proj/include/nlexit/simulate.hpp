#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nlexit/control.hpp"
#include "nlexit/grid_path.hpp"
#include "nlexit/rng.hpp"
#include "nlexit/symmat.hpp"

namespace nlexit {

/// Per-path ledger for the decomposition Y = M + A with quadratic variation
/// <M>: states plus per-step martingale increments, finite-variation
/// increments, and QV matrix increments. States are reconstructed from the
/// increments with the fixed evaluation order
///     states[i+1] = states[i] + (mart_inc[i] + fv_inc[i]),
/// so that identity is checkable bit-for-bit.
struct SemimartingaleRecord {
  GridPath path;
  std::vector<double> mart_inc;  // steps x d
  std::vector<double> fv_inc;    // steps x d
  std::vector<double> qv_inc;    // steps x d x d, symmetric
  std::uint64_t law_id = 0;
  std::uint64_t path_index = 0;
  bool failed = false;           // hit a non-finite state while stepping
  std::size_t failed_step = 0;

  SemimartingaleRecord(TimeGrid grid, int dim)
      : path(grid, dim),
        mart_inc(grid.steps() * static_cast<std::size_t>(dim), 0.0),
        fv_inc(grid.steps() * static_cast<std::size_t>(dim), 0.0),
        qv_inc(grid.steps() * static_cast<std::size_t>(dim) * dim, 0.0) {}

  int dim() const { return path.dim(); }
  std::size_t steps() const { return path.grid().steps(); }

  std::span<const double> mart(std::size_t i) const {
    const auto d = static_cast<std::size_t>(dim());
    return {mart_inc.data() + i * d, d};
  }
  std::span<const double> fv(std::size_t i) const {
    const auto d = static_cast<std::size_t>(dim());
    return {fv_inc.data() + i * d, d};
  }
  /// QV increment of step i as a matrix view (copies into a SymMat).
  SymMat qv(std::size_t i) const {
    const int d = dim();
    SymMat m(d);
    const auto dd = static_cast<std::size_t>(d) * d;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m.at(r, c) = qv_inc[i * dd + static_cast<std::size_t>(r) * d + c];
    return m;
  }
};

/// Coefficients of an Euler-stepped SDE driven by the controlled noise:
/// drift b(t,x), cross-variation loadings h_ij(t,x) integrated against
/// d<B^i,B^j>, and diffusion sigma(t,x) (d x k, row-major) applied to dB.
/// Null drift/cross_load mean identically zero.
struct SdeCoefficients {
  std::function<void(double, std::span<const double>, std::span<double>)> drift;
  std::function<void(double, std::span<const double>, int, int,
                     std::span<double>)>
      cross_load;
  std::function<void(double, std::span<const double>, std::span<double>)>
      diffusion;  // required
  double lipschitz = 0.0;
  double nondegeneracy_floor = 0.0;
};

enum class FamilyKind { Gbm, PointMass, Gsde };

/// One law's worth of simulated paths: everything needed to regenerate path
/// i deterministically. Immutable after construction; safe to share.
struct EnsembleSpec {
  FamilyKind kind = FamilyKind::Gbm;
  ControlLaw law;
  TimeGrid grid{1.0, 1};
  int dim = 1;     // state dimension d
  int bm_dim = 1;  // driving noise dimension k
  std::vector<double> x0;
  std::uint64_t seed = 0;
  std::uint64_t n_paths = 0;
  std::shared_ptr<const SdeCoefficients> coeffs;  // Gsde only
};

/// G-Brownian-motion ensembles (Y = B, one per law): per step with control
/// gamma, dM = psd_factor(gamma) * sqrt(dt) * xi, dA = 0, d<M> = gamma*dt.
std::vector<EnsembleSpec> gbm_family(const ControlSet& cs, ScheduleMode mode,
                                     const TimeGrid& grid,
                                     std::vector<double> x0,
                                     std::uint64_t n_paths, std::uint64_t seed,
                                     const ScheduleOptions& opt = {});

/// Point-mass ensembles: one constant path per grid value, all increments
/// and QV identically zero.
std::vector<EnsembleSpec> pointmass_family(const ControlSet& cs,
                                           const TimeGrid& grid);

/// Euler-Maruyama ensembles for the SDE driven by controlled noise.
std::vector<EnsembleSpec> gsde_family(std::shared_ptr<const SdeCoefficients> c,
                                      int dim, const ControlSet& cs,
                                      ScheduleMode mode, const TimeGrid& grid,
                                      std::vector<double> x0,
                                      std::uint64_t n_paths, std::uint64_t seed,
                                      const ScheduleOptions& opt = {});

/// Per-law factorizations hoisted out of the step loop.
class PreparedEnsemble {
 public:
  explicit PreparedEnsemble(const EnsembleSpec& spec);

  const EnsembleSpec& spec() const { return *spec_; }

  struct Piece {
    std::size_t start_step;
    SymMat gamma;    // k x k control
    SymMat factor;   // B with B B^T = gamma
    SymMat qv_step;  // gamma * dt (exact model QV per step)
  };
  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  const EnsembleSpec* spec_;
  std::vector<Piece> pieces_;
};

// Sink concept used by simulate_path:
//   void begin(std::uint64_t path_index, std::span<const double> x0);
//   bool step(std::size_t i, std::span<const double> next_state,
//             std::span<const double> mart, std::span<const double> fv,
//             const SymMat& qv_step);   // i is the step index, state is Y at
//                                       // node i+1; return false to stop
//   void fail(std::size_t step_index);  // non-finite state; path abandoned
template <class Sink>
void simulate_path(const PreparedEnsemble& prep, std::uint64_t path_index,
                   Sink& sink) {
  const EnsembleSpec& e = prep.spec();
  const std::size_t n = e.grid.steps();
  const int d = e.dim;
  const int k = e.bm_dim;
  const double dt = e.grid.dt();
  const double sqrt_dt = std::sqrt(dt);

  std::vector<double> x(e.x0);
  sink.begin(path_index, x);

  if (e.kind == FamilyKind::PointMass) {
    static thread_local std::vector<double> zero_d, zero_qv;
    zero_d.assign(static_cast<std::size_t>(d), 0.0);
    const SymMat qv0(d);
    for (std::size_t i = 0; i < n; ++i)
      if (!sink.step(i, x, zero_d, zero_d, qv0)) return;
    return;
  }

  RngStream rng(e.seed, path_index);
  std::vector<double> xi(static_cast<std::size_t>(k));
  std::vector<double> zeta(static_cast<std::size_t>(k));
  std::vector<double> mart(static_cast<std::size_t>(d));
  std::vector<double> fv(static_cast<std::size_t>(d), 0.0);
  std::vector<double> sigma;
  std::vector<double> tmp_d(static_cast<std::size_t>(d));
  std::optional<SymMat> qv_gsde;

  const auto& pieces = prep.pieces();
  std::size_t piece_idx = 0;
  std::uint64_t variate = 0;

  for (std::size_t i = 0; i < n; ++i) {
    while (piece_idx + 1 < pieces.size() &&
           pieces[piece_idx + 1].start_step <= i)
      ++piece_idx;
    const auto& piece = pieces[piece_idx];

    for (int j = 0; j < k; ++j)
      xi[static_cast<std::size_t>(j)] = rng.normal(variate++);
    // zeta = factor * (sqrt_dt * xi): noise with covariance gamma*dt
    for (int r = 0; r < k; ++r) {
      double s = 0.0;
      for (int c = 0; c < k; ++c)
        s += piece.factor.at(r, c) * xi[static_cast<std::size_t>(c)];
      zeta[static_cast<std::size_t>(r)] = sqrt_dt * s;
    }

    const SymMat* qv = &piece.qv_step;
    if (e.kind == FamilyKind::Gbm) {
      for (int r = 0; r < d; ++r) mart[static_cast<std::size_t>(r)] = zeta[static_cast<std::size_t>(r)];
    } else {
      const double t = e.grid.time(i);
      const auto& c = *e.coeffs;
      sigma.assign(static_cast<std::size_t>(d) * k, 0.0);
      c.diffusion(t, x, sigma);
      for (int r = 0; r < d; ++r) {
        double s = 0.0;
        for (int j = 0; j < k; ++j)
          s += sigma[static_cast<std::size_t>(r) * k + j] *
               zeta[static_cast<std::size_t>(j)];
        mart[static_cast<std::size_t>(r)] = s;
      }
      std::fill(fv.begin(), fv.end(), 0.0);
      if (c.drift) {
        c.drift(t, x, tmp_d);
        for (int r = 0; r < d; ++r)
          fv[static_cast<std::size_t>(r)] += tmp_d[static_cast<std::size_t>(r)] * dt;
      }
      if (c.cross_load) {
        for (int bi = 0; bi < k; ++bi)
          for (int bj = 0; bj < k; ++bj) {
            const double g = piece.gamma.at(bi, bj);
            if (g == 0.0) continue;
            c.cross_load(t, x, bi, bj, tmp_d);
            for (int r = 0; r < d; ++r)
              fv[static_cast<std::size_t>(r)] +=
                  tmp_d[static_cast<std::size_t>(r)] * g * dt;
          }
      }
      qv_gsde = piece.gamma.sandwich(sigma, d).scaled(dt);
      qv = &*qv_gsde;
    }

    // Fixed evaluation order: x += (mart + fv).
    bool finite = true;
    for (int r = 0; r < d; ++r) {
      const double inc = mart[static_cast<std::size_t>(r)] + fv[static_cast<std::size_t>(r)];
      x[static_cast<std::size_t>(r)] += inc;
      if (!std::isfinite(x[static_cast<std::size_t>(r)])) finite = false;
    }
    if (!finite) {
      sink.fail(i);
      return;
    }
    if (!sink.step(i, x, mart, fv, *qv)) return;
  }
}

/// Full record for one path (allocates; see materialize_record_into for the
/// scratch-reusing form used in hot loops).
SemimartingaleRecord materialize_record(const PreparedEnsemble& prep,
                                        std::uint64_t path_index);
void materialize_record_into(const PreparedEnsemble& prep,
                             std::uint64_t path_index,
                             SemimartingaleRecord& out);

}  // namespace nlexit
