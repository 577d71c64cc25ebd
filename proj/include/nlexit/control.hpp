#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nlexit/errors.hpp"
#include "nlexit/grid_path.hpp"
#include "nlexit/symmat.hpp"

#include "json.hpp"

namespace nlexit {

// ---- control sets ----------------------------------------------------------
// A ControlSet is the compact set Gamma the quadratic-variation density may
// range over, discretized to a finite grid of representatives.

/// Gamma = [sigma_lo^2, sigma_hi^2], represented by a finite sigma grid.
struct ScalarVolInterval {
  double sigma_lo = 0.0;
  double sigma_hi = 0.0;
  std::vector<double> sigma_grid;  // sorted, deduplicated, in [lo, hi]
};

/// Finite list of PSD k x k matrices.
struct MatrixList {
  std::vector<SymMat> mats;
};

/// Gamma = { diag(alpha, 1-alpha) : alpha in grid }, k = 2.
struct AnisotropicDiag2 {
  std::vector<double> alphas;  // sorted, deduplicated, in [0,1]
};

/// Point-mass family: one deterministic constant path per grid value.
struct PointMassSet {
  std::vector<double> xs;  // sorted, deduplicated, in [-1,1]
};

class ControlSet {
 public:
  using Variant =
      std::variant<ScalarVolInterval, MatrixList, AnisotropicDiag2, PointMassSet>;

  /// sigma grid spaced linearly (or geometrically) between lo and hi.
  static ControlSet scalar_interval(double sigma_lo, double sigma_hi,
                                    int grid_points, bool geometric = false);
  static ControlSet matrix_list(std::vector<SymMat> mats);
  static ControlSet anisotropic_diag2(std::vector<double> alphas);
  static ControlSet point_mass(std::vector<double> xs);

  const Variant& variant() const { return v_; }
  bool is_point_mass() const {
    return std::holds_alternative<PointMassSet>(v_);
  }

  /// Dimension of the driving noise (matrix size); 1 for point-mass sets.
  int bm_dim() const;

  /// The finite list of matrix representatives (empty for point-mass sets).
  std::vector<SymMat> elements() const;

  nlohmann::json to_json() const;
  static ControlSet from_json(const nlohmann::json& j,
                              const std::string& pointer);

 private:
  explicit ControlSet(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// ---- control laws ----------------------------------------------------------

/// One simulated law: a piecewise-constant schedule of controls on the step
/// grid (the discrete surrogate for one measure P with d<B>/dt in Gamma), or
/// a single point mass. Constant laws are the one-piece case.
struct ControlLaw {
  struct Piece {
    std::size_t start_step;  // first step index this control applies to
    SymMat gamma;
  };

  std::uint64_t id = 0;
  std::string label;
  std::vector<Piece> pieces;            // sorted by start_step, first at 0
  std::optional<double> point_mass_x;   // set for point-mass laws

  const SymMat& gamma_at(std::size_t step) const;
  bool is_point_mass() const { return point_mass_x.has_value(); }

  static ControlLaw constant(std::uint64_t id, SymMat gamma, std::string label);
  static ControlLaw point_mass(std::uint64_t id, double x);

  nlohmann::json to_json() const;
};

enum class ScheduleMode { ConstantOnly, OneSwitch, RandomSwitch };

struct ScheduleOptions {
  std::size_t switch_times = 4;   // size of the coarse switch-time subgrid
  std::size_t random_count = 0;   // number of laws for RandomSwitch
  std::uint64_t seed = 0;         // RandomSwitch determinism
};

/// Enumerates the finite family of laws used as the sup surrogate.
///   - ConstantOnly: one law per control-set element.
///   - OneSwitch: constants plus every (value a, value b, switch step) on a
///     coarse subgrid of `switch_times` interior times; pairs with a == b are
///     kept so the count is |V| + |V|^2 * switch_times.
///   - RandomSwitch: `random_count` random piecewise schedules, deterministic
///     in the seed.
std::vector<ControlLaw> family_controls(const ControlSet& cs, ScheduleMode mode,
                                        const TimeGrid& grid,
                                        const ScheduleOptions& opt = {});

}  // namespace nlexit
