#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlexit/errors.hpp"

#include "json.hpp"

namespace nlexit {

/// Exact three-way membership: x in Q, x on its boundary, or x outside the
/// closure. With the default zero tolerance these partition R^d.
enum class Region { InQ, OnBoundary, InClosureComplement };

struct WitnessBall {
  std::vector<double> boundary_point;  // queried x on the boundary
  std::vector<double> center;          // z
  double radius;                       // r; U(z,r) avoids Q, x on its sphere
};

/// Whole-domain exterior-ball verdict. `known == false` means the rule table
/// declines to certify either way (only arises for Intersection with a
/// member that is itself not certified everywhere).
struct ExteriorBallVerdict {
  bool satisfied_everywhere = false;
  bool known = true;
  std::optional<WitnessBall> witness;              // for a queried point
  std::optional<std::vector<double>> failure_point;  // where it fails, if known
};

// ---- catalog variants -----------------------------------------------------

struct HalfSpace {   // Q = { x : <x, normal> < offset }, |normal| = 1
  std::vector<double> normal;
  double offset;
};
struct Ball {        // open ball
  std::vector<double> center;
  double radius;
};
struct Box {         // open axis box, lo < hi componentwise
  std::vector<double> lo, hi;
};
struct Interval {    // Q = (a, b), d = 1
  double a, b;
};
struct LowerRay {    // Q = (-inf, a), d = 1
  double a;
};
struct BallComplement {  // Q = { |x - center| > radius }
  std::vector<double> center;
  double radius;
};
struct ConeTest {};  // Q = { (x,y) : y < |x| }, d = 2
struct Strip2D {};   // Q = R x (0,1), d = 2

class DomainSpec;
struct Intersection {
  std::vector<DomainSpec> members;
};

/// Analytic open set from the fixed catalog. Every verdict (membership,
/// signed distance, exterior ball) comes from a per-variant closed form, not
/// from numeric search; exit-time experiments rely on that exactness.
class DomainSpec {
 public:
  using Variant = std::variant<HalfSpace, Ball, Box, Interval, LowerRay,
                               BallComplement, ConeTest, Strip2D, Intersection>;

  static DomainSpec half_space(std::vector<double> normal, double offset);
  static DomainSpec ball(std::vector<double> center, double radius);
  static DomainSpec box(std::vector<double> lo, std::vector<double> hi);
  static DomainSpec interval(double a, double b);
  static DomainSpec lower_ray(double a);
  static DomainSpec ball_complement(std::vector<double> center, double radius);
  static DomainSpec cone_test();
  static DomainSpec strip2d();
  static DomainSpec intersection(std::vector<DomainSpec> members);

  int dim() const { return dim_; }
  const Variant& variant() const { return *v_; }
  std::string type_name() const;

  /// Exact classification. A positive tol_geom maps the band
  /// |signed_distance| <= tol_geom to OnBoundary (diagnostics only; exit
  /// detection always calls with the default 0).
  Region classify(std::span<const double> x, double tol_geom = 0.0) const;

  /// Negative in Q, zero on the boundary, positive outside the closure.
  /// Exact for primitive variants, max-combination for Intersection.
  double signed_distance(std::span<const double> x) const;

  /// Verdict for the whole boundary (rule table).
  ExteriorBallVerdict exterior_ball() const;

  /// Verdict plus witness at one boundary point; throws ArgumentError if x
  /// does not classify as OnBoundary.
  ExteriorBallVerdict exterior_ball(std::span<const double> x) const;

  /// Witness ball at a boundary point, or nullopt where the condition fails
  /// (ConeTest vertex) / cannot be certified.
  std::optional<WitnessBall> witness_at(std::span<const double> x) const;

  nlohmann::json to_json() const;
  static DomainSpec from_json(const nlohmann::json& j,
                              const std::string& pointer = "/domain");

  /// True if the catalog variant is bounded (Ball, Box, Interval, and
  /// intersections containing one of those).
  bool is_bounded() const;

  /// Range of coordinate `c` over the closure; requires a bounded variant.
  std::pair<double, double> coordinate_bounds(int c) const;

 private:
  explicit DomainSpec(Variant v, int dim);

  std::shared_ptr<const Variant> v_;  // immutable, freely shareable
  int dim_;
};

/// Uniform-ish sample on the boundary of q, driven by externally supplied
/// U(0,1) variates. Used by the sampled-ball oracle tests.
std::vector<double> sample_boundary_point(
    const DomainSpec& q, const std::function<double()>& next_uniform);

}  // namespace nlexit
