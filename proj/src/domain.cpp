#include "nlexit/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlexit/rng.hpp"

namespace nlexit {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double dist2(std::span<const double> x, std::span<const double> c) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - c[i];
    s += d * d;
  }
  return s;
}

// Distance from p to the ray { t*(ux,uy) : t >= 0 }, |(ux,uy)| = 1.
double dist_to_ray(double px, double py, double ux, double uy) {
  const double t = std::max(0.0, px * ux + py * uy);
  const double dx = px - t * ux;
  const double dy = py - t * uy;
  return std::sqrt(dx * dx + dy * dy);
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

DomainSpec::DomainSpec(Variant v, int dim)
    : v_(std::make_shared<const Variant>(std::move(v))), dim_(dim) {}

DomainSpec DomainSpec::half_space(std::vector<double> normal, double offset) {
  if (normal.empty()) throw ArgumentError("half_space: empty normal");
  const double n = norm(normal);
  if (!(n > 0.0)) throw ArgumentError("half_space: zero normal");
  // Normalizing the normal rescales the offset so the set is unchanged.
  for (auto& v : normal) v /= n;
  const int d = static_cast<int>(normal.size());
  return DomainSpec(HalfSpace{std::move(normal), offset / n}, d);
}

DomainSpec DomainSpec::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw ArgumentError("ball: empty center");
  if (!(radius > 0.0)) throw ArgumentError("ball: radius must be positive");
  const int d = static_cast<int>(center.size());
  return DomainSpec(Ball{std::move(center), radius}, d);
}

DomainSpec DomainSpec::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw ArgumentError("box: lo/hi must be nonempty and equally sized");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw ArgumentError("box: bounds must satisfy lo < hi componentwise");
  const int d = static_cast<int>(lo.size());
  return DomainSpec(Box{std::move(lo), std::move(hi)}, d);
}

DomainSpec DomainSpec::interval(double a, double b) {
  if (!(a < b)) throw ArgumentError("interval: requires a < b");
  return DomainSpec(Interval{a, b}, 1);
}

DomainSpec DomainSpec::lower_ray(double a) {
  return DomainSpec(LowerRay{a}, 1);
}

DomainSpec DomainSpec::ball_complement(std::vector<double> center,
                                       double radius) {
  if (center.empty()) throw ArgumentError("ball_complement: empty center");
  if (!(radius > 0.0))
    throw ArgumentError("ball_complement: radius must be positive");
  const int d = static_cast<int>(center.size());
  return DomainSpec(BallComplement{std::move(center), radius}, d);
}

DomainSpec DomainSpec::cone_test() { return DomainSpec(ConeTest{}, 2); }

DomainSpec DomainSpec::strip2d() { return DomainSpec(Strip2D{}, 2); }

DomainSpec DomainSpec::intersection(std::vector<DomainSpec> members) {
  if (members.empty()) throw ArgumentError("intersection: no members");
  const int d = members.front().dim();
  for (const auto& m : members)
    if (m.dim() != d)
      throw DimensionError("intersection: members disagree on dimension");
  return DomainSpec(Intersection{std::move(members)}, d);
}

std::string DomainSpec::type_name() const {
  struct V {
    std::string operator()(const HalfSpace&) const { return "half_space"; }
    std::string operator()(const Ball&) const { return "ball"; }
    std::string operator()(const Box&) const { return "box"; }
    std::string operator()(const Interval&) const { return "interval"; }
    std::string operator()(const LowerRay&) const { return "lower_ray"; }
    std::string operator()(const BallComplement&) const {
      return "ball_complement";
    }
    std::string operator()(const ConeTest&) const { return "cone_test"; }
    std::string operator()(const Strip2D&) const { return "strip2d"; }
    std::string operator()(const Intersection&) const { return "intersection"; }
  };
  return std::visit(V{}, *v_);
}

Region DomainSpec::classify(std::span<const double> x, double tol_geom) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionError("classify: point dimension mismatch");
  if (tol_geom > 0.0) {
    const double sd = signed_distance(x);
    if (std::fabs(sd) <= tol_geom) return Region::OnBoundary;
    return sd < 0.0 ? Region::InQ : Region::InClosureComplement;
  }

  struct V {
    std::span<const double> x;
    Region operator()(const HalfSpace& h) const {
      const double s = dot(x, h.normal) - h.offset;
      if (s < 0.0) return Region::InQ;
      if (s == 0.0) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    Region operator()(const Ball& b) const {
      const double d2 = dist2(x, b.center);
      const double r2 = b.radius * b.radius;
      if (d2 < r2) return Region::InQ;
      if (d2 == r2) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    Region operator()(const Box& b) const {
      bool strict = true;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < b.lo[i] || x[i] > b.hi[i])
          return Region::InClosureComplement;
        if (x[i] == b.lo[i] || x[i] == b.hi[i]) strict = false;
      }
      return strict ? Region::InQ : Region::OnBoundary;
    }
    Region operator()(const Interval& iv) const {
      if (x[0] > iv.a && x[0] < iv.b) return Region::InQ;
      if (x[0] == iv.a || x[0] == iv.b) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    Region operator()(const LowerRay& r) const {
      if (x[0] < r.a) return Region::InQ;
      if (x[0] == r.a) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    Region operator()(const BallComplement& b) const {
      const double d2 = dist2(x, b.center);
      const double r2 = b.radius * b.radius;
      if (d2 > r2) return Region::InQ;
      if (d2 == r2) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    Region operator()(const ConeTest&) const {
      const double ax = std::fabs(x[0]);
      if (x[1] < ax) return Region::InQ;
      if (x[1] == ax) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    Region operator()(const Strip2D&) const {
      if (x[1] > 0.0 && x[1] < 1.0) return Region::InQ;
      if (x[1] == 0.0 || x[1] == 1.0) return Region::OnBoundary;
      return Region::InClosureComplement;
    }
    // Member-wise rule; exact whenever the closure of the intersection
    // equals the intersection of member closures (true for every
    // non-degenerate catalog combination; degenerate overlaps would widen
    // OnBoundary, never shrink InQ).
    Region operator()(const Intersection& s) const {
      bool all_in = true;
      for (const auto& m : s.members) {
        switch (m.classify(x)) {
          case Region::InClosureComplement:
            return Region::InClosureComplement;
          case Region::OnBoundary:
            all_in = false;
            break;
          case Region::InQ:
            break;
        }
      }
      return all_in ? Region::InQ : Region::OnBoundary;
    }
  };
  return std::visit(V{x}, *v_);
}

double DomainSpec::signed_distance(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionError("signed_distance: point dimension mismatch");
  struct V {
    std::span<const double> x;
    double operator()(const HalfSpace& h) const {
      return dot(x, h.normal) - h.offset;
    }
    double operator()(const Ball& b) const {
      return std::sqrt(dist2(x, b.center)) - b.radius;
    }
    double operator()(const Box& b) const {
      double inside = -std::numeric_limits<double>::infinity();
      double out2 = 0.0;
      bool outside = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = std::max(b.lo[i] - x[i], x[i] - b.hi[i]);
        inside = std::max(inside, d);
        if (d > 0.0) {
          outside = true;
          out2 += d * d;
        }
      }
      return outside ? std::sqrt(out2) : inside;
    }
    double operator()(const Interval& iv) const {
      return std::max(iv.a - x[0], x[0] - iv.b);
    }
    double operator()(const LowerRay& r) const { return x[0] - r.a; }
    double operator()(const BallComplement& b) const {
      return b.radius - std::sqrt(dist2(x, b.center));
    }
    double operator()(const ConeTest&) const {
      const double d = std::min(dist_to_ray(x[0], x[1], kInvSqrt2, kInvSqrt2),
                                dist_to_ray(x[0], x[1], -kInvSqrt2, kInvSqrt2));
      const double ax = std::fabs(x[0]);
      if (x[1] < ax) return -d;
      if (x[1] == ax) return 0.0;
      return d;
    }
    double operator()(const Strip2D&) const {
      return std::max(-x[1], x[1] - 1.0);
    }
    double operator()(const Intersection& s) const {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& mem : s.members)
        m = std::max(m, mem.signed_distance(x));
      return m;
    }
  };
  return std::visit(V{x}, *v_);
}

std::optional<WitnessBall> DomainSpec::witness_at(
    std::span<const double> x) const {
  std::vector<double> xv(x.begin(), x.end());
  struct V {
    std::span<const double> x;
    std::vector<double>& xv;
    std::optional<WitnessBall> operator()(const HalfSpace& h) const {
      std::vector<double> z(xv);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += h.normal[i];
      return WitnessBall{xv, std::move(z), 1.0};
    }
    std::optional<WitnessBall> operator()(const Ball& b) const {
      std::vector<double> z(xv);
      const double r = b.radius;
      for (std::size_t i = 0; i < z.size(); ++i)
        z[i] += (x[i] - b.center[i]);  // |x-c| == r on the boundary
      return WitnessBall{xv, std::move(z), r};
    }
    std::optional<WitnessBall> operator()(const Box& b) const {
      std::vector<double> u(xv.size(), 0.0);
      for (std::size_t i = 0; i < xv.size(); ++i) {
        if (x[i] == b.lo[i]) u[i] -= 1.0;
        if (x[i] == b.hi[i]) u[i] += 1.0;
      }
      const double n = norm(u);
      if (!(n > 0.0)) return std::nullopt;  // not actually on the boundary
      std::vector<double> z(xv);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += u[i] / n;
      return WitnessBall{xv, std::move(z), 1.0};
    }
    std::optional<WitnessBall> operator()(const Interval& iv) const {
      if (x[0] == iv.a) return WitnessBall{xv, {iv.a - 1.0}, 1.0};
      return WitnessBall{xv, {iv.b + 1.0}, 1.0};
    }
    std::optional<WitnessBall> operator()(const LowerRay& r) const {
      return WitnessBall{xv, {r.a + 1.0}, 1.0};  // U(a+1,1) = (a, a+2)
    }
    std::optional<WitnessBall> operator()(const BallComplement& b) const {
      return WitnessBall{xv, b.center, b.radius};
    }
    std::optional<WitnessBall> operator()(const ConeTest&) const {
      const double t = x[0];
      if (t == 0.0) return std::nullopt;  // fails exactly at the vertex
      const double r = std::min(1.0, std::sqrt(2.0) * std::fabs(t));
      const double sx = (t > 0.0) ? -kInvSqrt2 : kInvSqrt2;
      return WitnessBall{xv, {x[0] + r * sx, x[1] + r * kInvSqrt2}, r};
    }
    std::optional<WitnessBall> operator()(const Strip2D&) const {
      if (x[1] == 0.0) return WitnessBall{xv, {x[0], -1.0}, 1.0};
      return WitnessBall{xv, {x[0], 2.0}, 1.0};
    }
    // Any member whose boundary passes through x supplies a ball avoiding
    // that member, hence avoiding the intersection.
    std::optional<WitnessBall> operator()(const Intersection& s) const {
      for (const auto& m : s.members) {
        if (m.classify(x) != Region::OnBoundary) continue;
        if (auto w = m.witness_at(x)) return w;
      }
      return std::nullopt;
    }
  };
  return std::visit(V{x, xv}, *v_);
}

ExteriorBallVerdict DomainSpec::exterior_ball() const {
  struct V {
    const DomainSpec& q;
    ExteriorBallVerdict operator()(const ConeTest&) const {
      ExteriorBallVerdict v;
      v.satisfied_everywhere = false;
      v.known = true;
      v.failure_point = std::vector<double>{0.0, 0.0};
      return v;
    }
    ExteriorBallVerdict operator()(const Intersection& s) const {
      ExteriorBallVerdict v;
      bool all = true;
      for (const auto& m : s.members) {
        const auto mv = m.exterior_ball();
        if (!mv.known || !mv.satisfied_everywhere) all = false;
      }
      // Every boundary point of the intersection lies on some member's
      // boundary, and that member's witness ball avoids the whole
      // intersection. Without per-member certification we return "unknown"
      // rather than guessing.
      v.satisfied_everywhere = all;
      v.known = all;
      return v;
    }
    template <class T>
    ExteriorBallVerdict operator()(const T&) const {
      ExteriorBallVerdict v;
      v.satisfied_everywhere = true;
      v.known = true;
      return v;
    }
  };
  return std::visit(V{*this}, *v_);
}

ExteriorBallVerdict DomainSpec::exterior_ball(std::span<const double> x) const {
  if (classify(x) != Region::OnBoundary)
    throw ArgumentError("exterior_ball: point is not on the boundary");
  ExteriorBallVerdict v = exterior_ball();
  if (auto w = witness_at(x)) {
    v.witness = std::move(w);
    if (!v.known) {
      // A concrete witness certifies this point even when the whole-domain
      // verdict is unknown.
      v.known = true;
      v.satisfied_everywhere = false;
    }
  } else {
    v.satisfied_everywhere = false;
    v.failure_point = std::vector<double>(x.begin(), x.end());
  }
  return v;
}

bool DomainSpec::is_bounded() const {
  struct V {
    bool operator()(const Ball&) const { return true; }
    bool operator()(const Box&) const { return true; }
    bool operator()(const Interval&) const { return true; }
    bool operator()(const Intersection& s) const {
      return std::any_of(s.members.begin(), s.members.end(),
                         [](const DomainSpec& m) { return m.is_bounded(); });
    }
    template <class T>
    bool operator()(const T&) const {
      return false;
    }
  };
  return std::visit(V{}, *v_);
}

std::pair<double, double> DomainSpec::coordinate_bounds(int c) const {
  if (c < 0 || c >= dim_)
    throw ArgumentError("coordinate_bounds: component out of range");
  struct V {
    int c;
    std::pair<double, double> operator()(const Ball& b) const {
      return {b.center[static_cast<std::size_t>(c)] - b.radius,
              b.center[static_cast<std::size_t>(c)] + b.radius};
    }
    std::pair<double, double> operator()(const Box& b) const {
      return {b.lo[static_cast<std::size_t>(c)],
              b.hi[static_cast<std::size_t>(c)]};
    }
    std::pair<double, double> operator()(const Interval& iv) const {
      return {iv.a, iv.b};
    }
    std::pair<double, double> operator()(const Intersection& s) const {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (const auto& m : s.members) {
        if (!m.is_bounded()) continue;
        const auto [mlo, mhi] = m.coordinate_bounds(c);
        lo = std::max(lo, mlo);
        hi = std::min(hi, mhi);
      }
      if (!std::isfinite(lo) || !std::isfinite(hi))
        throw ArgumentError("coordinate_bounds: intersection is unbounded");
      return {lo, hi};
    }
    template <class T>
    std::pair<double, double> operator()(const T&) const {
      throw ArgumentError("coordinate_bounds: domain is unbounded");
    }
  };
  return std::visit(V{c}, *v_);
}

nlohmann::json DomainSpec::to_json() const {
  struct V {
    nlohmann::json operator()(const HalfSpace& h) const {
      return {{"type", "half_space"}, {"normal", h.normal}, {"offset", h.offset}};
    }
    nlohmann::json operator()(const Ball& b) const {
      return {{"type", "ball"}, {"center", b.center}, {"radius", b.radius}};
    }
    nlohmann::json operator()(const Box& b) const {
      return {{"type", "box"}, {"lo", b.lo}, {"hi", b.hi}};
    }
    nlohmann::json operator()(const Interval& iv) const {
      return {{"type", "interval"}, {"a", iv.a}, {"b", iv.b}};
    }
    nlohmann::json operator()(const LowerRay& r) const {
      return {{"type", "lower_ray"}, {"a", r.a}};
    }
    nlohmann::json operator()(const BallComplement& b) const {
      return {{"type", "ball_complement"},
              {"center", b.center},
              {"radius", b.radius}};
    }
    nlohmann::json operator()(const ConeTest&) const {
      return {{"type", "cone_test"}};
    }
    nlohmann::json operator()(const Strip2D&) const {
      return {{"type", "strip2d"}};
    }
    nlohmann::json operator()(const Intersection& s) const {
      nlohmann::json members = nlohmann::json::array();
      for (const auto& m : s.members) members.push_back(m.to_json());
      return {{"type", "intersection"}, {"members", members}};
    }
  };
  return std::visit(V{}, *v_);
}

namespace {

void require_keys(const nlohmann::json& j, const std::string& pointer,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ConfigError(pointer + "/" + key, "unknown key");
  }
}

double get_number(const nlohmann::json& j, const std::string& pointer,
                  const char* key) {
  if (!j.contains(key)) throw ConfigError(pointer + "/" + key, "missing key");
  if (!j.at(key).is_number())
    throw ConfigError(pointer + "/" + key, "expected a number");
  return j.at(key).get<double>();
}

std::vector<double> get_vector(const nlohmann::json& j,
                               const std::string& pointer, const char* key) {
  if (!j.contains(key)) throw ConfigError(pointer + "/" + key, "missing key");
  const auto& a = j.at(key);
  if (!a.is_array() || a.empty())
    throw ConfigError(pointer + "/" + key, "expected a nonempty array");
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number())
      throw ConfigError(pointer + "/" + key, "expected numeric entries");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

DomainSpec DomainSpec::from_json(const nlohmann::json& j,
                                 const std::string& pointer) {
  if (!j.is_object()) throw ConfigError(pointer, "expected an object");
  if (!j.contains("type")) throw ConfigError(pointer + "/type", "missing key");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "half_space") {
      require_keys(j, pointer, {"type", "normal", "offset"});
      return half_space(get_vector(j, pointer, "normal"),
                        get_number(j, pointer, "offset"));
    }
    if (type == "ball") {
      require_keys(j, pointer, {"type", "center", "radius"});
      return ball(get_vector(j, pointer, "center"),
                  get_number(j, pointer, "radius"));
    }
    if (type == "box") {
      require_keys(j, pointer, {"type", "lo", "hi"});
      return box(get_vector(j, pointer, "lo"), get_vector(j, pointer, "hi"));
    }
    if (type == "interval") {
      require_keys(j, pointer, {"type", "a", "b"});
      return interval(get_number(j, pointer, "a"), get_number(j, pointer, "b"));
    }
    if (type == "lower_ray") {
      require_keys(j, pointer, {"type", "a"});
      return lower_ray(get_number(j, pointer, "a"));
    }
    if (type == "ball_complement") {
      require_keys(j, pointer, {"type", "center", "radius"});
      return ball_complement(get_vector(j, pointer, "center"),
                             get_number(j, pointer, "radius"));
    }
    if (type == "cone_test") {
      require_keys(j, pointer, {"type"});
      return cone_test();
    }
    if (type == "strip2d") {
      require_keys(j, pointer, {"type"});
      return strip2d();
    }
    if (type == "intersection") {
      require_keys(j, pointer, {"type", "members"});
      if (!j.contains("members") || !j.at("members").is_array())
        throw ConfigError(pointer + "/members", "expected an array");
      std::vector<DomainSpec> members;
      std::size_t idx = 0;
      for (const auto& m : j.at("members")) {
        members.push_back(
            from_json(m, pointer + "/members/" + std::to_string(idx)));
        ++idx;
      }
      return intersection(std::move(members));
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(pointer, e.what());
  }
  throw ConfigError(pointer + "/type", "unknown domain type '" + type + "'");
}

std::vector<double> sample_boundary_point(
    const DomainSpec& q, const std::function<double()>& next_uniform) {
  auto unit_vector = [&](int d) {
    std::vector<double> u(static_cast<std::size_t>(d));
    double n = 0.0;
    do {
      n = 0.0;
      for (auto& v : u) {
        v = inverse_normal_cdf(next_uniform());
        n += v * v;
      }
      n = std::sqrt(n);
    } while (!(n > 1e-12));
    for (auto& v : u) v /= n;
    return u;
  };
  auto box_point = [&](double lo, double hi) {
    return lo + (hi - lo) * next_uniform();
  };

  struct V {
    const std::function<double()>& u;
    const std::function<std::vector<double>(int)>& unit;
    const std::function<double(double, double)>& range;
    const DomainSpec& q;

    std::vector<double> operator()(const HalfSpace& h) const {
      const int d = static_cast<int>(h.normal.size());
      std::vector<double> x(static_cast<std::size_t>(d));
      for (auto& v : x) v = range(-3.0, 3.0);
      const double s = [&] {
        double t = 0.0;
        for (int i = 0; i < d; ++i) t += x[static_cast<std::size_t>(i)] * h.normal[static_cast<std::size_t>(i)];
        return t;
      }();
      for (int i = 0; i < d; ++i)
        x[static_cast<std::size_t>(i)] +=
            (h.offset - s) * h.normal[static_cast<std::size_t>(i)];
      return x;
    }
    std::vector<double> operator()(const Ball& b) const {
      auto dir = unit(static_cast<int>(b.center.size()));
      std::vector<double> x(b.center);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += b.radius * dir[i];
      return x;
    }
    std::vector<double> operator()(const Box& b) const {
      const int d = static_cast<int>(b.lo.size());
      std::vector<double> x(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        x[static_cast<std::size_t>(i)] =
            range(b.lo[static_cast<std::size_t>(i)], b.hi[static_cast<std::size_t>(i)]);
      const int face = static_cast<int>(u() * d) % d;
      x[static_cast<std::size_t>(face)] =
          (u() < 0.5) ? b.lo[static_cast<std::size_t>(face)]
                      : b.hi[static_cast<std::size_t>(face)];
      return x;
    }
    std::vector<double> operator()(const Interval& iv) const {
      return {u() < 0.5 ? iv.a : iv.b};
    }
    std::vector<double> operator()(const LowerRay& r) const { return {r.a}; }
    std::vector<double> operator()(const BallComplement& b) const {
      auto dir = unit(static_cast<int>(b.center.size()));
      std::vector<double> x(b.center);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += b.radius * dir[i];
      return x;
    }
    std::vector<double> operator()(const ConeTest&) const {
      const double t = range(-3.0, 3.0);
      return {t, std::fabs(t)};
    }
    std::vector<double> operator()(const Strip2D&) const {
      return {range(-3.0, 3.0), u() < 0.5 ? 0.0 : 1.0};
    }
    std::vector<double> operator()(const Intersection& s) const {
      for (int attempt = 0; attempt < 4096; ++attempt) {
        const std::size_t pick =
            static_cast<std::size_t>(u() * static_cast<double>(s.members.size())) %
            s.members.size();
        auto x = sample_boundary_point(s.members[pick], u);
        if (q.classify(x) == Region::OnBoundary) return x;
      }
      throw Error("sample_boundary_point: rejection sampling failed");
    }
  };

  std::function<std::vector<double>(int)> unit = unit_vector;
  std::function<double(double, double)> range = box_point;
  return std::visit(V{next_uniform, unit, range, q}, q.variant());
}

}  // namespace nlexit
