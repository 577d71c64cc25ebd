#include "nlexit/control.hpp"

#include <algorithm>
#include <cmath>

#include "nlexit/rng.hpp"

namespace nlexit {

namespace {

std::vector<double> sorted_dedup(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_psd(const SymMat& m) {
  if (!m.is_symmetric(1e-12 * std::max(1.0, m.max_abs())))
    throw ArgumentError("control matrix is not symmetric");
  if (m.min_eigenvalue() < -1e-12 * std::max(1.0, m.max_abs()))
    throw ArgumentError("control matrix is not PSD");
}

}  // namespace

ControlSet ControlSet::scalar_interval(double sigma_lo, double sigma_hi,
                                       int grid_points, bool geometric) {
  if (!(sigma_lo >= 0.0) || !(sigma_hi >= sigma_lo))
    throw ArgumentError("scalar_interval: need 0 <= sigma_lo <= sigma_hi");
  if (grid_points < 1) throw ArgumentError("scalar_interval: empty grid");
  if (geometric && !(sigma_lo > 0.0))
    throw ArgumentError("scalar_interval: geometric grid needs sigma_lo > 0");
  std::vector<double> grid;
  if (grid_points == 1 || sigma_hi == sigma_lo) {
    grid.push_back(sigma_hi);
  } else if (geometric) {
    const double ratio = std::log(sigma_hi / sigma_lo);
    for (int i = 0; i < grid_points; ++i)
      grid.push_back(sigma_lo *
                     std::exp(ratio * static_cast<double>(i) /
                              static_cast<double>(grid_points - 1)));
  } else {
    for (int i = 0; i < grid_points; ++i)
      grid.push_back(sigma_lo + (sigma_hi - sigma_lo) *
                                    static_cast<double>(i) /
                                    static_cast<double>(grid_points - 1));
  }
  return ControlSet(ScalarVolInterval{sigma_lo, sigma_hi, sorted_dedup(grid)});
}

ControlSet ControlSet::matrix_list(std::vector<SymMat> mats) {
  if (mats.empty()) throw ArgumentError("matrix_list: empty");
  const int k = mats.front().dim();
  for (const auto& m : mats) {
    if (m.dim() != k) throw DimensionError("matrix_list: mixed dimensions");
    require_psd(m);
  }
  return ControlSet(MatrixList{std::move(mats)});
}

ControlSet ControlSet::anisotropic_diag2(std::vector<double> alphas) {
  alphas = sorted_dedup(std::move(alphas));
  if (alphas.empty()) throw ArgumentError("anisotropic_diag2: empty grid");
  for (double a : alphas)
    if (a < 0.0 || a > 1.0)
      throw ArgumentError("anisotropic_diag2: alpha outside [0,1]");
  return ControlSet(AnisotropicDiag2{std::move(alphas)});
}

ControlSet ControlSet::point_mass(std::vector<double> xs) {
  xs = sorted_dedup(std::move(xs));
  if (xs.empty()) throw ArgumentError("point_mass: empty grid");
  for (double x : xs)
    if (x < -1.0 || x > 1.0)
      throw ArgumentError("point_mass: x outside [-1,1]");
  return ControlSet(PointMassSet{std::move(xs)});
}

int ControlSet::bm_dim() const {
  struct V {
    int operator()(const ScalarVolInterval&) const { return 1; }
    int operator()(const MatrixList& m) const { return m.mats.front().dim(); }
    int operator()(const AnisotropicDiag2&) const { return 2; }
    int operator()(const PointMassSet&) const { return 1; }
  };
  return std::visit(V{}, v_);
}

std::vector<SymMat> ControlSet::elements() const {
  struct V {
    std::vector<SymMat> operator()(const ScalarVolInterval& s) const {
      std::vector<SymMat> out;
      for (double sigma : s.sigma_grid)
        out.push_back(SymMat::scalar(sigma * sigma));
      return out;
    }
    std::vector<SymMat> operator()(const MatrixList& m) const { return m.mats; }
    std::vector<SymMat> operator()(const AnisotropicDiag2& a) const {
      std::vector<SymMat> out;
      for (double alpha : a.alphas) {
        const double d[2] = {alpha, 1.0 - alpha};
        out.push_back(SymMat::diag(std::span<const double>(d, 2)));
      }
      return out;
    }
    std::vector<SymMat> operator()(const PointMassSet&) const { return {}; }
  };
  return std::visit(V{}, v_);
}

nlohmann::json ControlSet::to_json() const {
  struct V {
    nlohmann::json operator()(const ScalarVolInterval& s) const {
      return {{"type", "scalar_interval"},
              {"lo", s.sigma_lo},
              {"hi", s.sigma_hi},
              {"sigma_grid", s.sigma_grid}};
    }
    nlohmann::json operator()(const MatrixList& m) const {
      nlohmann::json mats = nlohmann::json::array();
      for (const auto& mat : m.mats) mats.push_back(mat.raw());
      return {{"type", "matrix_list"}, {"dim", m.mats.front().dim()},
              {"mats", mats}};
    }
    nlohmann::json operator()(const AnisotropicDiag2& a) const {
      return {{"type", "anisotropic_diag2"}, {"alphas", a.alphas}};
    }
    nlohmann::json operator()(const PointMassSet& p) const {
      return {{"type", "point_mass"}, {"xs", p.xs}};
    }
  };
  return std::visit(V{}, v_);
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

}  // namespace

ControlSet ControlSet::from_json(const nlohmann::json& j,
                                 const std::string& pointer) {
  if (!j.is_object()) throw ConfigError(pointer, "expected an object");
  if (!j.contains("type")) throw ConfigError(pointer + "/type", "missing key");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "scalar_interval") {
      require_keys(j, pointer, {"type", "lo", "hi", "grid", "spacing"});
      const double lo = j.at("lo").get<double>();
      const double hi = j.at("hi").get<double>();
      const int grid = j.value("grid", 1);
      const std::string spacing = j.value("spacing", std::string("linear"));
      if (spacing != "linear" && spacing != "geometric")
        throw ConfigError(pointer + "/spacing",
                          "expected 'linear' or 'geometric'");
      return scalar_interval(lo, hi, grid, spacing == "geometric");
    }
    if (type == "matrix_list") {
      require_keys(j, pointer, {"type", "dim", "mats"});
      const int dim = j.at("dim").get<int>();
      std::vector<SymMat> mats;
      for (const auto& raw : j.at("mats")) {
        SymMat m(dim);
        const auto entries = raw.get<std::vector<double>>();
        if (entries.size() != static_cast<std::size_t>(dim) * dim)
          throw ConfigError(pointer + "/mats", "matrix entry count mismatch");
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c)
            m.at(r, c) = entries[static_cast<std::size_t>(r) * dim + c];
        mats.push_back(std::move(m));
      }
      return matrix_list(std::move(mats));
    }
    if (type == "anisotropic_diag2") {
      require_keys(j, pointer, {"type", "alphas"});
      return anisotropic_diag2(j.at("alphas").get<std::vector<double>>());
    }
    if (type == "point_mass") {
      require_keys(j, pointer, {"type", "xs"});
      return point_mass(j.at("xs").get<std::vector<double>>());
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(pointer, e.what());
  }
  throw ConfigError(pointer + "/type", "unknown control set type '" + type + "'");
}

const SymMat& ControlLaw::gamma_at(std::size_t step) const {
  if (pieces.empty()) throw Error("ControlLaw: no schedule pieces");
  const Piece* current = &pieces.front();
  for (const auto& p : pieces) {
    if (p.start_step <= step) current = &p;
    else break;
  }
  return current->gamma;
}

ControlLaw ControlLaw::constant(std::uint64_t id, SymMat gamma,
                                std::string label) {
  ControlLaw law;
  law.id = id;
  law.label = std::move(label);
  law.pieces.push_back({0, std::move(gamma)});
  return law;
}

ControlLaw ControlLaw::point_mass(std::uint64_t id, double x) {
  ControlLaw law;
  law.id = id;
  law.label = "pointmass(x=" + std::to_string(x) + ")";
  law.point_mass_x = x;
  return law;
}

nlohmann::json ControlLaw::to_json() const {
  nlohmann::json j{{"id", id}, {"label", label}};
  if (point_mass_x) {
    j["point_mass_x"] = *point_mass_x;
  } else {
    nlohmann::json pieces_json = nlohmann::json::array();
    for (const auto& p : pieces)
      pieces_json.push_back(
          {{"start_step", p.start_step}, {"gamma", p.gamma.raw()}});
    j["pieces"] = pieces_json;
  }
  return j;
}

std::vector<ControlLaw> family_controls(const ControlSet& cs, ScheduleMode mode,
                                        const TimeGrid& grid,
                                        const ScheduleOptions& opt) {
  std::vector<ControlLaw> laws;
  std::uint64_t next_id = 0;

  if (cs.is_point_mass()) {
    const auto& pm = std::get<PointMassSet>(cs.variant());
    for (double x : pm.xs) laws.push_back(ControlLaw::point_mass(next_id++, x));
    return laws;
  }

  const auto elems = cs.elements();
  if (elems.empty()) throw ArgumentError("family_controls: empty control set");

  for (std::size_t i = 0; i < elems.size(); ++i)
    laws.push_back(ControlLaw::constant(
        next_id++, elems[i], "const[" + std::to_string(i) + "]"));

  if (mode == ScheduleMode::ConstantOnly) return laws;

  if (mode == ScheduleMode::OneSwitch) {
    if (opt.switch_times == 0)
      throw ArgumentError("family_controls: one_switch needs switch times");
    // Interior switch steps at fractions j/(S+1) of the grid.
    std::vector<std::size_t> switch_steps;
    for (std::size_t j = 1; j <= opt.switch_times; ++j) {
      auto s = j * grid.steps() / (opt.switch_times + 1);
      switch_steps.push_back(std::max<std::size_t>(1, s));
    }
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = 0; b < elems.size(); ++b)
        for (std::size_t s : switch_steps) {
          ControlLaw law;
          law.id = next_id++;
          law.label = "switch[" + std::to_string(a) + "->" + std::to_string(b) +
                      "@" + std::to_string(s) + "]";
          law.pieces.push_back({0, elems[a]});
          law.pieces.push_back({s, elems[b]});
          laws.push_back(std::move(law));
        }
    return laws;
  }

  // RandomSwitch: deterministic schedules drawn from the seed.
  RngStream rng(opt.seed ^ 0x5ca1ab1eALL, 0xc0ffee);
  std::uint64_t draw = 0;
  for (std::size_t c = 0; c < opt.random_count; ++c) {
    const int n_pieces = 2 + static_cast<int>(rng.uniform(draw++) * 3.0);
    ControlLaw law;
    law.id = next_id++;
    law.label = "random[" + std::to_string(c) + "]";
    std::vector<std::size_t> starts{0};
    for (int p = 1; p < n_pieces; ++p)
      starts.push_back(static_cast<std::size_t>(
          rng.uniform(draw++) * static_cast<double>(grid.steps())));
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (std::size_t s : starts) {
      const auto pick = static_cast<std::size_t>(
          rng.uniform(draw++) * static_cast<double>(elems.size())) %
          elems.size();
      law.pieces.push_back({s, elems[pick]});
    }
    laws.push_back(std::move(law));
  }
  return laws;
}

}  // namespace nlexit
