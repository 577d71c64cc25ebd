#include "nlexit/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace nlexit {

namespace {

// Neumaier-compensated sum in index order; deterministic for a fixed input.
double compensated_sum(const std::vector<double>& v, bool skip_nonfinite,
                       std::uint64_t* used) {
  double sum = 0.0, comp = 0.0;
  std::uint64_t n = 0;
  for (double x : v) {
    if (skip_nonfinite && !std::isfinite(x)) continue;
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
    ++n;
  }
  if (used) *used = n;
  return sum + comp;
}

}  // namespace

LawStat reduce_values(const std::vector<double>& values, std::uint64_t law_id,
                      const std::string& label) {
  LawStat s;
  s.law_id = law_id;
  s.label = label;
  std::uint64_t used = 0;
  const double total = compensated_sum(values, true, &used);
  s.n = used;
  s.excluded = values.size() - used;
  if (used == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.std_error = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = total / static_cast<double>(used);
  if (used >= 2) {
    double ss = 0.0, comp = 0.0;
    for (double x : values) {
      if (!std::isfinite(x)) continue;
      const double d = (x - s.mean) * (x - s.mean);
      const double t = ss + d;
      comp += (std::fabs(ss) >= d) ? (ss - t) + d : (d - t) + ss;
      ss = t;
    }
    const double var = (ss + comp) / static_cast<double>(used - 1);
    s.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(used));
  }
  return s;
}

namespace detail {

std::pair<double, std::uint64_t> max_mean(const std::vector<LawStat>& stats) {
  bool have = false;
  double best = 0.0;
  std::uint64_t best_id = 0;
  for (const auto& s : stats) {
    if (!std::isfinite(s.mean)) continue;
    if (!have || s.mean > best || (s.mean == best && s.law_id < best_id)) {
      have = true;
      best = s.mean;
      best_id = s.law_id;
    }
  }
  if (!have) throw Error("estimator: no law produced a finite mean");
  return {best, best_id};
}

}  // namespace detail

namespace {

nlohmann::json stats_json(const std::vector<LawStat>& per_law) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : per_law)
    a.push_back({{"law_id", s.law_id},
                 {"label", s.label},
                 {"mean", s.mean},
                 {"std_error", s.std_error},
                 {"n", s.n},
                 {"excluded", s.excluded}});
  return a;
}

double argmax_se(const std::vector<LawStat>& per_law, std::uint64_t argmax) {
  for (const auto& s : per_law)
    if (s.law_id == argmax) return s.std_error;
  return 0.0;
}

}  // namespace

double UEEstimate::argmax_std_error() const {
  return argmax_se(per_law, argmax_law);
}

double CapacityEstimate::argmax_std_error() const {
  return argmax_se(per_law, argmax_law);
}

nlohmann::json UEEstimate::to_json() const {
  return {{"value", value},
          {"argmax_law", argmax_law},
          {"per_law", stats_json(per_law)},
          {"surrogate_note", kSurrogateNote}};
}

nlohmann::json CapacityEstimate::to_json() const {
  return {{"value", value},
          {"argmax_law", argmax_law},
          {"per_law", stats_json(per_law)},
          {"surrogate_note", kSurrogateNote}};
}

nlohmann::json MonotoneReport::to_json() const {
  nlohmann::json ests = nlohmann::json::array();
  for (const auto& e : estimates) ests.push_back(e.to_json());
  nlohmann::json j{{"estimates", ests},
                   {"defects", defects},
                   {"defect_within_noise", defect_within_noise},
                   {"passed", passed}};
  if (limit_estimate) {
    j["limit_estimate"] = limit_estimate->to_json();
    j["limit_gap"] = *limit_gap;
    j["limit_within_noise"] = limit_within_noise;
  }
  return j;
}

MonotoneReport monotone_convergence_probe(
    const std::vector<EnsembleSpec>& family,
    const std::vector<std::function<double(const SemimartingaleRecord&)>>& fs,
    const std::function<double(const SemimartingaleRecord&)>& limit,
    const EvalOptions& opt) {
  if (fs.size() < 2)
    throw ArgumentError("monotone_convergence_probe: need at least two functionals");
  if (family.empty()) throw ArgumentError("estimator: empty family");

  const std::size_t m = fs.size();
  MonotoneReport rep;

  // One pass per law: evaluate all functionals on each sampled path, checking
  // pointwise monotonicity as we go.
  std::vector<std::vector<LawStat>> stats(m + (limit ? 1 : 0));
  std::atomic<bool> monotone{true};
  for (const auto& e : family) {
    const PreparedEnsemble prep(e);
    std::vector<std::vector<double>> values(m + (limit ? 1 : 0));
    for (auto& v : values)
      v.assign(e.n_paths, std::numeric_limits<double>::quiet_NaN());
    parallel_for(e.n_paths, opt.threads, [&](std::uint64_t b, std::uint64_t en) {
      SemimartingaleRecord rec{e.grid, e.dim};
      for (std::uint64_t i = b; i < en; ++i) {
        materialize_record_into(prep, i, rec);
        if (rec.failed) continue;
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < m; ++f) {
          const double v = fs[f](rec);
          values[f][i] = v;
          if (v > prev + 1e-12) monotone.store(false, std::memory_order_relaxed);
          prev = v;
        }
        if (limit) {
          const double v = limit(rec);
          values[m][i] = v;
          if (v > prev + 1e-12) monotone.store(false, std::memory_order_relaxed);
        }
      }
    });
    if (!monotone.load())
      throw ArgumentError(
          "monotone_convergence_probe: functionals are not pointwise decreasing");
    for (std::size_t f = 0; f < values.size(); ++f)
      stats[f].push_back(reduce_values(values[f], e.law.id, e.law.label));
  }

  for (std::size_t f = 0; f < m; ++f) {
    UEEstimate est;
    est.per_law = stats[f];
    std::tie(est.value, est.argmax_law) = detail::max_mean(est.per_law);
    rep.estimates.push_back(std::move(est));
  }
  bool ok = true;
  for (std::size_t f = 0; f + 1 < m; ++f) {
    const double defect =
        std::max(0.0, rep.estimates[f + 1].value - rep.estimates[f].value);
    const double noise = 3.0 * (rep.estimates[f].argmax_std_error() +
                                rep.estimates[f + 1].argmax_std_error());
    rep.defects.push_back(defect);
    rep.defect_within_noise.push_back(defect <= noise);
    ok = ok && defect <= noise;
  }
  if (limit) {
    UEEstimate est;
    est.per_law = stats[m];
    std::tie(est.value, est.argmax_law) = detail::max_mean(est.per_law);
    rep.limit_gap = std::fabs(rep.estimates.back().value - est.value);
    const double noise = 3.0 * (rep.estimates.back().argmax_std_error() +
                                est.argmax_std_error());
    rep.limit_within_noise = *rep.limit_gap <= std::max(noise, 1e-12);
    ok = ok && rep.limit_within_noise;
    rep.limit_estimate = std::move(est);
  }
  rep.passed = ok;
  return rep;
}

}  // namespace nlexit
