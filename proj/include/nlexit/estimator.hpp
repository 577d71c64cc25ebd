#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nlexit/exit_time.hpp"
#include "nlexit/parallel.hpp"
#include "nlexit/simulate.hpp"

#include "json.hpp"

namespace nlexit {

struct EvalOptions {
  int threads = 1;
  double exclusion_tolerance = 1e-3;  // max tolerated fraction of bad paths
};

struct LawStat {
  std::uint64_t law_id = 0;
  std::string label;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t excluded = 0;
};

/// Monte-Carlo estimate of the upper expectation sup_P E_P[X] over the
/// finite control surrogate. The max over finitely many simulated laws is a
/// statistical lower bound of the sup over the full family; every report
/// carries that flag.
struct UEEstimate {
  double value = 0.0;
  std::uint64_t argmax_law = 0;  // ties broken by lowest law id
  std::vector<LawStat> per_law;
  static constexpr const char* kSurrogateNote = "finite-control lower bound";

  double argmax_std_error() const;
  nlohmann::json to_json() const;
};

/// Same shape for the upper capacity sup_P P(A); means are frequencies.
struct CapacityEstimate {
  double value = 0.0;
  std::uint64_t argmax_law = 0;
  std::vector<LawStat> per_law;
  static constexpr const char* kSurrogateNote = "finite-control lower bound";

  double argmax_std_error() const;
  nlohmann::json to_json() const;
};

/// Deterministic mean / standard error over values in index order
/// (Neumaier-compensated sum, two-pass variance). NaN/Inf entries are
/// excluded and counted.
LawStat reduce_values(const std::vector<double>& values, std::uint64_t law_id,
                      const std::string& label);

namespace detail {

template <class PathEval>
std::vector<LawStat> per_law_stats(const std::vector<EnsembleSpec>& family,
                                   PathEval&& eval, const EvalOptions& opt) {
  if (family.empty()) throw ArgumentError("estimator: empty family");
  std::vector<LawStat> stats;
  std::vector<double> values;
  for (const auto& e : family) {
    if (e.n_paths == 0) throw ArgumentError("estimator: ensemble with no paths");
    const PreparedEnsemble prep(e);
    values.assign(e.n_paths, std::numeric_limits<double>::quiet_NaN());
    parallel_for(e.n_paths, opt.threads,
                 [&](std::uint64_t b, std::uint64_t en) {
                   for (std::uint64_t i = b; i < en; ++i)
                     values[i] = eval(prep, i);
                 });
    LawStat s = reduce_values(values, e.law.id, e.law.label);
    if (static_cast<double>(s.excluded) >
        opt.exclusion_tolerance * static_cast<double>(e.n_paths))
      throw Error("estimator: excluded path fraction exceeds tolerance for law " +
                  std::to_string(e.law.id));
    stats.push_back(std::move(s));
  }
  return stats;
}

std::pair<double, std::uint64_t> max_mean(const std::vector<LawStat>& stats);

}  // namespace detail

/// Ê[f] over the family: per-law sample means, value = max mean.
/// PathEval: double(const PreparedEnsemble&, std::uint64_t path_index);
/// non-finite results count as exclusions.
template <class PathEval>
UEEstimate upper_expectation_eval(const std::vector<EnsembleSpec>& family,
                                  PathEval&& eval, const EvalOptions& opt = {}) {
  UEEstimate est;
  est.per_law =
      detail::per_law_stats(family, std::forward<PathEval>(eval), opt);
  std::tie(est.value, est.argmax_law) = detail::max_mean(est.per_law);
  return est;
}

/// c(A) over the family: indicator version of upper_expectation_eval.
/// PathPred: int/bool/double(const PreparedEnsemble&, std::uint64_t).
template <class PathPred>
CapacityEstimate upper_capacity_eval(const std::vector<EnsembleSpec>& family,
                                     PathPred&& pred,
                                     const EvalOptions& opt = {}) {
  CapacityEstimate est;
  auto indicator = [&pred](const PreparedEnsemble& prep, std::uint64_t i) {
    const double v = static_cast<double>(pred(prep, i));
    if (!std::isfinite(v)) return v;
    return v != 0.0 ? 1.0 : 0.0;
  };
  est.per_law = detail::per_law_stats(family, indicator, opt);
  std::tie(est.value, est.argmax_law) = detail::max_mean(est.per_law);
  return est;
}

/// Adapts a functional of the full ledger to a per-path evaluator;
/// materializes into a thread-local scratch record. Failed paths map to NaN
/// (excluded upstream).
template <class F>
auto record_functional(F f) {
  return [f](const PreparedEnsemble& prep, std::uint64_t i) -> double {
    thread_local SemimartingaleRecord rec{TimeGrid(1.0, 1), 1};
    materialize_record_into(prep, i, rec);
    if (rec.failed) return std::numeric_limits<double>::quiet_NaN();
    return f(rec);
  };
}

template <class F>
UEEstimate upper_expectation(const std::vector<EnsembleSpec>& family, F&& f,
                             const EvalOptions& opt = {}) {
  return upper_expectation_eval(family, record_functional(std::forward<F>(f)),
                                opt);
}

template <class Pred>
CapacityEstimate upper_capacity(const std::vector<EnsembleSpec>& family,
                                Pred&& pred, const EvalOptions& opt = {}) {
  auto f = [pred](const SemimartingaleRecord& r) -> double {
    return pred(r) ? 1.0 : 0.0;
  };
  CapacityEstimate est;
  est.per_law = detail::per_law_stats(family, record_functional(f), opt);
  std::tie(est.value, est.argmax_law) = detail::max_mean(est.per_law);
  return est;
}

/// Fast path for exit-time functionals: streams each path and stops once the
/// closure is left; g maps the per-path ExitReport to the value.
template <class G>
auto exit_functional(const DomainSpec& q, G g) {
  return [&q, g](const PreparedEnsemble& prep, std::uint64_t i) -> double {
    bool failed = false;
    const ExitReport er = scan_exit(prep, i, q, &failed);
    if (failed) return std::numeric_limits<double>::quiet_NaN();
    return g(er);
  };
}

// ---- monotone convergence probe --------------------------------------------

struct MonotoneReport {
  std::vector<UEEstimate> estimates;  // one per functional, in order
  std::vector<double> defects;        // max(0, est_{n+1} - est_n)
  std::vector<bool> defect_within_noise;
  std::optional<UEEstimate> limit_estimate;
  std::optional<double> limit_gap;  // |est_last - est_limit|
  bool limit_within_noise = true;
  bool passed = false;

  nlohmann::json to_json() const;
};

/// Checks that the supplied functionals decrease pointwise on every sampled
/// path (violation -> ArgumentError), reports the estimate sequence with its
/// monotonicity defects (contract: within 3 combined standard errors), and
/// optionally compares the tail against a directly estimated limit.
MonotoneReport monotone_convergence_probe(
    const std::vector<EnsembleSpec>& family,
    const std::vector<std::function<double(const SemimartingaleRecord&)>>& fs,
    const std::function<double(const SemimartingaleRecord&)>& limit = nullptr,
    const EvalOptions& opt = {});

}  // namespace nlexit
