#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "skirent/execute.hpp"
#include "skirent/generators.hpp"
#include "skirent/opt_table.hpp"
#include "skirent/plan.hpp"
#include "skirent/rational.hpp"

namespace skirent {

/// Cost-versus-optimum ratio at one true day count.
struct RatioReport {
  std::int64_t t = 0;
  double expected_cost = 0;
  Rational optval = 0;
  double ratio = 0;
  double opt_exponent = 0;                 // log_base of the rescaled optimum, diagnostic
  std::optional<Rational> exact_cost = {};  // deterministic runs carry the exact value
};

struct DetConfig {
  Rational lambda;  // [0, 1/2]; 0 selects the predict-and-commit variant
};
struct RandConfig {
  double delta = 0;
  double s = 0;
};
using AlgoConfig = std::variant<DetConfig, RandConfig>;

// ---- deterministic evaluation (exact) ------------------------------------

inline std::vector<Rational> det_cost_profile(const OptTable& table, std::int64_t t_pred,
                                              const Rational& lambda, std::int64_t t_max) {
  if (lambda == 0) {
    LambdaZeroPlan plan(t_pred, cheapest_option(table.instance()));
    return cost_profile(table, plan, t_max);
  }
  DetRunParams p = det_run_params(table, t_pred, lambda);
  DetPlan plan(lambda, p.k, p.budget_scale);
  return cost_profile(table, plan, t_max);
}

// ---- exact expectation over alpha -----------------------------------------

/// One alpha-interval on which the whole execution trace is constant.
struct Segment {
  double lo = 1, hi = 1;
  double prob = 0;
  double cost = 0;  // realized cost at the queried t
};

struct ExpectationBreakdown {
  std::vector<Segment> segments;
  double expected = 0;
};

/// Exact expected cost of the randomized algorithm, by integrating realized
/// trace costs over the alpha distribution. [1, delta) is partitioned at
/// every alpha where any step's schedule or the phase structure can change;
/// within each open segment the trace is constant, which is verified by
/// probing near both ends as well as the midpoint. Probabilities come from
/// the closed-form CDF ln(alpha)/ln(delta).
class RandExpectation {
 public:
  RandExpectation(const OptTable& table, std::int64_t t_pred, double delta, double s,
                  std::int64_t t_max)
      : table_(&table), t_pred_(t_pred), t_max_(t_max) {
    run_ = rand_run_params(table, t_pred, delta, s);
    build_breakpoints();
    integrate();
  }

  const RandRunParams& run() const { return run_; }

  double expected_cost(std::int64_t t) const {
    if (t < 0 || t > t_max_) throw std::invalid_argument("expected_cost: t out of range");
    return expected_[static_cast<std::size_t>(t)];
  }

  const std::vector<double>& expected_profile() const { return expected_; }

  ExpectationBreakdown breakdown(std::int64_t t) const {
    if (t < 0 || t > t_max_) throw std::invalid_argument("breakdown: t out of range");
    ExpectationBreakdown b;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      Segment seg;
      seg.lo = points_[i];
      seg.hi = points_[i + 1];
      seg.prob = probs_[i];
      seg.cost = profiles_[i][static_cast<std::size_t>(t)];
      b.segments.push_back(seg);
    }
    b.expected = expected_[static_cast<std::size_t>(t)];
    return b;
  }

 private:
  void build_breakpoints() {
    const double delta = run_.params.delta;
    const double log_delta = std::log(delta);
    std::vector<double> pts;

    // Budget crossings: alpha * delta^i * scale passes an optimal value v.
    std::vector<double> values;
    for (std::int64_t t = 1; t <= table_->built_days(); ++t) {
      double v = table_->optval_d(t);
      if (values.empty() || v != values.back()) values.push_back(v);
    }
    if (table_->buy_cost()) {
      double b = to_double(*table_->buy_cost());
      if (values.empty() || values.back() != b) values.push_back(b);
    }
    double max_v = values.back();
    auto i_cap = static_cast<std::int64_t>(
        std::ceil(std::log(std::max(max_v / run_.budget_scale, 1.0)) / log_delta)) + 2;
    for (double v : values) {
      for (std::int64_t i = 0; i <= i_cap; ++i) {
        double a = v / (std::pow(delta, static_cast<double>(i)) * run_.budget_scale);
        if (a > 1.0 && a < delta) pts.push_back(a);
        if (a <= 1.0) break;  // larger i only shrinks a
      }
    }
    // Phase-structure crossings: alpha = delta^(k - s - i), i = 0..k-1.
    for (std::int64_t i = 0; i < run_.params.k; ++i) {
      double a = std::exp((static_cast<double>(run_.params.k) - run_.params.s -
                           static_cast<double>(i)) * log_delta);
      if (a > 1.0 && a < delta) pts.push_back(a);
    }
    pts.push_back(1.0);
    pts.push_back(delta);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    points_ = std::move(pts);
  }

  ExecutionTrace<double> run_trace(double alpha) const {
    RandPlan plan(run_.params, AlphaDraw{alpha}, t_pred_, run_.budget_scale);
    return execute_plan(*table_, plan, t_max_);
  }

  void integrate() {
    const double log_delta = std::log(run_.params.delta);
    expected_.assign(static_cast<std::size_t>(t_max_) + 1, 0.0);
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      double lo = points_[i], hi = points_[i + 1];
      double prob = (std::log(hi) - std::log(lo)) / log_delta;
      auto trace = run_trace(std::sqrt(lo * hi));
      // Constancy probe: a differing trace near either end means the
      // breakpoint enumeration missed a crossing.
      double lo_in = lo * (1 + 1e-9), hi_in = hi * (1 - 1e-9);
      if (lo_in < hi_in) {
        if (run_trace(lo_in).purchases != trace.purchases ||
            run_trace(hi_in).purchases != trace.purchases)
          throw DefectError("exact expectation: trace not constant within a segment");
      }
      auto profile = profile_from_trace(*table_, trace, t_max_);
      for (std::size_t t = 0; t < expected_.size(); ++t) expected_[t] += prob * profile[t];
      probs_.push_back(prob);
      profiles_.push_back(std::move(profile));
    }
  }

  const OptTable* table_;
  std::int64_t t_pred_;
  std::int64_t t_max_;
  RandRunParams run_;
  std::vector<double> points_;
  std::vector<double> probs_;
  std::vector<std::vector<double>> profiles_;
  std::vector<double> expected_;
};

inline std::pair<double, ExpectationBreakdown> exact_expected_cost(const OptTable& table,
                                                                   std::int64_t t_pred,
                                                                   double delta, double s,
                                                                   std::int64_t t) {
  RandExpectation oracle(table, t_pred, delta, s, std::max<std::int64_t>(t, 1));
  return {oracle.expected_cost(t), oracle.breakdown(t)};
}

// ---- Monte-Carlo estimate ---------------------------------------------------

struct MonteCarloEstimate {
  double mean = 0;
  double stderr_ = 0;
};

/// Mean of n independent simulated runs; each sample owns a generator seeded
/// from (seed, index), so results do not depend on evaluation order.
inline MonteCarloEstimate monte_carlo_expected_cost(const OptTable& table, std::int64_t t_pred,
                                                    double delta, double s, std::int64_t t,
                                                    std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("monte carlo: need at least one sample");
  RandRunParams run = rand_run_params(table, t_pred, delta, s);
  double sum = 0, sumsq = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(i)));
    AlphaDraw alpha = sample_alpha(rng, delta);
    RandPlan plan(run.params, alpha, t_pred, run.budget_scale);
    double cost = execute_plan(table, plan, t).total_cost;
    sum += cost;
    sumsq += cost * cost;
  }
  MonteCarloEstimate est;
  est.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double var = (sumsq - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
    est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  return est;
}

// ---- ratio reports ----------------------------------------------------------

namespace detail {

inline double opt_exponent(const OptTable& table, std::int64_t t, std::int64_t t_pred,
                           double base, std::int64_t k) {
  if (t < 1) return 0;
  return static_cast<double>(k) +
         (std::log(table.optval_d(t)) - std::log(table.optval_d(t_pred))) / std::log(base);
}

}  // namespace detail

inline RatioReport make_report(const OptTable& table, std::int64_t t, double cost,
                               double exponent, std::optional<Rational> exact = {}) {
  RatioReport r;
  r.t = t;
  r.expected_cost = cost;
  r.optval = table.optval(std::max<std::int64_t>(t, 1));
  r.ratio = t == 0 ? 0 : cost / to_double(r.optval);
  r.opt_exponent = exponent;
  r.exact_cost = std::move(exact);
  return r;
}

/// Per-T reports over t_range plus the worst one. Deterministic configs are
/// simulated exactly; randomized configs use the exact expectation oracle.
inline std::vector<RatioReport> ratio_reports(const AlgoConfig& config, const OptTable& table,
                                              std::int64_t t_pred, std::int64_t t_lo,
                                              std::int64_t t_hi) {
  if (t_lo < 1 || t_hi > table.queryable_days() || t_lo > t_hi)
    throw std::invalid_argument("ratio_reports: bad t range");
  std::vector<RatioReport> out;
  if (const auto* det = std::get_if<DetConfig>(&config)) {
    auto profile = det_cost_profile(table, t_pred, det->lambda, t_hi);
    std::int64_t k = det->lambda == 0 ? 0 : det_run_params(table, t_pred, det->lambda).k;
    double base = det->lambda == 0 ? 2.0 : to_double(1 / det->lambda);
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
      const Rational& cost = profile[static_cast<std::size_t>(t)];
      out.push_back(make_report(table, t, to_double(cost),
                                detail::opt_exponent(table, t, t_pred, base, k), cost));
    }
  } else {
    const auto& rnd = std::get<RandConfig>(config);
    RandExpectation oracle(table, t_pred, rnd.delta, rnd.s, t_hi);
    for (std::int64_t t = t_lo; t <= t_hi; ++t)
      out.push_back(make_report(
          table, t, oracle.expected_cost(t),
          detail::opt_exponent(table, t, t_pred, rnd.delta, oracle.run().params.k)));
  }
  return out;
}

/// Report at the accurate-prediction point t = t_pred.
inline RatioReport consistency_ratio(const AlgoConfig& config, const OptTable& table,
                                     std::int64_t t_pred) {
  return ratio_reports(config, table, t_pred, t_pred, t_pred).front();
}

/// All reports over the range plus the ratio-maximizing one.
inline std::pair<RatioReport, std::vector<RatioReport>> robustness_ratio(
    const AlgoConfig& config, const OptTable& table, std::int64_t t_pred, std::int64_t t_lo,
    std::int64_t t_hi) {
  auto all = ratio_reports(config, table, t_pred, t_lo, t_hi);
  RatioReport worst = all.front();
  for (const auto& r : all)
    if (r.ratio > worst.ratio) worst = r;
  return {worst, all};
}

}  // namespace skirent
