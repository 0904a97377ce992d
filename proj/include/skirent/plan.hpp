#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "skirent/opt_table.hpp"
#include "skirent/rational.hpp"

namespace skirent {

enum class Phase { first, second, third };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::first: return "first";
    case Phase::second: return "second";
    case Phase::third: return "third";
  }
  return "?";
}

enum class StepKind {
  budget,       // append the best schedule affordable within `budget`
  opt_pred,     // append the optimal schedule for the predicted day count
  fixed_option  // append one specific option
};

template <class Money>
struct PlanStep {
  Phase phase = Phase::first;
  std::int64_t iter = 0;
  StepKind kind = StepKind::budget;
  Money budget{};
  int option = -1;
};

// ---- deterministic algorithm ---------------------------------------------

/// Iteration i poses the budget scale * (1/lambda)^i. With scale =
/// optval(t_pred) / (1/lambda)^k this is the rescaled algorithm expressed in
/// original cost units; budgets are exact rationals throughout.
class DetPlan {
 public:
  using Money = Rational;

  DetPlan(const Rational& lambda, std::int64_t k, Rational budget_scale = 1)
      : inv_lambda_(0), k_(k), scale_(std::move(budget_scale)) {
    if (lambda <= 0 || lambda > Rational(1, 2))
      throw std::invalid_argument("det plan: lambda must lie in (0, 1/2] (use the lambda=0 variant)");
    if (k < 0) throw std::invalid_argument("det plan: k must be >= 0");
    if (scale_ <= 0) throw std::invalid_argument("det plan: budget scale must be positive");
    inv_lambda_ = 1 / lambda;
  }

  PlanStep<Rational> step(std::int64_t n) const {
    return {Phase::first, n, StepKind::budget, scale_ * pow_rat(inv_lambda_, n), -1};
  }

  std::int64_t max_steps(const OptTable& table, std::int64_t t) const {
    double top = std::max(1.0, table.optval_d(std::min(std::max<std::int64_t>(t, 1),
                                                       table.queryable_days())));
    double extra = std::log(top) / std::log(to_double(inv_lambda_));
    return 10 * (k_ + static_cast<std::int64_t>(std::ceil(std::max(0.0, extra))) + 2);
  }

  const Rational& growth_factor() const { return inv_lambda_; }
  std::int64_t k() const { return k_; }

 private:
  Rational inv_lambda_;
  std::int64_t k_;
  Rational scale_;
};

/// The lambda = 0 variant: append the predicted optimum up front, then fall
/// back to the cheapest single option forever. 1-consistent; no robustness
/// guarantee is claimed, so any total fallback works and this one keeps
/// every finite-horizon trace finite.
class LambdaZeroPlan {
 public:
  using Money = Rational;

  LambdaZeroPlan(std::int64_t t_pred, int fallback_option)
      : t_pred_(t_pred), fallback_(fallback_option) {
    if (t_pred < 1) throw std::invalid_argument("lambda-zero plan: prediction must be >= 1");
    if (fallback_option < 0) throw std::invalid_argument("lambda-zero plan: bad fallback option");
  }

  PlanStep<Rational> step(std::int64_t n) const {
    if (n == 0) return {Phase::first, 0, StepKind::opt_pred, Rational(0), -1};
    return {Phase::first, n, StepKind::fixed_option, Rational(0), fallback_};
  }

  std::int64_t max_steps(const OptTable&, std::int64_t t) const { return t + 3; }

  std::int64_t t_pred() const { return t_pred_; }

 private:
  std::int64_t t_pred_;
  int fallback_;
};

/// Cheapest option in the menu (ties to the smallest index).
inline int cheapest_option(const Instance& inst) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(inst.options.size()); ++i)
    if (inst.options[static_cast<std::size_t>(i)].cost <
        inst.options[static_cast<std::size_t>(best)].cost)
      best = i;
  return best;
}

// ---- randomized algorithm -------------------------------------------------

/// alpha in [1, delta), drawn from the density 1 / (alpha ln delta).
struct AlphaDraw {
  double value = 1;
};

/// Inverse-CDF map: alpha = delta^u for u uniform on [0, 1).
inline AlphaDraw alpha_from_uniform(double u, double delta) {
  double a = std::exp(u * std::log(delta));
  a = std::min(std::max(a, 1.0), std::nextafter(delta, 1.0));
  return {a};
}

/// Reproducible across platforms: uses the raw mt19937_64 stream, not
/// std::uniform_real_distribution.
inline AlphaDraw sample_alpha(std::mt19937_64& rng, double delta) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return alpha_from_uniform(u, delta);
}

/// Three-phase randomized plan. First phase runs iterations 0..k-1 posing
/// budgets alpha * delta^i while alpha * delta^i < delta^(k-s); crossing the
/// threshold jumps to the second phase (append the predicted optimum),
/// except that iteration k-1 jumps straight to the third phase after
/// appending. The third phase poses alpha * delta^i for i = k, k+1, ...
/// Budgets carry `budget_scale` so the plan can run in original cost units.
class RandPlan {
 public:
  using Money = double;

  RandPlan(const RandParams& params, AlphaDraw alpha, std::int64_t t_pred,
           double budget_scale = 1.0)
      : p_(params), alpha_(alpha.value), t_pred_(t_pred), scale_(budget_scale) {
    p_.validate();
    if (!(alpha_ >= 1.0) || !(alpha_ < p_.delta))
      throw std::invalid_argument("rand plan: alpha must lie in [1, delta)");
    if (t_pred < 1) throw std::invalid_argument("rand plan: prediction must be >= 1");
    // First phase-two entry: smallest i in [0, k-1] with
    // alpha * delta^i >= delta^(k-s), i.e. log_delta(alpha) + i >= k - s.
    // Comparison kept in log space so large k cannot overflow.
    const double alpha_log = std::log(alpha_) / std::log(p_.delta);
    phase_two_step_ = p_.k;  // sentinel: never entered
    for (std::int64_t i = 0; i < p_.k; ++i) {
      if (alpha_log + static_cast<double>(i) >= static_cast<double>(p_.k) - p_.s) {
        phase_two_step_ = i;
        break;
      }
    }
  }

  PlanStep<double> step(std::int64_t n) const {
    if (n < phase_two_step_) return make_budget_step(Phase::first, n);
    if (n == phase_two_step_ && phase_two_step_ < p_.k)
      return {Phase::second, -1, StepKind::opt_pred, 0.0, -1};
    std::int64_t i = phase_two_step_ < p_.k ? p_.k + (n - phase_two_step_ - 1) : n;
    return make_budget_step(Phase::third, i);
  }

  std::int64_t max_steps(const OptTable& table, std::int64_t t) const {
    double top = std::max(1.0, table.optval_d(std::min(std::max<std::int64_t>(t, 1),
                                                       table.queryable_days())));
    double extra = std::log(top) / std::log(p_.delta);
    return 10 * (p_.k + static_cast<std::int64_t>(std::ceil(std::max(0.0, extra))) + 2);
  }

  /// Plan position of the second-phase step, or k when it is never entered.
  std::int64_t phase_two_step() const { return phase_two_step_; }
  bool enters_phase_two() const { return phase_two_step_ < p_.k; }
  const RandParams& params() const { return p_; }
  double alpha() const { return alpha_; }
  std::int64_t t_pred() const { return t_pred_; }

 private:
  PlanStep<double> make_budget_step(Phase phase, std::int64_t i) const {
    double budget = alpha_ * std::pow(p_.delta, static_cast<double>(i)) * scale_;
    return {phase, i, StepKind::budget, budget, -1};
  }

  RandParams p_;
  double alpha_;
  std::int64_t t_pred_;
  double scale_;
  std::int64_t phase_two_step_;
};

}  // namespace skirent
