#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skirent/instance.hpp"
#include "skirent/rational.hpp"

namespace skirent {

/// Relative tolerance used when a floating-point budget is compared against
/// exact optimal values. Instance generators keep distinct optimal values
/// separated by more than 1e-9 relative, so this never flips a comparison.
inline constexpr double kBudgetTol = 1e-12;

/// An ordered sequence of rental options, its coverage, and its exact cost.
struct Schedule {
  std::vector<int> options;
  std::int64_t covered_days = 0;  // kForeverDays once a buy is included
  Rational total_cost = 0;

  bool empty() const { return options.empty(); }
};

/// Dynamic-programming table of offline optima. optval(t) is the cheapest
/// cost of any option sequence covering t days; schedules are reconstructed
/// from per-day backpointers (ties broken toward the smallest option index).
/// Immutable after construction and safe to share across threads.
class OptTable {
 public:
  /// Builds the table for a normalized instance. The table always reaches
  /// `min_days`; when the menu has no buy option it keeps growing until
  /// optval exceeds `headroom * optval(min_days)` so that every budget the
  /// algorithms can pose stays answerable. With a buy option, growth stops
  /// at the first day whose optimum equals the buy cost.
  static OptTable build(const Instance& inst, std::int64_t min_days = 0,
                        const Rational& headroom = Rational(4096)) {
    inst.validate();
    if (min_days <= 0) min_days = inst.horizon;
    min_days = std::max(min_days, inst.horizon);

    OptTable table;
    table.inst_ = inst;
    table.horizon_ = std::max(inst.horizon, min_days);
    const int n = static_cast<int>(inst.options.size());
    for (int i = 0; i < n; ++i) {
      if (!inst.options[i].infinite()) continue;
      if (!table.buy_cost_ || inst.options[i].cost < *table.buy_cost_) {
        table.buy_cost_ = inst.options[i].cost;
        table.buy_choice_ = i;
      }
    }

    table.optval_.push_back(Rational(0));
    table.optval_d_.push_back(0.0);
    table.choice_.push_back(-1);

    Rational cap;  // meaningful once t reaches min_days
    for (std::int64_t t = 1;; ++t) {
      Rational best;
      int best_opt = -1;
      for (int i = 0; i < n; ++i) {
        const auto& opt = inst.options[i];
        Rational cand = opt.infinite()
                            ? opt.cost
                            : opt.cost + table.optval_[static_cast<std::size_t>(
                                  std::max<std::int64_t>(t - opt.days, 0))];
        if (best_opt < 0 || cand < best) {
          best = cand;
          best_opt = i;
        }
      }
      table.optval_.push_back(best);
      table.optval_d_.push_back(to_double(best));
      table.choice_.push_back(best_opt);

      bool at_cut = table.buy_cost_ && best == *table.buy_cost_;
      if (at_cut && table.cut_ < 0) table.cut_ = t;
      if (t >= min_days) {
        if (at_cut) break;
        if (cap == 0) cap = headroom * std::max(table.optval_.back(), Rational(1));
        if (best > cap) break;
      }
      if (t > (std::int64_t{1} << 22))
        throw DefectError("opt table: growth limit hit; instance degenerate?");
    }
    return table;
  }

  const Instance& instance() const { return inst_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t built_days() const { return static_cast<std::int64_t>(optval_.size()) - 1; }

  /// Largest t for which optval/opt_schedule may be queried.
  std::int64_t queryable_days() const {
    return buy_cost_ ? std::max(horizon_, built_days()) : built_days();
  }

  const std::optional<Rational>& buy_cost() const { return buy_cost_; }
  int buy_choice() const { return buy_choice_; }

  Rational optval(std::int64_t t) const {
    check_day(t);
    if (t >= static_cast<std::int64_t>(optval_.size())) return *buy_cost_;
    return optval_[static_cast<std::size_t>(t)];
  }

  double optval_d(std::int64_t t) const { return to_double(optval(t)); }

  /// Option index realizing optval(t), t >= 1.
  int choice(std::int64_t t) const {
    check_day(t);
    if (t < 1) throw std::invalid_argument("choice: t must be >= 1");
    if (t >= static_cast<std::int64_t>(choice_.size())) return buy_choice_;
    return choice_[static_cast<std::size_t>(t)];
  }

  /// Walks the reconstructed optimal schedule for coverage target `t`
  /// (kForeverDays for the buy schedule), invoking f(option_index) per
  /// purchase in order. f returns false to stop early.
  template <class F>
  void walk_schedule(std::int64_t t, F&& f) const {
    if (t == kForeverDays) {
      if (buy_choice_ < 0) throw DefectError("walk_schedule: no buy option");
      f(buy_choice_);
      return;
    }
    check_day(t);
    while (t > 0) {
      if (t >= static_cast<std::int64_t>(choice_.size())) {
        f(buy_choice_);
        return;
      }
      int i = choice_[static_cast<std::size_t>(t)];
      if (!f(i)) return;
      const auto& opt = inst_.options[static_cast<std::size_t>(i)];
      if (opt.infinite()) return;
      t = std::max<std::int64_t>(t - opt.days, 0);
    }
  }

  Schedule opt_schedule(std::int64_t t) const {
    Schedule s;
    if (t == 0) return s;
    walk_schedule(t, [&](int i) {
      s.options.push_back(i);
      s.total_cost += inst_.options[static_cast<std::size_t>(i)].cost;
      s.covered_days = add_days(s.covered_days, inst_.options[static_cast<std::size_t>(i)].days);
      return true;
    });
    return s;
  }

  /// t* = max{t : optval(t) <= v}: 0 when even one day is unaffordable,
  /// kForeverDays when the budget covers buying.
  std::int64_t bopt_days(const Rational& v) const {
    if (v < 0) throw std::invalid_argument("bopt: negative budget");
    if (buy_cost_ && *buy_cost_ <= v) return kForeverDays;
    return last_affordable([&](std::size_t t) { return optval_[t] <= v; });
  }

  /// Floating-budget variant; optval(t) <= v * (1 + kBudgetTol).
  std::int64_t bopt_days(double v) const {
    if (v < 0) throw std::invalid_argument("bopt: negative budget");
    const double limit = v * (1 + kBudgetTol);
    if (buy_cost_ && to_double(*buy_cost_) <= limit) return kForeverDays;
    return last_affordable([&](std::size_t t) { return optval_d_[t] <= limit; });
  }

  template <class Money>
  Schedule bopt(const Money& v) const {
    std::int64_t t = bopt_days(v);
    return opt_schedule(t);
  }

 private:
  OptTable() = default;

  void check_day(std::int64_t t) const {
    if (t < 0) throw std::invalid_argument("day count must be >= 0");
    if (t > queryable_days())
      throw std::invalid_argument("day count exceeds table horizon");
    if (!buy_cost_ && t >= static_cast<std::int64_t>(optval_.size()))
      throw DefectError("opt table: query beyond built range");
  }

  template <class Affordable>
  std::int64_t last_affordable(Affordable&& ok) const {
    std::size_t last = optval_.size() - 1;
    if (!ok(std::size_t{1})) return 0;
    if (ok(last)) {
      if (!buy_cost_) throw DefectError("bopt: budget beyond built table");
      // optval_[cut] equals the buy cost, already handled by the caller.
      return static_cast<std::int64_t>(last);
    }
    std::size_t lo = 1, hi = last;  // ok(lo), !ok(hi)
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      (ok(mid) ? lo : hi) = mid;
    }
    return static_cast<std::int64_t>(lo);
  }

  Instance inst_;
  std::int64_t horizon_ = 0;
  std::vector<Rational> optval_;
  std::vector<double> optval_d_;
  std::vector<int> choice_;
  std::optional<Rational> buy_cost_;
  int buy_choice_ = -1;
  std::int64_t cut_ = -1;
};

inline OptTable build_opt_table(const Instance& inst, std::int64_t min_days = 0) {
  return OptTable::build(inst, min_days);
}

namespace detail {

inline void require_normalized(const Instance& inst) {
  for (const auto& opt : inst.options)
    if (opt.cost < 1) throw std::invalid_argument("rescale: instance must be normalized first");
}

}  // namespace detail

// ---- deterministic-algorithm rescaling ----------------------------------

/// k and the budget multiplier that let the deterministic algorithm run on
/// the *unscaled* table: posing budget_scale * (1/lambda)^i against the
/// original optima is exactly equivalent to posing (1/lambda)^i against the
/// instance whose costs were multiplied by (1/lambda)^k / optval(t_pred).
struct DetRunParams {
  std::int64_t k = 0;
  Rational budget_scale = 1;  // optval(t_pred) / (1/lambda)^k, in (0, 1]
};

inline DetRunParams det_run_params(const OptTable& table, std::int64_t t_pred,
                                   const Rational& lambda) {
  if (lambda <= 0 || lambda > Rational(1, 2))
    throw std::invalid_argument("deterministic algorithm: lambda must lie in (0, 1/2]");
  Rational opt = table.optval(t_pred);
  if (opt < 1) throw std::invalid_argument("rescale: optval(t_pred) must be >= 1");
  DetRunParams p;
  Rational inv = 1 / lambda;
  p.k = ceil_log(inv, opt);
  p.budget_scale = opt / pow_rat(inv, p.k);
  return p;
}

/// Multiplies all costs so that optval(t_pred) becomes exactly (1/lambda)^k
/// with k = ceil(log_{1/lambda} optval(t_pred)). Exact rational arithmetic.
inline std::pair<Instance, std::int64_t> rescale_for_det(const Instance& inst,
                                                         std::int64_t t_pred,
                                                         const Rational& lambda) {
  detail::require_normalized(inst);
  OptTable table = OptTable::build(inst, std::max(t_pred, inst.horizon));
  DetRunParams p = det_run_params(table, t_pred, lambda);
  Instance out = inst;
  for (auto& opt : out.options) opt.cost /= p.budget_scale;
  return {std::move(out), p.k};
}

// ---- randomized-algorithm rescaling --------------------------------------

/// Parameters of the randomized algorithm after the power-of-delta reduction.
struct RandParams {
  double delta = 0;
  double s = 0;
  std::int64_t k = 0;  // optval(t_pred) ~ delta^k, k >= s + 2

  void validate() const {
    if (delta < std::exp(1.0) * (1 - 1e-12))
      throw std::invalid_argument("randomized algorithm: delta must be >= e");
    if (s < 0) throw std::invalid_argument("randomized algorithm: s must be >= 0");
    if (static_cast<double>(k) < s + 2)
      throw std::invalid_argument("randomized algorithm: k must be >= s + 2");
  }
};

struct RandRunParams {
  RandParams params;
  double budget_scale = 1;  // optval(t_pred) / delta^k, at most 1 (+epsilon)
};

/// Snap tolerance for recognizing optval(t_pred) as an exact power of delta,
/// so re-running the reduction on an already-scaled instance keeps k stable.
inline constexpr double kPowerSnapTol = 5e-13;

inline RandRunParams rand_run_params(const OptTable& table, std::int64_t t_pred, double delta,
                                     double s) {
  RandParams p{delta, s, 0};
  if (delta < std::exp(1.0) * (1 - 1e-12))
    throw std::invalid_argument("randomized algorithm: delta must be >= e");
  if (s < 0) throw std::invalid_argument("randomized algorithm: s must be >= 0");
  double opt = table.optval_d(t_pred);
  if (opt < 1 - 1e-12) throw std::invalid_argument("rescale: optval(t_pred) must be >= 1");
  const double log_opt = std::log(opt) / std::log(delta);
  const auto nearest = static_cast<std::int64_t>(std::llround(log_opt));
  bool snapped = std::abs(log_opt - static_cast<double>(nearest)) <= kPowerSnapTol;
  std::int64_t k_log = snapped ? nearest : static_cast<std::int64_t>(std::ceil(log_opt));
  std::int64_t k_min = static_cast<std::int64_t>(std::ceil(s)) + 2;
  RandRunParams out;
  out.params = RandParams{delta, s, std::max(k_log, k_min)};
  out.budget_scale = (snapped && out.params.k == nearest)
                         ? 1.0
                         : std::exp((log_opt - static_cast<double>(out.params.k)) * std::log(delta));
  return out;
}

/// Multiplies all costs so that optval(t_pred) becomes delta^k within 1e-12
/// relative, k = max(ceil(s) + 2, ceil(log_delta optval(t_pred))). The
/// multiplier is the exact rational value of the double-precision factor.
inline std::pair<Instance, std::int64_t> rescale_for_rand(const Instance& inst,
                                                          std::int64_t t_pred, double delta,
                                                          double s) {
  detail::require_normalized(inst);
  OptTable table = OptTable::build(inst, std::max(t_pred, inst.horizon));
  RandRunParams p = rand_run_params(table, t_pred, delta, s);
  Instance out = inst;
  Rational mult(1);
  if (p.budget_scale != 1.0) mult = Rational(1.0 / p.budget_scale);
  for (auto& opt : out.options) opt.cost *= mult;
  return {std::move(out), p.params.k};
}

}  // namespace skirent
