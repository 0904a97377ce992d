#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "skirent/opt_table.hpp"
#include "skirent/plan.hpp"
#include "skirent/rational.hpp"

namespace skirent {

template <class Money>
struct Purchase {
  std::int64_t step = 0;  // plan position
  Phase phase = Phase::first;
  std::int64_t iter = 0;
  int option = -1;
  std::int64_t day = 0;  // first day the purchase covers
  Money cost{};

  friend bool operator==(const Purchase&, const Purchase&) = default;
};

template <class Money>
struct ExecutionTrace {
  std::vector<Purchase<Money>> purchases;
  Money total_cost{};
  std::int64_t covered_through = 0;
  std::int64_t halted_at_step = 0;  // plan steps consumed
};

namespace detail {

template <class Money>
Money money_cast(const Rational& r) {
  if constexpr (std::is_same_v<Money, Rational>)
    return r;
  else
    return to_double(r);
}

}  // namespace detail

/// Runs `plan` against `table` until the purchased options cover T days.
/// Options are purchased one at a time on the first uncovered day, so a halt
/// may cut a step's schedule short; empty schedules consume their step. A
/// well-formed plan always reaches coverage; the step cap only guards
/// against defects.
template <class PlanT>
ExecutionTrace<typename PlanT::Money> execute_plan(const OptTable& table, const PlanT& plan,
                                                   std::int64_t t) {
  using Money = typename PlanT::Money;
  if (t < 0) throw std::invalid_argument("execute_plan: t must be >= 0");
  if (t > table.queryable_days())
    throw std::invalid_argument("execute_plan: t exceeds table horizon");

  ExecutionTrace<Money> trace;
  std::int64_t covered = 0;
  const std::int64_t cap = plan.max_steps(table, t);
  const auto& options = table.instance().options;

  for (std::int64_t n = 0;; ++n) {
    if (covered >= t) {
      trace.covered_through = covered;
      trace.halted_at_step = n;
      return trace;
    }
    if (n > cap) break;
    auto step = plan.step(n);
    auto buy = [&](int opt_idx) {
      if (covered >= t) return false;
      const auto& opt = options[static_cast<std::size_t>(opt_idx)];
      trace.purchases.push_back(
          {n, step.phase, step.iter, opt_idx, covered + 1, detail::money_cast<Money>(opt.cost)});
      trace.total_cost += trace.purchases.back().cost;
      covered = add_days(covered, opt.days);
      return true;
    };
    switch (step.kind) {
      case StepKind::budget: {
        std::int64_t target = table.bopt_days(step.budget);
        if (target == 0) break;
        table.walk_schedule(target, buy);
        break;
      }
      case StepKind::opt_pred: {
        if constexpr (requires { plan.t_pred(); }) {
          table.walk_schedule(plan.t_pred(), buy);
        } else {
          throw DefectError("execute_plan: plan emitted opt_pred without a prediction");
        }
        break;
      }
      case StepKind::fixed_option:
        buy(step.option);
        break;
    }
  }
  throw DefectError("execute_plan: plan exhausted before reaching coverage");
}

/// Derives profile[t] (cost paid when the resort is open t days) from a
/// trace executed with horizon t_max: a shorter horizon halts on a prefix of
/// the same purchase sequence.
template <class Money>
std::vector<Money> profile_from_trace(const OptTable& table, const ExecutionTrace<Money>& trace,
                                      std::int64_t t_max) {
  std::vector<Money> profile(static_cast<std::size_t>(t_max) + 1, Money{});
  std::int64_t covered = 0, next_t = 1;
  Money cum{};
  const auto& options = table.instance().options;
  for (const auto& p : trace.purchases) {
    cum += p.cost;
    covered = add_days(covered, options[static_cast<std::size_t>(p.option)].days);
    while (next_t <= std::min(covered, t_max)) profile[static_cast<std::size_t>(next_t++)] = cum;
  }
  if (next_t <= t_max) throw DefectError("cost_profile: trace did not reach t_max");
  return profile;
}

/// Cost of the run for every true day count at once.
template <class PlanT>
std::vector<typename PlanT::Money> cost_profile(const OptTable& table, const PlanT& plan,
                                                std::int64_t t_max) {
  return profile_from_trace(table, execute_plan(table, plan, t_max), t_max);
}

/// One purchase per line: {"step":..,"phase":..,"iter":..,"option":..,"day":..,"cost":..}
template <class Money>
void dump_trace_jsonl(std::ostream& os, const ExecutionTrace<Money>& trace) {
  for (const auto& p : trace.purchases) {
    nlohmann::json j;
    j["step"] = p.step;
    j["phase"] = phase_name(p.phase);
    j["iter"] = p.iter;
    j["option"] = p.option;
    j["day"] = p.day;
    if constexpr (std::is_same_v<Money, Rational>)
      j["cost"] = to_double(p.cost);
    else
      j["cost"] = p.cost;
    os << j.dump() << "\n";
  }
}

}  // namespace skirent
