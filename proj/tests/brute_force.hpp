#pragma once

// Test-only oracle: enumerates explicit option sequences instead of using
// the DP recurrence, so DP results can be checked against an independent
// route. Exponential; keep instances at <= 4-ish options and ~12 days.

#include <vector>

#include "skirent/instance.hpp"
#include "skirent/rational.hpp"

namespace skirent::testing {

/// best[t] = cheapest cost over all enumerated sequences covering >= t days,
/// for t = 0..max_days.
inline std::vector<Rational> brute_force_optvals(const Instance& inst, std::int64_t max_days) {
  const auto n = static_cast<int>(inst.options.size());
  std::vector<Rational> best(static_cast<std::size_t>(max_days) + 1, Rational(-1));
  best[0] = 0;

  struct Frame {
    std::int64_t covered;
    Rational cost;
    int min_option;  // enumerate multisets: options in non-decreasing index order
  };
  std::vector<Frame> stack{{0, Rational(0), 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (int i = f.min_option; i < n; ++i) {
      const auto& opt = inst.options[static_cast<std::size_t>(i)];
      std::int64_t covered = std::min<std::int64_t>(add_days(f.covered, opt.days), max_days);
      Rational cost = f.cost + opt.cost;
      auto& slot = best[static_cast<std::size_t>(covered)];
      if (slot >= 0 && slot <= cost) continue;  // dominated; extensions dominated too
      slot = cost;
      if (covered < max_days) stack.push_back({covered, cost, i});
    }
  }
  // covering more days also covers fewer.
  for (std::int64_t t = max_days - 1; t >= 0; --t) {
    auto& here = best[static_cast<std::size_t>(t)];
    const auto& next = best[static_cast<std::size_t>(t + 1)];
    if (next >= 0 && (here < 0 || next < here)) here = next;
  }
  return best;
}

}  // namespace skirent::testing
