#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "skirent/instance.hpp"
#include "skirent/opt_table.hpp"
#include "skirent/rational.hpp"

namespace skirent {

/// One evaluation scenario: an instance family, the true number of open
/// days, and the prediction handed to the algorithm.
struct ScenarioSpec {
  std::string family;
  Instance instance;
  std::int64_t true_t = 1;
  std::int64_t predicted_t = 1;
};

/// Single-day rental at cost 1 versus buying at cost B.
inline Instance classic_two_option(const Rational& buy_cost) {
  if (buy_cost < 1) throw std::invalid_argument("classic_two_option: buy cost must be >= 1");
  Instance inst;
  inst.options.push_back({1, Rational(1)});
  inst.options.push_back({kForeverDays, buy_cost});
  inst.horizon = 4 * ceil_to_i64(buy_cost);
  return inst;
}

/// Menu of (ceil(b^i) days, b^i) for i = 0..n-1 plus buying at b^n; a stress
/// family with many distinct optimal-value breakpoints.
inline Instance geometric_options(const Rational& base, int count) {
  if (base <= 1) throw std::invalid_argument("geometric_options: base must exceed 1");
  if (count < 2) throw std::invalid_argument("geometric_options: need at least 2 options");
  Instance inst;
  for (int i = 0; i < count; ++i) {
    Rational cost = pow_rat(base, i);
    inst.options.push_back({ceil_to_i64(cost), cost});
  }
  Rational buy = pow_rat(base, count);
  inst.options.push_back({kForeverDays, buy});
  inst.horizon = 4 * ceil_to_i64(buy);
  return inst;
}

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic across platforms, unlike std::uniform_int_distribution.
inline std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Distinct optimal values must sit further apart than 1e-9 relative, so the
/// floating-budget tolerance in bopt can never flip a comparison.
inline bool breakpoints_separated(const OptTable& table) {
  Rational prev = table.optval(1);
  for (std::int64_t t = 2; t <= table.built_days(); ++t) {
    Rational cur = table.optval(t);
    if (cur == prev) continue;
    if ((cur - prev) / prev <= Rational(1, 1000000000)) return false;
    prev = cur;
  }
  return true;
}

}  // namespace detail

/// Reproducible random menu: exactly one buy option, rational costs with
/// denominator at most 64, already normalized. Resamples until all optval
/// breakpoints are well separated.
inline Instance random_instance(std::uint64_t seed, int n_options, std::int64_t max_days,
                                std::int64_t max_cost) {
  if (n_options < 2 || max_days < 1 || max_cost < 2)
    throw std::invalid_argument("random_instance: bounds must be positive (>= 2 options)");
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt > 256) throw DefectError("random_instance: resampling did not converge");
    std::mt19937_64 rng(detail::mix_seed(seed, attempt));
    Instance inst;
    auto random_cost = [&](std::int64_t lo_int) {
      std::int64_t den = detail::pick(rng, 1, 64);
      std::int64_t ip = detail::pick(rng, lo_int, max_cost - 1);
      std::int64_t num = detail::pick(rng, 0, den - 1);
      return Rational(ip) + Rational(num, den);
    };
    for (int i = 0; i + 1 < n_options; ++i)
      inst.options.push_back({detail::pick(rng, 1, max_days), random_cost(1)});
    inst.options.push_back({kForeverDays, random_cost(std::max<std::int64_t>(1, max_cost / 2))});
    inst.horizon = 1;
    OptTable probe = OptTable::build(inst, 1);
    inst.horizon = probe.built_days() + 2;
    OptTable table = OptTable::build(inst);
    if (detail::breakpoints_separated(table)) return inst;
  }
}

/// Parses a compact family spec: "classic:4", "geometric:2,4",
/// "random:seed=7,n=5,days=8,cost=16".
inline Instance instance_from_family_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string family = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto next = s.find(sep, pos);
      if (next == std::string::npos) next = s.size();
      parts.push_back(s.substr(pos, next - pos));
      pos = next + 1;
    }
    return parts;
  };
  if (family == "classic") {
    if (args.empty()) throw std::invalid_argument("family spec: classic:<buy-cost>");
    return classic_two_option(parse_rational(args));
  }
  if (family == "geometric") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw std::invalid_argument("family spec: geometric:<base>,<count>");
    return geometric_options(parse_rational(parts[0]), std::stoi(parts[1]));
  }
  if (family == "random") {
    std::uint64_t seed = 1;
    int n = 5;
    std::int64_t days = 8, cost = 16;
    for (const auto& part : split(args, ',')) {
      if (part.empty()) continue;
      auto eq = part.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("family spec: expected key=value");
      std::string key = part.substr(0, eq), value = part.substr(eq + 1);
      if (key == "seed")
        seed = std::stoull(value);
      else if (key == "n")
        n = std::stoi(value);
      else if (key == "days")
        days = std::stoll(value);
      else if (key == "cost")
        cost = std::stoll(value);
      else
        throw std::invalid_argument("family spec: unknown key '" + key + "'");
    }
    return random_instance(seed, n, days, cost);
  }
  throw std::invalid_argument("family spec: unknown family '" + family + "'");
}

}  // namespace skirent
