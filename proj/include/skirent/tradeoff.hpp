#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skirent/rational.hpp"

namespace skirent {

inline const double kE = std::exp(1.0);

namespace detail {

inline void check_delta_s(double delta, double s) {
  if (!(delta >= kE * (1 - 1e-12))) throw std::invalid_argument("delta must be >= e");
  if (!(s >= 0)) throw std::invalid_argument("s must be >= 0");
}

}  // namespace detail

/// Consistency guarantee of the randomized algorithm at parameters (delta, s).
inline double chi(double delta, double s) {
  detail::check_delta_s(delta, s);
  const double log_delta = std::log(delta);
  const double z = std::exp(-s * log_delta);  // delta^(-s)
  if (s > 1) return 1 + z / log_delta;
  return (delta + 1) / log_delta * z + s - 1 / log_delta;
}

/// Robustness guarantee of the randomized algorithm at parameters (delta, s).
inline double rho(double delta, double s) {
  detail::check_delta_s(delta, s);
  const double log_delta = std::log(delta);
  const double z = std::exp(-s * log_delta);
  return delta / (kE * log_delta) * std::exp(z) / z;
}

/// A consistency/robustness pair together with the parameters producing it.
struct TradeoffPoint {
  double consistency = 1;
  double robustness = 1;
  std::string curve;
  double param1 = 0;  // lambda, or delta
  double param2 = std::numeric_limits<double>::quiet_NaN();  // s, when applicable
};

/// Deterministic algorithm: (1/(1-lambda), 1/(lambda(1-lambda))).
inline std::pair<Rational, Rational> det_tradeoff_exact(const Rational& lambda) {
  if (lambda <= 0 || lambda > Rational(1, 2))
    throw std::invalid_argument("det tradeoff: lambda must lie in (0, 1/2]");
  return {1 / (1 - lambda), 1 / (lambda * (1 - lambda))};
}

inline TradeoffPoint det_tradeoff(const Rational& lambda) {
  auto [c, r] = det_tradeoff_exact(lambda);
  return {to_double(c), to_double(r), "ours-det", to_double(lambda)};
}

/// Matching deterministic lower bound as a function of the consistency c:
/// no c-consistent deterministic algorithm beats c^2 / (c - 1).
inline Rational det_lower_bound_exact(const Rational& c) {
  if (c <= 1 || c >= 2) throw std::invalid_argument("det lower bound: c must lie in (1, 2)");
  return c * c / (c - 1);
}

/// Positive root of (lambda+1)/2 * ln(2 lambda / (lambda+1)) = -1, about
/// 0.0861; the largest lambda for which the Theorem-4 parametrization keeps
/// s above 1. Bisection to 1e-12.
inline double lambda_star() {
  auto f = [](double x) { return (x + 1) / 2 * std::log(2 * x / (x + 1)) + 1; };
  double lo = 1e-6, hi = 0.5;
  if (!(f(lo) < 0) || !(f(hi) > 0)) throw DefectError("lambda_star: bracket lost");
  while (hi - lo > 1e-12) {
    double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

/// Single-parameter choice delta = e^(2/(lambda+1)),
/// s = -(lambda+1)/2 * ln(2 lambda/(lambda+1)), valid for lambda < lambda*;
/// yields a (1+lambda)-consistent, e(1+lambda)^2/(4 lambda)-robust algorithm.
inline std::pair<double, double> thm4_params(double lambda) {
  if (!(lambda > 0) || !(lambda < lambda_star()))
    throw std::invalid_argument("thm4_params: lambda must lie in (0, lambda*)");
  double delta = std::exp(2 / (lambda + 1));
  double s = -(lambda + 1) / 2 * std::log(2 * lambda / (lambda + 1));
  return {delta, s};
}

/// Randomized lower bound: a (1+lambda)-consistent algorithm is at best
/// max((1+lambda)^2 / (2 lambda), e)-robust.
inline double rand_lower_bound(double lambda) {
  if (!(lambda > 0) || !(lambda < 1))
    throw std::invalid_argument("rand_lower_bound: lambda must lie in (0, 1)");
  return std::max((1 + lambda) * (1 + lambda) / (2 * lambda), kE);
}

/// Prior best deterministic trade-off (Shin et al.):
/// max(1+2 lambda, 4 lambda)-consistent, (2 + 2/lambda)-robust.
inline TradeoffPoint shin_det(double lambda) {
  if (!(lambda > 0) || !(lambda <= 1))
    throw std::invalid_argument("shin_det: lambda must lie in (0, 1]");
  return {std::max(1 + 2 * lambda, 4 * lambda), 2 + 2 / lambda, "shin-det", lambda};
}

/// Prior best randomized trade-off (Shin et al.).
inline TradeoffPoint shin_rand(double lambda) {
  if (!(lambda > 0) || !(lambda <= 1))
    throw std::invalid_argument("shin_rand: lambda must lie in (0, 1]");
  double c = lambda < 1 / kE ? 1 + lambda : (kE + 1) * lambda - std::log(lambda) - 1;
  return {c, std::exp(lambda) / lambda, "shin-rand", lambda};
}

inline std::vector<TradeoffPoint> prior_work_curves(double lambda) {
  return {shin_det(lambda), shin_rand(lambda)};
}

/// Non-dominated subset (weak dominance, strict in one coordinate), sorted
/// by consistency; duplicate (chi, rho) pairs collapse to the first seen.
inline std::vector<TradeoffPoint> filter_pareto(std::vector<TradeoffPoint> pts) {
  std::stable_sort(pts.begin(), pts.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
    if (a.consistency != b.consistency) return a.consistency < b.consistency;
    return a.robustness < b.robustness;
  });
  std::vector<TradeoffPoint> front;
  for (auto& p : pts) {
    if (!front.empty() && p.robustness >= front.back().robustness) continue;
    front.push_back(std::move(p));
  }
  return front;
}

inline std::vector<TradeoffPoint> pareto_front(const std::vector<double>& deltas,
                                               const std::vector<double>& ss) {
  std::vector<TradeoffPoint> pts;
  for (double d : deltas)
    for (double s : ss) pts.push_back({chi(d, s), rho(d, s), "ours-rand-front", d, s});
  return filter_pareto(std::move(pts));
}

// ---- numeric verification of the analytic lemmas ---------------------------

struct LemmaGrid {
  std::vector<double> deltas;  // within [e, e^4]
  std::vector<double> ss;      // within [0, 4]
  std::vector<double> zs;      // within (0, 4]

  static LemmaGrid standard() {
    LemmaGrid g;
    for (int i = 0; i <= 24; ++i) g.deltas.push_back(std::exp(1 + 3.0 * i / 24));
    for (int i = 0; i <= 32; ++i) g.ss.push_back(i / 8.0);
    for (int i = 1; i <= 400; ++i) g.zs.push_back(i / 100.0);
    return g;
  }
};

struct LemmaCheck {
  std::string name;
  double max_violation = 0;  // relative slack on the wrong side; <= 0 means satisfied
  std::size_t points = 0;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  double maximizer_error = 0;  // |g(z0) - rho| / rho at the interior maximizer

  double worst_violation() const {
    double w = -std::numeric_limits<double>::infinity();
    for (const auto& c : checks) w = std::max(w, c.max_violation);
    return w;
  }
};

/// Evaluates the five closed-form inequalities behind the randomized
/// analysis pointwise on the grid. Violations are (lhs - rhs) / rhs for the
/// "lhs <= rhs" inequalities and -g(z) for the nonnegativity one.
inline LemmaReport verify_analytic_lemmas(const LemmaGrid& grid = LemmaGrid::standard()) {
  LemmaReport rep;
  LemmaCheck envelope{"bopt-envelope-bound", -1e300, 0};          // g(z) <= rho
  LemmaCheck nonneg{"exp-quadratic-nonneg", -1e300, 0};           // e^(z-1) - z^2 + z ln z >= 0
  LemmaCheck tail_high_s{"tail-bound-s-above-1", -1e300, 0};      // 1/ln d + d^s <= rho
  LemmaCheck tail_low_s{"tail-bound-s-below-1", -1e300, 0};       // (d+1)/ln d + s d^s - d^s/ln d <= rho
  LemmaCheck late_horizon{"late-horizon-bound", -1e300, 0};       // (d + d^-s + min(s,1) ln d - 1)/ln d <= rho

  for (double z : grid.zs) {
    double g = std::exp(z - 1) - z * z + z * std::log(z);
    nonneg.max_violation = std::max(nonneg.max_violation, -g);
    ++nonneg.points;
  }
  for (double d : grid.deltas) {
    const double log_d = std::log(d);
    for (double s : grid.ss) {
      const double r = rho(d, s);
      const double ds = std::pow(d, s);
      for (double z : grid.zs) {
        double g = std::pow(d, z) / log_d + (1 - z) * std::pow(d, z + s);
        envelope.max_violation = std::max(envelope.max_violation, (g - r) / r);
        ++envelope.points;
      }
      // Interior maximizer z0 attains rho exactly.
      double z0 = 1 + (1 / ds - 1) / log_d;
      double g0 = std::pow(d, z0) / log_d + (1 - z0) * std::pow(d, z0 + s);
      rep.maximizer_error = std::max(rep.maximizer_error, std::abs(g0 - r) / r);

      tail_high_s.max_violation =
          std::max(tail_high_s.max_violation, (1 / log_d + ds - r) / r);
      ++tail_high_s.points;
      if (s <= 1) {
        double lhs = (d + 1) / log_d + s * ds - ds / log_d;
        tail_low_s.max_violation = std::max(tail_low_s.max_violation, (lhs - r) / r);
        ++tail_low_s.points;
      }
      double lhs5 = (d + 1 / ds + std::min(s, 1.0) * log_d - 1) / log_d;
      late_horizon.max_violation = std::max(late_horizon.max_violation, (lhs5 - r) / r);
      ++late_horizon.points;
    }
  }
  rep.checks = {envelope, nonneg, tail_high_s, tail_low_s, late_horizon};
  return rep;
}

}  // namespace skirent
