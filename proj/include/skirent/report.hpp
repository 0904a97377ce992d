#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "skirent/evaluator.hpp"
#include "skirent/rational.hpp"
#include "skirent/tradeoff.hpp"
#include "skirent/version.hpp"

namespace skirent {

/// Shortest round-trip decimal for a double; stable across runs.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec <= 16; ++prec) {
      char s[64];
      std::snprintf(s, sizeof(s), "%.*g", prec, v);
      if (std::strtod(s, nullptr) == v) return s;
    }
  }
  return buf;
}

/// One evaluator CSV row; `bound` is the consistency guarantee at t == t_pred
/// and the robustness guarantee elsewhere, so `margin >= 0` everywhere means
/// full bound compliance.
struct SweepRow {
  std::string family;
  std::string lambda_or_delta;
  std::string s;  // empty for deterministic rows
  std::int64_t t = 0;
  std::int64_t t_pred = 0;
  double expected_cost = 0;
  Rational optval = 0;
  double ratio = 0;
  double bound = 0;

  double margin() const { return bound - ratio; }
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                            std::uint64_t seed) {
  os << provenance_line(seed) << "\n";
  os << "family,lambda_or_delta,s,T,That,expected_cost,optval,ratio,bound,margin\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.lambda_or_delta << ',' << r.s << ',' << r.t << ',' << r.t_pred
       << ',' << format_double(r.expected_cost) << ',' << format_rational(r.optval) << ','
       << format_double(r.ratio) << ',' << format_double(r.bound) << ','
       << format_double(r.margin()) << "\n";
  }
}

/// Builds sweep rows for one (instance, config, prediction) over a T range.
inline std::vector<SweepRow> sweep_rows(const std::string& family, const AlgoConfig& config,
                                        const OptTable& table, std::int64_t t_pred,
                                        std::int64_t t_lo, std::int64_t t_hi) {
  auto reports = ratio_reports(config, table, t_pred, t_lo, t_hi);
  std::vector<SweepRow> rows;
  for (const auto& rep : reports) {
    SweepRow row;
    row.family = family;
    if (const auto* det = std::get_if<DetConfig>(&config)) {
      row.lambda_or_delta = format_rational(det->lambda);
      if (det->lambda == 0) {
        row.bound = rep.t == t_pred ? 1.0 : std::numeric_limits<double>::infinity();
      } else {
        auto [cons, rob] = det_tradeoff_exact(det->lambda);
        row.bound = to_double(rep.t == t_pred ? cons : rob);
      }
    } else {
      const auto& rnd = std::get<RandConfig>(config);
      row.lambda_or_delta = format_double(rnd.delta);
      row.s = format_double(rnd.s);
      row.bound = rep.t == t_pred ? chi(rnd.delta, rnd.s) : rho(rnd.delta, rnd.s);
    }
    row.t = rep.t;
    row.t_pred = t_pred;
    row.expected_cost = rep.expected_cost;
    row.optval = rep.optval;
    row.ratio = rep.ratio;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// curves CSV schema: curve_id,param1,param2,consistency,robustness
inline void write_curves_csv(std::ostream& os, const std::vector<TradeoffPoint>& points,
                             std::uint64_t seed) {
  os << provenance_line(seed) << "\n";
  os << "curve_id,param1,param2,consistency,robustness\n";
  for (const auto& p : points) {
    os << p.curve << ',' << format_double(p.param1) << ','
       << (std::isnan(p.param2) ? std::string() : format_double(p.param2)) << ','
       << format_double(p.consistency) << ',' << format_double(p.robustness) << "\n";
  }
}

/// All eight curve families behind the paper-style overview figures.
inline std::vector<TradeoffPoint> standard_curves() {
  std::vector<TradeoffPoint> pts;
  for (int j = 1; j <= 50; ++j) {
    Rational lam(j, 100);
    TradeoffPoint det = det_tradeoff(lam);
    pts.push_back(det);
    det.curve = "det-lb";  // the matching lower bound coincides with the algorithm
    pts.push_back(det);
  }
  for (int j = 1; j <= 100; ++j) {
    pts.push_back(shin_det(j / 100.0));
    pts.push_back(shin_rand(j / 100.0));
  }
  for (int j = 1; j <= 99; ++j) {
    double lam = j / 100.0;
    pts.push_back({1 + lam, rand_lower_bound(lam), "rand-lb", lam});
  }
  const double lstar = lambda_star();
  for (int j = 0; j < 50; ++j) {
    double lam = 0.001 + (lstar - 0.002) * j / 49.0;
    auto [delta, s] = thm4_params(lam);
    pts.push_back({chi(delta, s), rho(delta, s), "thm4", delta, s});
  }
  std::vector<double> deltas, ss;
  for (int j = 0; j <= 60; ++j) deltas.push_back(std::exp(1 + 0.05 * j));
  for (int j = 0; j <= 80; ++j) ss.push_back(0.05 * j);
  for (auto& p : pareto_front(deltas, ss)) pts.push_back(std::move(p));
  for (int j = 0; j <= 100; ++j)
    pts.push_back({1 + 0.02 * j, kE, "trivial-e-lb", 1 + 0.02 * j});
  return pts;
}

}  // namespace skirent
