#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <sstream>

#include "skirent/evaluator.hpp"
#include "skirent/generators.hpp"
#include "skirent/report.hpp"
#include "skirent/tradeoff.hpp"

using namespace skirent;

namespace {

const double kE1 = std::exp(1.0);

OptTable classic4_table() { return OptTable::build(classic_two_option(Rational(4))); }

}  // namespace

TEST_CASE("breakdown probabilities sum to one and cover [1, delta)") {
  OptTable table = classic4_table();
  RandExpectation oracle(table, 8, kE1, 0.5, 16);
  auto b = oracle.breakdown(8);
  double total = 0;
  for (std::size_t i = 0; i < b.segments.size(); ++i) {
    total += b.segments[i].prob;
    if (i > 0) REQUIRE(b.segments[i].lo == b.segments[i - 1].hi);
  }
  REQUIRE(b.segments.front().lo == 1.0);
  REQUIRE(b.segments.back().hi == kE1);
  REQUIRE(std::abs(total - 1.0) < 1e-12);
  double expected = 0;
  for (const auto& seg : b.segments) expected += seg.prob * seg.cost;
  REQUIRE(expected == Catch::Approx(b.expected).epsilon(1e-12));
}

TEST_CASE("expected cost at T = 0 is zero") {
  OptTable table = classic4_table();
  auto [value, breakdown] = exact_expected_cost(table, 8, kE1, 0, 0);
  REQUIRE(value == 0.0);
}

TEST_CASE("oracle matches Monte-Carlo within 4 standard errors") {
  OptTable table = classic4_table();
  for (double s : {0.0, 1.0}) {
    RandExpectation oracle(table, 8, kE1, s, 16);
    for (std::int64_t t : {3L, 8L, 14L}) {
      auto mc = monte_carlo_expected_cost(table, 8, kE1, s, t, 100000, 12345);
      INFO("s " << s << " t " << t << " exact " << oracle.expected_cost(t) << " mc " << mc.mean);
      REQUIRE(std::abs(oracle.expected_cost(t) - mc.mean) <= 4 * mc.stderr_);
    }
  }
  Instance inst = random_instance(3, 5, 8, 16);
  OptTable rt = OptTable::build(inst);
  std::int64_t t_pred = inst.horizon / 2;
  RandExpectation oracle(rt, t_pred, std::exp(1.5), 0.25, inst.horizon);
  auto mc = monte_carlo_expected_cost(rt, t_pred, std::exp(1.5), 0.25, inst.horizon, 100000, 99);
  REQUIRE(std::abs(oracle.expected_cost(inst.horizon) - mc.mean) <= 4 * mc.stderr_);
}

TEST_CASE("Monte-Carlo is reproducible and sane") {
  OptTable table = classic4_table();
  auto a = monte_carlo_expected_cost(table, 8, kE1, 0, 8, 500, 7);
  auto b = monte_carlo_expected_cost(table, 8, kE1, 0, 8, 500, 7);
  REQUIRE(a.mean == b.mean);
  REQUIRE(a.stderr_ == b.stderr_);

  // n = 1 equals a single simulated run
  auto single = monte_carlo_expected_cost(table, 8, kE1, 0, 8, 1, 42);
  RandRunParams run = rand_run_params(table, 8, kE1, 0);
  std::mt19937_64 rng(detail::mix_seed(42, 0));
  RandPlan plan(run.params, sample_alpha(rng, kE1), 8, run.budget_scale);
  auto trace = execute_plan(table, plan, 8);
  REQUIRE(single.mean == trace.total_cost);
  REQUIRE(single.stderr_ == 0.0);

  // two seeds differ but agree within 4 sigma
  auto c = monte_carlo_expected_cost(table, 8, kE1, 0, 8, 20000, 1);
  auto d = monte_carlo_expected_cost(table, 8, kE1, 0, 8, 20000, 2);
  REQUIRE(c.mean != d.mean);
  REQUIRE(std::abs(c.mean - d.mean) <= 4 * std::hypot(c.stderr_, d.stderr_));
}

TEST_CASE("deterministic consistency ratios") {
  OptTable table = classic4_table();
  auto rep = consistency_ratio(DetConfig{Rational(1, 2)}, table, 8);
  REQUIRE(rep.exact_cost.value() == 7);
  REQUIRE(rep.ratio == Catch::Approx(7.0 / 4.0));
  REQUIRE(rep.exact_cost.value() <= 2 * rep.optval);

  auto zero = consistency_ratio(DetConfig{Rational(0)}, table, 8);
  REQUIRE(zero.exact_cost.value() == zero.optval);
  REQUIRE(zero.ratio == 1.0);
}

TEST_CASE("deterministic robustness stays under the guarantee") {
  OptTable table = classic4_table();
  auto [worst_half, all_half] =
      robustness_ratio(DetConfig{Rational(1, 2)}, table, 8, 1, 16);
  REQUIRE(all_half.size() == 16);
  REQUIRE(worst_half.exact_cost.value() <= 4 * worst_half.optval);
  for (const auto& r : all_half) REQUIRE(r.exact_cost.value() <= 4 * r.optval);

  auto [worst_third, all_third] =
      robustness_ratio(DetConfig{Rational(1, 3)}, table, 8, 1, 16);
  Rational bound = 1 / (Rational(1, 3) * Rational(2, 3));  // 4.5
  for (const auto& r : all_third) REQUIRE(r.exact_cost.value() <= bound * r.optval);
}

TEST_CASE("randomized ratios satisfy the closed-form guarantees on spot checks") {
  OptTable table = classic4_table();
  for (double s : {0.0, 0.5, 1.0, 3.0}) {
    for (double delta : {kE1, std::exp(2.0)}) {
      auto rep = consistency_ratio(RandConfig{delta, s}, table, 8);
      REQUIRE(rep.ratio <= chi(delta, s) * (1 + 1e-9));
      auto [worst, all] = robustness_ratio(RandConfig{delta, s}, table, 8, 1, 16);
      REQUIRE(worst.ratio <= rho(delta, s) * (1 + 1e-9));
    }
  }
  // chi(e, 0) = e: the expected consistency ratio is bounded by e
  auto rep = consistency_ratio(RandConfig{kE1, 0}, table, 8);
  REQUIRE(rep.ratio <= kE1 * (1 + 1e-9));
}

TEST_CASE("sweep rows carry bounds and nonnegative margins") {
  OptTable table = classic4_table();
  auto det_rows = sweep_rows("classic:4", AlgoConfig{DetConfig{Rational(1, 2)}}, table, 8, 1, 16);
  REQUIRE(det_rows.size() == 16);
  for (const auto& row : det_rows) {
    REQUIRE(row.margin() >= 0);
    REQUIRE(row.bound == (row.t == 8 ? 2.0 : 4.0));
  }
  auto rand_rows = sweep_rows("classic:4", AlgoConfig{RandConfig{kE1, 0}}, table, 8, 1, 16);
  for (const auto& row : rand_rows) REQUIRE(row.margin() >= -1e-9);

  std::ostringstream os;
  write_sweep_csv(os, det_rows, 11);
  std::string text = os.str();
  REQUIRE(text.find("# skirent-lab v0.1.0 seed=11") == 0);
  REQUIRE(text.find("family,lambda_or_delta,s,T,That,") != std::string::npos);
}
