#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "skirent/report.hpp"
#include "skirent/tradeoff.hpp"

using namespace skirent;

TEST_CASE("chi evaluates both branches and is continuous at s = 1") {
  REQUIRE(chi(kE, 0) == Catch::Approx(kE).epsilon(1e-15));
  REQUIRE(chi(std::exp(2.0), 2) == Catch::Approx(1 + std::exp(-4.0) / 2).epsilon(1e-15));
  for (double delta : {kE, std::exp(1.5), std::exp(2.0), std::exp(3.0), std::exp(4.0)}) {
    double low = (delta + 1) / std::log(delta) * std::pow(delta, -1.0) + 1 - 1 / std::log(delta);
    double high = 1 + std::pow(delta, -1.0) / std::log(delta);
    REQUIRE(std::abs(low - high) <= 1e-12 * high);
    REQUIRE(chi(delta, 1) == Catch::Approx(high).epsilon(1e-12));
  }
  REQUIRE_THROWS_AS(chi(2.0, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(chi(kE, -1), std::invalid_argument);
}

TEST_CASE("rho evaluates the closed form") {
  REQUIRE(rho(kE, 0) == Catch::Approx(kE).epsilon(1e-15));
  double d2 = std::exp(2.0);
  REQUIRE(rho(d2, 1) ==
          Catch::Approx(kE / 2 * std::exp(std::exp(-2.0)) / std::exp(-2.0)).epsilon(1e-14));
  // monotone trade: chi falls and rho rises as s grows
  for (double delta : {kE, std::exp(2.0), std::exp(4.0)}) {
    double prev_chi = chi(delta, 0), prev_rho = rho(delta, 0);
    for (double s = 0.125; s <= 4.0; s += 0.125) {
      REQUIRE(chi(delta, s) <= prev_chi + 1e-12);
      REQUIRE(rho(delta, s) >= prev_rho - 1e-12);
      prev_chi = chi(delta, s);
      prev_rho = rho(delta, s);
    }
  }
}

TEST_CASE("deterministic trade-off sits exactly on the lower-bound curve") {
  auto [c_half, r_half] = det_tradeoff_exact(Rational(1, 2));
  REQUIRE(c_half == 2);
  REQUIRE(r_half == 4);
  auto [c_q, r_q] = det_tradeoff_exact(Rational(1, 4));
  REQUIRE(c_q == Rational(4, 3));
  REQUIRE(r_q == Rational(16, 3));
  for (int k = 1; k <= 50; ++k) {
    Rational lambda(k, 100);
    auto [c, r] = det_tradeoff_exact(lambda);
    REQUIRE(det_lower_bound_exact(c) == r);  // c^2/(c-1) identity, exact
  }
  REQUIRE_THROWS_AS(det_tradeoff_exact(Rational(0)), std::invalid_argument);
  REQUIRE_THROWS_AS(det_tradeoff_exact(Rational(2, 3)), std::invalid_argument);
}

TEST_CASE("lambda_star solves its defining equation") {
  double ls = lambda_star();
  REQUIRE(ls > 0.086);
  REQUIRE(ls < 0.0862);
  double residual = (ls + 1) / 2 * std::log(2 * ls / (ls + 1)) + 1;
  REQUIRE(std::abs(residual) < 1e-10);
}

TEST_CASE("thm4 parametrization reproduces the stated guarantees") {
  const double ls = lambda_star();
  for (int j = 0; j < 50; ++j) {
    double lambda = 0.001 + (ls - 0.002) * j / 49.0;
    auto [delta, s] = thm4_params(lambda);
    REQUIRE(delta >= kE);
    REQUIRE(s > 1);
    REQUIRE(chi(delta, s) == Catch::Approx(1 + lambda).epsilon(1e-9));
    double target_rho = kE * (1 + lambda) * (1 + lambda) / (4 * lambda);
    REQUIRE(rho(delta, s) == Catch::Approx(target_rho).epsilon(1e-9));
    // the robustness sits a factor e/2 above the lower bound
    double lb = (1 + lambda) * (1 + lambda) / (2 * lambda);
    REQUIRE(rho(delta, s) / lb == Catch::Approx(kE / 2).epsilon(1e-12));
  }
  auto [delta, s] = thm4_params(0.05);
  REQUIRE(delta == Catch::Approx(std::exp(2 / 1.05)).epsilon(1e-15));
  REQUIRE(s == Catch::Approx(1.2344722).epsilon(1e-6));
  REQUIRE(rho(delta, s) == Catch::Approx(kE * 5.5125).epsilon(1e-12));
  REQUIRE_THROWS_AS(thm4_params(lambda_star() + 1e-4), std::invalid_argument);
  REQUIRE_THROWS_AS(thm4_params(0.0), std::invalid_argument);
}

TEST_CASE("randomized lower bound") {
  REQUIRE(rand_lower_bound(0.1) == Catch::Approx(6.05).epsilon(1e-12));
  REQUIRE(rand_lower_bound(0.99) == kE);  // (1+x)^2/(2x) < e near 1
  // crossover points solve x^2 + (2 - 2e)x + 1 = 0
  double disc = std::sqrt((2 - 2 * kE) * (2 - 2 * kE) - 4);
  for (double root : {(2 * kE - 2 - disc) / 2, (2 * kE - 2 + disc) / 2}) {
    REQUIRE((1 + root) * (1 + root) / (2 * root) == Catch::Approx(kE).epsilon(1e-12));
    REQUIRE(rand_lower_bound(root) == Catch::Approx(kE).epsilon(1e-12));
  }
  REQUIRE_THROWS_AS(rand_lower_bound(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rand_lower_bound(1.0), std::invalid_argument);
}

TEST_CASE("prior-work curves") {
  auto at1 = prior_work_curves(1.0);
  REQUIRE(at1[0].consistency == 4.0);  // max(3, 4)
  REQUIRE(at1[0].robustness == 4.0);   // 2 + 2/1
  REQUIRE(at1[1].consistency == Catch::Approx(kE).epsilon(1e-15));  // (e+1) - ln 1 - 1
  REQUIRE(at1[1].robustness == Catch::Approx(kE).epsilon(1e-15));   // e^1/1
  auto quarter = shin_det(0.25);
  REQUIRE(quarter.consistency == 1.5);
  REQUIRE(quarter.robustness == 10.0);
  REQUIRE_THROWS_AS(shin_det(0.0), std::invalid_argument);
}

TEST_CASE("pareto filtering") {
  std::vector<TradeoffPoint> single{{2.0, 5.0, "x", 0}};
  auto kept = filter_pareto(single);
  REQUIRE(kept.size() == 1);

  auto front = pareto_front({kE, std::exp(1.5), std::exp(2.0), std::exp(3.0)},
                            {0, 0.25, 0.5, 1, 1.5, 3});
  REQUIRE_FALSE(front.empty());
  for (std::size_t i = 1; i < front.size(); ++i) {
    REQUIRE(front[i].consistency > front[i - 1].consistency);
    REQUIRE(front[i].robustness < front[i - 1].robustness);
  }

  // a grid containing the thm4 parameters keeps them on the front
  for (double lambda : {0.02, 0.05, 0.08}) {
    auto [delta, s] = thm4_params(lambda);
    std::vector<double> deltas{kE, std::exp(1.5), std::exp(2.0), delta};
    std::vector<double> ss{0, 0.5, 1, 2, 3, s};
    auto f = filter_pareto(pareto_front(deltas, ss));
    bool found = false;
    for (const auto& p : f)
      if (std::abs(p.consistency - (1 + lambda)) < 1e-12 &&
          std::abs(p.robustness - kE * (1 + lambda) * (1 + lambda) / (4 * lambda)) <
              1e-6 * p.robustness)
        found = true;
    REQUIRE(found);
  }
}

TEST_CASE("analytic lemma grid shows no violations") {
  auto report = verify_analytic_lemmas();
  REQUIRE(report.checks.size() == 5);
  for (const auto& check : report.checks) {
    INFO(check.name << " worst violation " << check.max_violation);
    REQUIRE(check.max_violation <= 1e-12);
    REQUIRE(check.points > 0);
  }
  REQUIRE(report.maximizer_error <= 1e-9);

  // g(1) = 0 exactly for the nonnegativity lemma
  REQUIRE(std::exp(1.0 - 1.0) - 1.0 + 1.0 * std::log(1.0) == 0.0);
}

TEST_CASE("standard curve set contains all eight families") {
  auto pts = standard_curves();
  for (const char* id : {"ours-det", "ours-rand-front", "thm4", "det-lb", "rand-lb",
                         "trivial-e-lb", "shin-det", "shin-rand"}) {
    bool found = false;
    for (const auto& p : pts)
      if (p.curve == id) found = true;
    INFO(id);
    REQUIRE(found);
  }
}
