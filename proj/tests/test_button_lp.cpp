#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "skirent/button_lp.hpp"

using namespace skirent;

TEST_CASE("primal LP shape") {
  auto [lp2, ix2] = build_primal(2, Rational(1, 2));
  REQUIRE(ix2.count() == 4);  // x1, x2, y12, gamma
  REQUIRE(lp2.num_rows() == 1 + 1 + 2 + 1);
  // flow constraint at t = 1 reads y12 = x1
  const auto& flow = lp2.rows[1];
  REQUIRE(flow[ix2.y(1, 2)] == 1);
  REQUIRE(flow[ix2.x(1)] == -1);
  REQUIRE(lp2.rels[1] == LinearProgram::Rel::eq);
  REQUIRE(lp2.rhs[1] == 0);

  auto [lp4, ix4] = build_primal(4, Rational(1, 2));
  REQUIRE(ix4.count() == 11);  // 4 + 6 + 1
  REQUIRE(lp4.var_names[ix4.y(2, 4)] == "y2_4");

  REQUIRE_THROWS_AS(build_primal(1, Rational(1, 2)), std::invalid_argument);
  REQUIRE_THROWS_AS(build_primal(4, Rational(1)), std::invalid_argument);
}

TEST_CASE("certificate construction") {
  DualCertificate c = build_certificate(10, Rational(1, 2));
  REQUIRE(c.ell == 7);  // ceil((2*(1/2)/(3/2)) * 10) = ceil(20/3)
  REQUIRE(c.vhat == 3);
  REQUIRE(c.w == 100);
  REQUIRE(c.u[0] == 90);
  REQUIRE(c.u[9] == 0);
  REQUIRE(c.v[6] == 1);
  REQUIRE(c.v[7] == 0);

  DualCertificate q = build_certificate(4, Rational(1, 4));
  REQUIRE(q.ell == 2);  // ceil(1.6)
  REQUIRE(q.vhat == 2);
  REQUIRE(q.w == 16);

  for (int j = 2; j <= 9; ++j) {
    DualCertificate any = build_certificate(j, Rational(3, 10));
    REQUIRE(any.u[static_cast<std::size_t>(j - 1)] == 0);  // u_J = 0 always
  }
}

TEST_CASE("certificate is D2- and D1-feasible on a small grid") {
  for (std::int64_t J = 2; J <= 30; ++J) {
    for (int k = 1; k <= 19; k += 3) {
      Rational lambda(k, 20);
      DualCertificate cert = build_certificate(J, lambda);
      auto d2 = verify_d2_feasibility(cert, CheckMode::exhaustive);
      INFO("J " << J << " lambda " << format_rational(lambda));
      REQUIRE(d2.feasible);
      auto [scaled, divisor] = scale_to_d1(cert);
      REQUIRE(divisor == Rational(cert.ell) * (cert.ell + 1) / 2);
      auto d1 = verify_d1_feasibility(scaled, CheckMode::exhaustive);
      REQUIRE(d1.feasible);
    }
  }
}

TEST_CASE("w-rows hold with equality, so perturbing w breaks feasibility") {
  DualCertificate cert = build_certificate(12, Rational(2, 5));
  Rational total(0);
  for (const auto& vj : cert.v) total += vj;
  for (std::int64_t j = 1; j <= cert.J; ++j)
    REQUIRE(cert.w == cert.u[static_cast<std::size_t>(j - 1)] + j * (cert.vhat + total));
  DualCertificate bumped = cert;
  bumped.w += 1;
  auto report = verify_d2_feasibility(bumped, CheckMode::exhaustive);
  REQUIRE_FALSE(report.feasible);
  REQUIRE_FALSE(report.violations.empty());
}

TEST_CASE("structured and exhaustive verification agree") {
  for (std::int64_t J : {17, 80, 333}) {
    DualCertificate cert = build_certificate(J, Rational(7, 20));
    auto a = verify_d2_feasibility(cert, CheckMode::exhaustive);
    auto b = verify_d2_feasibility(cert, CheckMode::structured);
    REQUIRE(a.feasible == b.feasible);
    REQUIRE(b.used_affine_shortcut);
  }
  // non-affine u must be rejected by the shortcut
  DualCertificate bent = build_certificate(6, Rational(1, 2));
  bent.u[2] += 1;
  REQUIRE_THROWS_AS(verify_d2_feasibility(bent, CheckMode::structured), std::invalid_argument);
  REQUIRE_NOTHROW(verify_d2_feasibility(bent, CheckMode::exhaustive));
}

TEST_CASE("scaling to D1 normalizes exactly") {
  DualCertificate cert = build_certificate(10, Rational(1, 2));
  auto [scaled, divisor] = scale_to_d1(cert);
  REQUIRE(divisor == 28);  // ell = 7
  Rational weighted(0);
  for (std::int64_t j = 1; j <= scaled.J; ++j)
    weighted += j * scaled.v[static_cast<std::size_t>(j - 1)];
  REQUIRE(weighted == 1);
  REQUIRE(scaled.objective() == cert.objective() / divisor);
  REQUIRE(scaled.objective() == certificate_ratio(10, Rational(1, 2)));
}

TEST_CASE("certificate ratio values and limit behavior") {
  REQUIRE(certificate_ratio(10, Rational(1, 2)) == Rational(55, 28));
  REQUIRE(certificate_ratio(1000, Rational(1, 2)) == Rational(500500, 222778));
  for (int k : {2, 6, 10, 14, 18}) {
    Rational lambda(k, 20);  // 0.1, 0.3, 0.5, 0.7, 0.9
    Rational ratio = certificate_ratio(100000, lambda);
    Rational target = certificate_ratio_limit(lambda);
    Rational rel = (target - ratio) / target;
    INFO("lambda " << format_rational(lambda) << " rel gap " << to_double(rel));
    REQUIRE(rel >= 0);
    REQUIRE(rel <= Rational(1, 10000));
    // inequality chain: ratio never falls below the closed-form floor
    REQUIRE(certificate_ratio(100000, lambda) >= certificate_ratio_floor(100000, lambda));
  }
  for (std::int64_t J : {5, 50, 500}) {
    for (int k = 1; k <= 19; k += 2) {
      Rational lambda(k, 20);
      REQUIRE(certificate_ratio(J, lambda) >= certificate_ratio_floor(J, lambda));
    }
  }
}

TEST_CASE("exact primal solve: tiny cases and weak duality") {
  PrimalSolution s2 = solve_primal_exact(2, Rational(1, 2));
  REQUIRE(s2.result.status == SolveStatus::optimal);
  REQUIRE(s2.result.objective == Rational(4, 3));  // derived by hand from the 2-button LP
  REQUIRE(s2.lp.is_feasible(s2.result.solution));
  REQUIRE(s2.result.objective <= 2);  // pressing button 2 first is feasible with gamma = 2

  for (std::int64_t J = 2; J <= 8; ++J) {
    for (Rational lambda : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      PrimalSolution sol = solve_primal_exact(J, lambda);
      REQUIRE(sol.result.status == SolveStatus::optimal);
      REQUIRE(sol.lp.is_feasible(sol.result.solution));
      INFO("J " << J << " lambda " << format_rational(lambda));
      REQUIRE(sol.result.objective >= certificate_ratio(J, lambda));
      REQUIRE(sol.result.objective <= J);  // the singleton strategy x_J = 1
    }
  }
  REQUIRE_THROWS_AS(solve_primal_exact(20, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("robustness rows equal path-decomposed expected costs") {
  // Decompose the optimal (x, y) flow into explicit increasing press
  // sequences and recompute each row's expected cost from scratch.
  PrimalSolution sol = solve_primal_exact(4, Rational(1, 2));
  const auto& z = sol.result.solution;
  const PrimalIndex ix = sol.index;
  const std::int64_t J = 4;

  std::map<std::vector<int>, Rational> paths;
  std::vector<Rational> x(static_cast<std::size_t>(J));
  std::map<std::pair<int, int>, Rational> y;
  for (std::int64_t j = 1; j <= J; ++j) x[static_cast<std::size_t>(j - 1)] = z[ix.x(j)];
  for (std::int64_t t = 1; t < J; ++t)
    for (std::int64_t j = t + 1; j <= J; ++j)
      y[{static_cast<int>(t), static_cast<int>(j)}] = z[ix.y(t, j)];

  // peel paths greedily; flow conservation guarantees termination
  for (int guard = 0; guard < 200; ++guard) {
    int start = 0;
    for (std::int64_t j = 1; j <= J; ++j)
      if (x[static_cast<std::size_t>(j - 1)] > 0) {
        start = static_cast<int>(j);
        break;
      }
    if (start == 0) break;
    std::vector<int> path{start};
    Rational flow = x[static_cast<std::size_t>(start - 1)];
    int at = start;
    while (at != J) {
      int next = 0;
      for (std::int64_t j = at + 1; j <= J; ++j)
        if (y[{at, static_cast<int>(j)}] > 0) {
          next = static_cast<int>(j);
          break;
        }
      REQUIRE(next != 0);  // flow must continue to button J
      flow = std::min(flow, y[{at, next}]);
      path.push_back(next);
      at = next;
    }
    x[static_cast<std::size_t>(start - 1)] -= flow;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) y[{path[i], path[i + 1]}] -= flow;
    paths[path] += flow;
  }
  Rational mass(0);
  for (const auto& [path, p] : paths) mass += p;
  REQUIRE(mass == 1);

  for (std::int64_t target = 1; target <= J; ++target) {
    Rational expected(0);
    for (const auto& [path, p] : paths) {
      Rational cost(0);
      for (int button : path) {
        cost += button;
        if (button >= target) break;  // pressed a target, stop
      }
      expected += p * cost;
    }
    Rational row_lhs(0);
    for (std::int64_t jp = 1; jp <= J; ++jp) {
      Rational marginal = sol.result.solution[ix.x(jp)];
      for (std::int64_t t = 1; t <= std::min(target, jp) - 1; ++t)
        marginal += sol.result.solution[ix.y(t, jp)];
      row_lhs += jp * marginal;
    }
    REQUIRE(expected == row_lhs);
  }
}
