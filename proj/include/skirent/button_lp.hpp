#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skirent/rational.hpp"
#include "skirent/simplex.hpp"

namespace skirent {

/// Button problem used as the lower-bound vehicle: buttons 1..J priced at
/// their index, targets form a suffix, and the prediction always points at
/// the last button.
struct ButtonInstance {
  std::int64_t num_buttons = 2;

  Rational price(std::int64_t j) const { return Rational(j); }
  std::int64_t predicted_target() const { return num_buttons; }
};

namespace detail {

inline void check_button_domain(std::int64_t J, const Rational& lambda) {
  if (J < 2) throw std::invalid_argument("button LP: J must be >= 2");
  if (lambda <= 0 || lambda >= 1)
    throw std::invalid_argument("button LP: lambda must lie in (0, 1)");
}

}  // namespace detail

/// Index bookkeeping for the primal variables x_1..x_J, y_{t,j} (t < j), gamma.
struct PrimalIndex {
  std::int64_t J = 0;

  std::size_t x(std::int64_t j) const { return static_cast<std::size_t>(j - 1); }
  std::size_t y(std::int64_t t, std::int64_t j) const {
    // y vars are laid out t = 1..J-1, j = t+1..J.
    std::int64_t before = (t - 1) * J - t * (t - 1) / 2;
    return static_cast<std::size_t>(J + before + (j - t - 1));
  }
  std::size_t gamma() const { return static_cast<std::size_t>(J + J * (J - 1) / 2); }
  std::size_t count() const { return gamma() + 1; }
};

/// The robustness LP over first-press probabilities x_j and consecutive-press
/// probabilities y_{t,j}: minimize the robustness gamma subject to the flow
/// balance of press sequences, one expected-cost row per possible first
/// target, and the consistency row at the predicted target.
inline std::pair<LinearProgram, PrimalIndex> build_primal(std::int64_t J,
                                                          const Rational& lambda) {
  detail::check_button_domain(J, lambda);
  PrimalIndex ix{J};
  LinearProgram lp;
  lp.objective.assign(ix.count(), Rational(0));
  lp.objective[ix.gamma()] = 1;
  lp.var_names.resize(ix.count());
  for (std::int64_t j = 1; j <= J; ++j) lp.var_names[ix.x(j)] = "x" + std::to_string(j);
  for (std::int64_t t = 1; t < J; ++t)
    for (std::int64_t j = t + 1; j <= J; ++j)
      lp.var_names[ix.y(t, j)] = "y" + std::to_string(t) + "_" + std::to_string(j);
  lp.var_names[ix.gamma()] = "gamma";

  std::vector<Rational> row(ix.count(), Rational(0));
  auto fresh = [&]() { std::fill(row.begin(), row.end(), Rational(0)); };

  // x is a probability distribution.
  fresh();
  for (std::int64_t j = 1; j <= J; ++j) row[ix.x(j)] = 1;
  lp.add_row(row, LinearProgram::Rel::eq, Rational(1));

  // Flow balance: presses leaving t match presses arriving at t.
  for (std::int64_t t = 1; t < J; ++t) {
    fresh();
    for (std::int64_t j = t + 1; j <= J; ++j) row[ix.y(t, j)] = 1;
    row[ix.x(t)] -= 1;
    for (std::int64_t j = 1; j < t; ++j) row[ix.y(j, t)] -= 1;
    lp.add_row(row, LinearProgram::Rel::eq, Rational(0));
  }

  // Expected cost when the first target is j, bounded by gamma * j.
  for (std::int64_t j = 1; j <= J; ++j) {
    fresh();
    for (std::int64_t jp = 1; jp <= J; ++jp) {
      row[ix.x(jp)] += jp;
      for (std::int64_t t = 1; t <= std::min(j, jp) - 1; ++t) row[ix.y(t, jp)] += jp;
    }
    row[ix.gamma()] = -j;
    lp.add_row(row, LinearProgram::Rel::le, Rational(0));
  }

  // Consistency at the predicted target J.
  fresh();
  for (std::int64_t jp = 1; jp <= J; ++jp) {
    row[ix.x(jp)] += jp;
    for (std::int64_t t = 1; t < jp; ++t) row[ix.y(t, jp)] += jp;
  }
  lp.add_row(row, LinearProgram::Rel::le, (1 + lambda) * J);

  return {std::move(lp), ix};
}

/// Explicit dual solution: v is 1 on the prefix 1..ell and 0 beyond,
/// vhat = J - ell, u_t = J(J - t), w = J^2.
struct DualCertificate {
  std::int64_t J = 0;
  Rational lambda;
  std::int64_t ell = 0;
  std::vector<Rational> v;  // v[j-1], j = 1..J
  Rational vhat;
  std::vector<Rational> u;  // u[t-1], t = 1..J (u_J = 0)
  Rational w;
  Rational objective() const { return w - (1 + lambda) * J * vhat; }
};

inline std::int64_t certificate_ell(std::int64_t J, const Rational& lambda) {
  return ceil_to_i64(2 * lambda / (1 + lambda) * J);
}

inline DualCertificate build_certificate(std::int64_t J, const Rational& lambda) {
  detail::check_button_domain(J, lambda);
  DualCertificate cert;
  cert.J = J;
  cert.lambda = lambda;
  cert.ell = certificate_ell(J, lambda);
  if (cert.ell < 1 || cert.ell > J) throw DefectError("certificate: ell out of range");
  cert.v.assign(static_cast<std::size_t>(J), Rational(0));
  for (std::int64_t j = 1; j <= cert.ell; ++j) cert.v[static_cast<std::size_t>(j - 1)] = 1;
  cert.vhat = Rational(J - cert.ell);
  cert.u.resize(static_cast<std::size_t>(J));
  for (std::int64_t t = 1; t <= J; ++t)
    cert.u[static_cast<std::size_t>(t - 1)] = Rational(J) * (J - t);
  cert.w = Rational(J) * J;
  return cert;
}

enum class CheckMode { automatic, exhaustive, structured };

struct FeasibilityReport {
  bool feasible = true;
  std::int64_t constraints_checked = 0;
  bool used_affine_shortcut = false;
  // Violated (t, j) pairs; t = 0 marks a w-row, t = -1 a sign/normalization row.
  std::vector<std::pair<std::int64_t, std::int64_t>> violations;

  void record(std::int64_t t, std::int64_t j) {
    feasible = false;
    if (violations.size() < 32) violations.emplace_back(t, j);
  }
};

namespace detail {

inline bool u_is_affine(const std::vector<Rational>& u) {
  if (u.size() < 3) return true;
  Rational step = u[1] - u[0];
  for (std::size_t i = 2; i < u.size(); ++i)
    if (u[i] - u[i - 1] != step) return false;
  return true;
}

/// Checks u_t - u_j <= j * (vhat + suffix_t) for all t < j <= j_max.
/// When u is affine in its index the t-row family is affine in j, so only
/// the endpoints j = t+1 and j = j_max need testing.
inline void check_pair_family(const DualCertificate& cert, std::int64_t j_max, CheckMode mode,
                              FeasibilityReport& rep) {
  std::vector<Rational> suffix(static_cast<std::size_t>(cert.J) + 1, Rational(0));
  for (std::int64_t j = cert.J; j >= 1; --j)
    suffix[static_cast<std::size_t>(j - 1)] =
        suffix[static_cast<std::size_t>(j)] + cert.v[static_cast<std::size_t>(j - 1)];
  bool affine = u_is_affine(cert.u);
  bool shortcut = mode == CheckMode::structured ||
                  (mode == CheckMode::automatic && affine && cert.J > 2000);
  if (shortcut && !affine)
    throw std::invalid_argument("feasibility: structured mode needs affine u");
  auto check_one = [&](std::int64_t t, std::int64_t j) {
    ++rep.constraints_checked;
    Rational lhs = cert.u[static_cast<std::size_t>(t - 1)] - cert.u[static_cast<std::size_t>(j - 1)];
    Rational rhs = j * (cert.vhat + suffix[static_cast<std::size_t>(t)]);
    if (lhs > rhs) rep.record(t, j);
  };
  rep.used_affine_shortcut = shortcut;
  for (std::int64_t t = 1; t < j_max; ++t) {
    if (shortcut) {
      check_one(t, t + 1);
      if (j_max > t + 1) check_one(t, j_max);
    } else {
      for (std::int64_t j = t + 1; j <= j_max; ++j) check_one(t, j);
    }
  }
}

}  // namespace detail

/// Exact feasibility of a certificate for the auxiliary dual (D2).
inline FeasibilityReport verify_d2_feasibility(const DualCertificate& cert,
                                               CheckMode mode = CheckMode::automatic) {
  FeasibilityReport rep;
  Rational total(0);
  for (const auto& vj : cert.v) {
    if (vj < 0) rep.record(-1, 0);
    total += vj;
  }
  if (cert.vhat < 0) rep.record(-1, 0);
  if (cert.u[static_cast<std::size_t>(cert.J - 1)] != 0) rep.record(-1, cert.J);
  rep.constraints_checked += cert.J + 2;
  for (std::int64_t j = 1; j <= cert.J; ++j) {
    ++rep.constraints_checked;
    Rational rhs = cert.u[static_cast<std::size_t>(j - 1)] + j * (cert.vhat + total);
    if (cert.w > rhs) rep.record(0, j);
  }
  detail::check_pair_family(cert, cert.J, mode, rep);
  return rep;
}

/// Exact feasibility for the real dual (D1): the normalization row plus the
/// D1 constraint families (which drop u_J and give button J its own rows).
inline FeasibilityReport verify_d1_feasibility(const DualCertificate& cert,
                                               CheckMode mode = CheckMode::automatic) {
  FeasibilityReport rep;
  Rational total(0), weighted(0);
  for (std::int64_t j = 1; j <= cert.J; ++j) {
    const Rational& vj = cert.v[static_cast<std::size_t>(j - 1)];
    if (vj < 0) rep.record(-1, j);
    total += vj;
    weighted += j * vj;
  }
  if (weighted != 1) rep.record(-1, 0);
  if (cert.vhat < 0) rep.record(-1, 0);
  rep.constraints_checked += cert.J + 2;
  // w-rows for j = 1..J-1 plus the terminal row w <= J (vhat + sum v).
  for (std::int64_t j = 1; j < cert.J; ++j) {
    ++rep.constraints_checked;
    if (cert.w > cert.u[static_cast<std::size_t>(j - 1)] + j * (cert.vhat + total))
      rep.record(0, j);
  }
  ++rep.constraints_checked;
  if (cert.w > cert.J * (cert.vhat + total)) rep.record(0, cert.J);
  // Pair rows up to j = J-1, then u_t <= J (vhat + suffix_t); with u_J = 0 in
  // the stored certificate these coincide with the D2 pair family at j = J.
  if (cert.u[static_cast<std::size_t>(cert.J - 1)] != 0)
    throw std::invalid_argument("verify_d1: expects a certificate carrying u_J = 0");
  detail::check_pair_family(cert, cert.J, mode, rep);
  return rep;
}

/// Divides every variable by sum_j j*v_j, turning a feasible D2 point into a
/// feasible D1 point with the normalization row tight.
inline std::pair<DualCertificate, Rational> scale_to_d1(const DualCertificate& cert) {
  Rational divisor(0);
  for (std::int64_t j = 1; j <= cert.J; ++j)
    divisor += j * cert.v[static_cast<std::size_t>(j - 1)];
  if (divisor == 0) throw std::invalid_argument("scale_to_d1: sum j*v_j is zero");
  DualCertificate out = cert;
  for (auto& vj : out.v) vj /= divisor;
  for (auto& ut : out.u) ut /= divisor;
  out.vhat /= divisor;
  out.w /= divisor;
  return {std::move(out), divisor};
}

/// Scaled certificate objective (w - (1+lambda) J vhat) / (ell(ell+1)/2); a
/// lower bound on the optimal robustness by weak duality, converging to
/// (1+lambda)^2 / (2 lambda) as J grows.
inline Rational certificate_ratio(std::int64_t J, const Rational& lambda) {
  detail::check_button_domain(J, lambda);
  std::int64_t ell = certificate_ell(J, lambda);
  Rational objective = Rational(J) * J - (1 + lambda) * J * (J - ell);
  return objective / (Rational(ell) * (ell + 1) / 2);
}

/// Closed-form lower bound on the scaled objective from the inequality chain.
inline Rational certificate_ratio_floor(std::int64_t J, const Rational& lambda) {
  Rational a = 2 * lambda / (1 + lambda) * J + 1;
  Rational b = lambda / (1 + lambda) * J + 1;
  return lambda * J * J / (a * b);
}

/// Limit value (1+lambda)^2 / (2 lambda) of the certificate ratio.
inline Rational certificate_ratio_limit(const Rational& lambda) {
  return (1 + lambda) * (1 + lambda) / (2 * lambda);
}

inline constexpr std::int64_t kMaxSimplexButtons = 14;

struct PrimalSolution {
  SimplexResult result;
  LinearProgram lp;
  PrimalIndex index;
};

/// Exact optimal robustness gamma* for small J via the rational simplex.
inline PrimalSolution solve_primal_exact(std::int64_t J, const Rational& lambda) {
  detail::check_button_domain(J, lambda);
  if (J > kMaxSimplexButtons)
    throw std::invalid_argument("solve_primal_exact: J exceeds the simplex cap of 14");
  auto [lp, ix] = build_primal(J, lambda);
  PrimalSolution out{solve_lp(lp), std::move(lp), ix};
  if (out.result.status != SolveStatus::optimal)
    throw DefectError("solve_primal_exact: LP should always have an optimum");
  return out;
}

}  // namespace skirent
