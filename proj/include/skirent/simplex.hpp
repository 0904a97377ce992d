#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "skirent/rational.hpp"

namespace skirent {

/// Dense LP: minimize c.z subject to row_i . z (<=|=|>=) b_i, z >= 0.
struct LinearProgram {
  enum class Rel { le, eq, ge };

  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rel> rels;
  std::vector<Rational> rhs;
  std::vector<std::string> var_names;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  void add_row(std::vector<Rational> coeffs, Rel rel, Rational b) {
    rows.push_back(std::move(coeffs));
    rels.push_back(rel);
    rhs.push_back(std::move(b));
  }

  Rational objective_value(const std::vector<Rational>& z) const {
    Rational v = 0;
    for (std::size_t j = 0; j < num_vars(); ++j) v += objective[j] * z[j];
    return v;
  }

  /// Exact feasibility check of a candidate point (including z >= 0).
  bool is_feasible(const std::vector<Rational>& z) const {
    if (z.size() != num_vars()) return false;
    for (const auto& zj : z)
      if (zj < 0) return false;
    for (std::size_t i = 0; i < num_rows(); ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < num_vars(); ++j) lhs += rows[i][j] * z[j];
      switch (rels[i]) {
        case Rel::le:
          if (lhs > rhs[i]) return false;
          break;
        case Rel::eq:
          if (lhs != rhs[i]) return false;
          break;
        case Rel::ge:
          if (lhs < rhs[i]) return false;
          break;
      }
    }
    return true;
  }
};

enum class SolveStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  SolveStatus status = SolveStatus::optimal;
  Rational objective = 0;
  std::vector<Rational> solution;  // structural variables only
  std::int64_t pivots = 0;
};

/// Exact two-phase tableau simplex with Bland's rule (guaranteed to
/// terminate). Dense rational arithmetic; intended for small certificates
/// and oracles, not large-scale solving.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

  SimplexResult solve() {
    SimplexResult res;
    // Phase 1: minimize the sum of artificials.
    if (n_art_ > 0) {
      set_costs_phase1();
      if (!iterate(/*allow_unbounded=*/false))
        throw DefectError("simplex: phase 1 reported unbounded");
      if (objective_value() != 0) {
        res.status = SolveStatus::infeasible;
        res.pivots = pivots_;
        return res;
      }
      expel_artificials();
    }
    set_costs_phase2();
    if (!iterate(/*allow_unbounded=*/true)) {
      res.status = SolveStatus::unbounded;
      res.pivots = pivots_;
      return res;
    }
    res.status = SolveStatus::optimal;
    res.solution.assign(lp_.num_vars(), Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < lp_.num_vars()) res.solution[basis_[i]] = tab_[i][cols_];
    res.objective = lp_.objective_value(res.solution);
    res.pivots = pivots_;
    return res;
  }

 private:
  void build() {
    m_ = lp_.num_rows();
    std::size_t n = lp_.num_vars();
    n_slack_ = 0;
    n_art_ = 0;
    // Normalize rhs >= 0, then count auxiliary columns.
    std::vector<std::vector<Rational>> rows = lp_.rows;
    std::vector<Rational> rhs = lp_.rhs;
    std::vector<LinearProgram::Rel> rels = lp_.rels;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs[i] < 0) {
        for (auto& a : rows[i]) a = -a;
        rhs[i] = -rhs[i];
        if (rels[i] == LinearProgram::Rel::le)
          rels[i] = LinearProgram::Rel::ge;
        else if (rels[i] == LinearProgram::Rel::ge)
          rels[i] = LinearProgram::Rel::le;
      }
      if (rels[i] != LinearProgram::Rel::eq) ++n_slack_;
      if (rels[i] != LinearProgram::Rel::le) ++n_art_;
    }
    cols_ = n + n_slack_ + n_art_;  // rhs kept at index cols_
    tab_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m_, 0);
    art_start_ = n + n_slack_;
    std::size_t slack_at = n, art_at = art_start_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n; ++j) tab_[i][j] = rows[i][j];
      tab_[i][cols_] = rhs[i];
      switch (rels[i]) {
        case LinearProgram::Rel::le:
          tab_[i][slack_at] = 1;
          basis_[i] = slack_at++;
          break;
        case LinearProgram::Rel::ge:
          tab_[i][slack_at] = -1;
          ++slack_at;
          tab_[i][art_at] = 1;
          basis_[i] = art_at++;
          break;
        case LinearProgram::Rel::eq:
          tab_[i][art_at] = 1;
          basis_[i] = art_at++;
          break;
      }
    }
  }

  void set_costs_phase1() {
    costs_.assign(cols_, Rational(0));
    for (std::size_t j = art_start_; j < cols_; ++j) costs_[j] = 1;
    rebuild_objective_row();
  }

  void set_costs_phase2() {
    costs_.assign(cols_, Rational(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) costs_[j] = lp_.objective[j];
    rebuild_objective_row();
  }

  void rebuild_objective_row() {
    obj_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j <= cols_; ++j) {
      Rational v = j < cols_ ? costs_[j] : Rational(0);
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& cb = costs_[basis_[i]];
        if (cb != 0) v -= cb * tab_[i][j];
      }
      obj_[j] = v;
    }
  }

  Rational objective_value() const { return -obj_[cols_]; }

  // Bland's rule: smallest eligible column; leaving row breaks ratio ties
  // toward the smallest basis variable. Returns false on unboundedness.
  bool iterate(bool allow_unbounded) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (in_phase2_ && j >= art_start_) break;  // artificials stay out
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rational ratio = tab_[i][cols_] / tab_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) {
        if (allow_unbounded) return false;
        throw DefectError("simplex: no leaving row in a bounded phase");
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    if (pivots_ > 2'000'000) throw DefectError("simplex: pivot limit exceeded");
    Rational inv = 1 / tab_[row][col];
    for (auto& v : tab_[row]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      Rational f = tab_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    if (obj_[col] != 0) {
      Rational f = obj_[col];
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  // After phase 1, swap any basic artificial (necessarily at value zero)
  // for a structural/slack column when possible; rows that stay artificial
  // are redundant and harmless since artificials never re-enter.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_start_) continue;
      for (std::size_t j = 0; j < art_start_; ++j) {
        if (tab_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    in_phase2_ = true;
  }

  const LinearProgram& lp_;
  std::size_t m_ = 0, cols_ = 0, n_slack_ = 0, n_art_ = 0, art_start_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> obj_;
  std::vector<Rational> costs_;
  std::vector<std::size_t> basis_;
  std::int64_t pivots_ = 0;
  bool in_phase2_ = false;
};

inline SimplexResult solve_lp(const LinearProgram& lp) { return Simplex(lp).solve(); }

}  // namespace skirent
