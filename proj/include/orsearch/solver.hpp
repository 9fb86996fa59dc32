// Copyright 2026 The orsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Desk-scale LP / MIP solver: dense two-phase primal simplex with Bland's
// rule, and depth-first branch-and-bound on the most fractional column.
// Sized for the small models of a modeling dataset, not for performance.

#ifndef ORSEARCH_SOLVER_HPP_
#define ORSEARCH_SOLVER_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "orsearch/instantiate.hpp"

namespace orsearch {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

constexpr std::string_view status_text(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

struct SolverOptions {
  std::size_t max_pivots = 10000;  // per LP solve
  std::size_t max_nodes = 100000;  // branch-and-bound nodes
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-6;
  double integrality_tolerance = 1e-6;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<double> objective_value;  // set iff Optimal
  std::vector<double> assignment;         // by column; empty unless Optimal
  std::size_t pivots = 0;
  std::size_t nodes = 0;
};

namespace solver_detail {

struct Row {
  std::vector<double> coef;  // dense, one per structural column
  Relation relation;         // kLE, kGE or kEQ
  double rhs;
};

struct LpOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  double value = 0.0;  // of the maximized objective
  std::vector<double> x;
  std::size_t pivots = 0;
};

class Tableau {
 public:
  Tableau(const std::vector<Row>& rows, std::size_t n,
          const SolverOptions& opt)
      : n_(n), opt_(opt) {
    m_ = rows.size();
    std::size_t slacks = 0, arts = 0;
    for (const auto& r : rows) {
      if (r.relation != Relation::kEQ) ++slacks;
      const bool flip = r.rhs < 0.0;
      Relation rel = r.relation;
      if (flip && rel != Relation::kEQ) rel = reversed(rel);
      if (rel != Relation::kLE) ++arts;
    }
    first_art_ = n_ + slacks;
    cols_ = first_art_ + arts;
    stride_ = cols_ + 1;
    t_.assign((m_ + 1) * stride_, 0.0);
    basis_.assign(m_, 0);
    banned_.assign(cols_, false);

    std::size_t s = n_, a = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& r = rows[i];
      const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
      Relation rel = r.relation;
      if (sign < 0.0 && rel != Relation::kEQ) rel = reversed(rel);
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * r.coef[j];
      at(i, cols_) = sign * r.rhs;
      if (rel == Relation::kLE) {
        at(i, s) = 1.0;
        basis_[i] = s++;
      } else if (rel == Relation::kGE) {
        at(i, s++) = -1.0;
        at(i, a) = 1.0;
        basis_[i] = a++;
      } else {
        at(i, a) = 1.0;
        basis_[i] = a++;
      }
    }
  }

  // Maximizes `c` (structural columns only) subject to the rows.
  LpOutcome solve(const std::vector<double>& c) {
    LpOutcome out;
    if (first_art_ < cols_) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = first_art_; j < cols_; ++j) phase1[j] = -1.0;
      set_objective(phase1);
      const SolveStatus st = iterate();
      out.pivots = pivots_;
      if (st == SolveStatus::kIterationLimit) {
        out.status = st;
        return out;
      }
      if (at(m_, cols_) < -opt_.feasibility_tolerance) {
        out.status = SolveStatus::kInfeasible;
        return out;
      }
      drive_out_artificials();
      for (std::size_t j = first_art_; j < cols_; ++j) banned_[j] = true;
    }
    std::vector<double> phase2(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = c[j];
    set_objective(phase2);
    out.status = iterate();
    out.pivots = pivots_;
    if (out.status != SolveStatus::kOptimal) return out;
    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = at(i, cols_);
    }
    out.value = at(m_, cols_);
    return out;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * stride_ + j]; }

  // Objective row holds reduced costs c_B B^-1 A_j - c_j and, in the rhs
  // column, the current objective value.
  void set_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      double v = j < cols_ ? -c[j] : 0.0;
      for (std::size_t i = 0; i < m_; ++i) v += c[basis_[i]] * at(i, j);
      at(m_, j) = v;
    }
  }

  SolveStatus iterate() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!banned_[j] && at(m_, j) < -opt_.pivot_tolerance) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return SolveStatus::kOptimal;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= opt_.pivot_tolerance) continue;
        const double ratio = at(i, cols_) / a;
        if (leave == m_ || ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
          leave = i;  // Bland: lowest basic index among ties
        }
      }
      if (leave == m_) return SolveStatus::kUnbounded;
      if (pivots_ >= opt_.max_pivots) return SolveStatus::kIterationLimit;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
      if (i < m_ && at(i, cols_) < 0.0 && at(i, cols_) > -1e-11) {
        at(i, cols_) = 0.0;
      }
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      std::size_t col = cols_;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (std::fabs(at(i, j)) > opt_.pivot_tolerance) {
          col = j;
          break;
        }
      }
      if (col < cols_) {
        pivot(i, col);
      } else {
        // Redundant row: zero it so it cannot constrain phase 2.
        for (std::size_t j = 0; j <= cols_; ++j) at(i, j) = 0.0;
        at(i, basis_[i]) = 1.0;
      }
    }
  }

  std::size_t n_, m_ = 0, cols_ = 0, first_art_ = 0, stride_ = 0;
  const SolverOptions& opt_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> banned_;
  std::size_t pivots_ = 0;
};

inline std::vector<Row> base_rows(const ConcreteModel& m) {
  std::vector<Row> rows;
  const std::size_t n = m.variables.size();
  for (const auto& c : m.constraints) {
    Row r{std::vector<double>(n, 0.0), c.relation, c.rhs};
    for (const auto& [col, v] : c.lhs.coefficients) r.coef[col] = v;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<double> max_costs(const ConcreteModel& m) {
  std::vector<double> c(m.variables.size(), 0.0);
  const double sign = m.sense == Sense::kMax ? 1.0 : -1.0;
  for (const auto& [col, v] : m.objective.coefficients) c[col] = sign * v;
  return c;
}

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

inline LpOutcome solve_node(const ConcreteModel& m, const std::vector<Row>& base,
                            const std::vector<double>& costs, const Bounds& b,
                            const SolverOptions& opt) {
  const std::size_t n = m.variables.size();
  std::vector<Row> rows = base;
  for (std::size_t j = 0; j < n; ++j) {
    if (b.lower[j] > 0.0) {
      Row r{std::vector<double>(n, 0.0), Relation::kGE, b.lower[j]};
      r.coef[j] = 1.0;
      rows.push_back(std::move(r));
    }
    if (std::isfinite(b.upper[j])) {
      Row r{std::vector<double>(n, 0.0), Relation::kLE, b.upper[j]};
      r.coef[j] = 1.0;
      rows.push_back(std::move(r));
    }
  }
  Tableau tab(rows, n, opt);
  return tab.solve(costs);
}

inline Bounds default_bounds(const ConcreteModel& m) {
  Bounds b;
  for (const auto& v : m.variables) {
    b.lower.push_back(0.0);
    b.upper.push_back(v.type == VarType::kBinary
                          ? 1.0
                          : std::numeric_limits<double>::infinity());
  }
  return b;
}

inline SolveResult finish(const ConcreteModel& m, std::vector<double> x,
                          bool snap_integers) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (snap_integers && m.variables[j].type != VarType::kContinuous) {
      x[j] = std::round(x[j]);
    } else if (x[j] < 0.0 && x[j] > -1e-9) {
      x[j] = 0.0;
    }
  }
  SolveResult r;
  r.status = SolveStatus::kOptimal;
  r.objective_value = m.objective.evaluate(x);
  r.assignment = std::move(x);
  return r;
}

}  // namespace solver_detail

// Solves the LP relaxation (integrality dropped, binary columns kept in
// [0, 1]).
inline SolveResult solve_lp(const ConcreteModel& model,
                            const SolverOptions& options = {}) {
  using namespace solver_detail;
  const auto base = base_rows(model);
  const auto costs = max_costs(model);
  LpOutcome lp = solve_node(model, base, costs, default_bounds(model), options);
  SolveResult r;
  if (lp.status == SolveStatus::kOptimal) {
    r = finish(model, std::move(lp.x), false);
  } else {
    r.status = lp.status;
  }
  r.pivots = lp.pivots;
  r.nodes = 1;
  return r;
}

// Exact integer optimum by branch-and-bound over the LP relaxation.
inline SolveResult solve_mip(const ConcreteModel& model,
                             const SolverOptions& options = {}) {
  using namespace solver_detail;
  const auto base = base_rows(model);
  const auto costs = max_costs(model);

  std::vector<Bounds> stack{default_bounds(model)};
  std::optional<double> incumbent;
  std::vector<double> best_x;
  SolveResult result;

  while (!stack.empty()) {
    Bounds node = std::move(stack.back());
    stack.pop_back();
    if (result.nodes >= options.max_nodes) {
      result.status = SolveStatus::kIterationLimit;
      return result;
    }
    ++result.nodes;
    LpOutcome lp = solve_node(model, base, costs, node, options);
    result.pivots += lp.pivots;
    if (lp.status == SolveStatus::kIterationLimit) {
      result.status = SolveStatus::kIterationLimit;
      return result;
    }
    if (lp.status == SolveStatus::kInfeasible) continue;
    if (lp.status == SolveStatus::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      return result;
    }
    if (incumbent && lp.value <= *incumbent + 1e-9) continue;

    std::size_t branch_col = lp.x.size();
    double widest = options.integrality_tolerance;
    for (std::size_t j = 0; j < lp.x.size(); ++j) {
      if (model.variables[j].type == VarType::kContinuous) continue;
      const double frac = lp.x[j] - std::floor(lp.x[j]);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist > widest) {
        widest = dist;
        branch_col = j;
      }
    }
    if (branch_col == lp.x.size()) {
      incumbent = lp.value;
      best_x = std::move(lp.x);
      continue;
    }
    const double v = lp.x[branch_col];
    Bounds down = node, up = node;
    down.upper[branch_col] = std::floor(v);
    up.lower[branch_col] = std::ceil(v);
    // Explore the nearer rounding first (pushed last).
    if (v - std::floor(v) < 0.5) {
      stack.push_back(std::move(up));
      stack.push_back(std::move(down));
    } else {
      stack.push_back(std::move(down));
      stack.push_back(std::move(up));
    }
  }
  if (!incumbent) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  SolveResult r = finish(model, std::move(best_x), true);
  r.pivots = result.pivots;
  r.nodes = result.nodes;
  return r;
}

}  // namespace orsearch

#endif  // ORSEARCH_SOLVER_HPP_
