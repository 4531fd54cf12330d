// Copyright 2026 the spinv authors
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

#ifndef SPINV_LP_HPP
#define SPINV_LP_HPP

#include <utility>
#include <vector>

#include "spinv/matrix.hpp"
#include "spinv/properties.hpp"

namespace spinv {

struct LinTerm {
  int var;
  double coef;
  bool operator==(const LinTerm&) const = default;
};

struct LinRow {
  std::vector<LinTerm> terms;
  double rhs = 0.0;
  bool operator==(const LinRow&) const = default;
};

// 1-norm minimization of an unknown matrix H (h_rows x h_cols) over linear
// equality constraints, in epigraph form. Variables are the free entries
// h_ij (indices [0, nh)) followed by their nonnegative epigraph partners
// t_ij (indices [nh, 2*nh)); the objective puts weight 1 on each t and 0 on
// each h, and ineq_rows lists the absolute-value rows t_ij - h_ij >= 0 and
// t_ij + h_ij >= 0. Equality rows reference h variables only.
struct LpProblem {
  int h_rows = 0;
  int h_cols = 0;
  int num_vars = 0;               // 2 * h_rows * h_cols
  std::vector<double> objective;  // size num_vars
  std::vector<LinRow> eq_rows;
  std::vector<LinRow> ineq_rows;  // sense: terms . vars >= rhs

  int num_h() const { return h_rows * h_cols; }
  // var_map: entry (i, j) of H <-> variable index.
  int h_index(int i, int j) const { return i * h_cols + j; }
  int t_index(int i, int j) const { return num_h() + i * h_cols + j; }

  bool operator==(const LpProblem&) const = default;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus s);

struct LpPivot {
  int entering;
  int leaving;
  bool operator==(const LpPivot&) const = default;
};

struct LpSolution {
  DenseMatrix h;              // recovered unknown, h_rows x h_cols
  double objective = 0.0;     // sum of t at the returned point
  LpStatus status = LpStatus::iteration_limit;
  double duality_gap = 0.0;   // objective - dual objective, original units
  int iterations = 0;
  double primal_infeasibility = 0.0;  // max equality-row violation, original units
  double dual_infeasibility = 0.0;    // max dual-constraint violation
  std::vector<int> basis;             // h-variable indices basic at the end
  std::vector<LpPivot> pivots;        // (entering, leaving) per iteration
  std::vector<double> dual;           // equality-row multipliers, original units
  std::vector<double> farkas;         // infeasibility certificate (status infeasible)
  double phase1_objective = 0.0;      // residual of the phase-1 minimum
};

struct LpOptions {
  double tol = 1e-9;
  enum class Pricing { dantzig, bland } pricing = Pricing::dantzig;
  long max_iterations = 0;  // 0: choose from problem size
};

// One subproblem per row of H for min ||H||_1 s.t. HA = I (and per column
// of H for AH = I). Subproblem i constrains its row h_{i.} to A'h' = e_i;
// concatenating the row solutions gives the full optimum because the
// objective separates row-wise.
std::vector<LpProblem> build_left_inverse_lps(const DenseMatrix& a);
std::vector<LpProblem> build_right_inverse_lps(const DenseMatrix& a);

// min ||H||_1 subject to AHA = A plus the requested symmetry constraints
// ((AH)' = AH when p3, (HA)' = HA when p4). props.p1 must be set: without
// it the zero matrix would be optimal. The generalized-inverse rows couple
// every entry of H, so no decomposition is attempted.
LpProblem build_relaxed_mp_lp(const DenseMatrix& a, const PropertySet& props);

LpSolution solve_lp(const LpProblem& p, const LpOptions& opts);
LpSolution solve_lp(const LpProblem& p, double tol = 1e-9);

// Solve independent problems, optionally fanning out over a thread pool.
// Results are positionally identical to serial solves.
std::vector<LpSolution> solve_lps(const std::vector<LpProblem>& problems,
                                  const LpOptions& opts, bool parallel);

}  // namespace spinv

#endif  // SPINV_LP_HPP
