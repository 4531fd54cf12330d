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

#include <stdexcept>

#include "spinv/lp.hpp"

namespace spinv {

namespace {

// Shared scaffolding: objective (1 on t, 0 on h) and the two absolute-value
// rows t_ij - h_ij >= 0, t_ij + h_ij >= 0 per entry.
LpProblem make_epigraph_shell(int h_rows, int h_cols) {
  LpProblem p;
  p.h_rows = h_rows;
  p.h_cols = h_cols;
  const int nh = h_rows * h_cols;
  p.num_vars = 2 * nh;
  p.objective.assign(p.num_vars, 0.0);
  for (int k = 0; k < nh; ++k) p.objective[nh + k] = 1.0;
  p.ineq_rows.reserve(2 * nh);
  for (int k = 0; k < nh; ++k) {
    p.ineq_rows.push_back(LinRow{{{nh + k, 1.0}, {k, -1.0}}, 0.0});
    p.ineq_rows.push_back(LinRow{{{nh + k, 1.0}, {k, 1.0}}, 0.0});
  }
  return p;
}

}  // namespace

std::vector<LpProblem> build_left_inverse_lps(const DenseMatrix& a) {
  a.validate_finite("build_left_inverse_lps");
  const int m = a.rows();
  const int n = a.cols();
  // H is n x m; subproblem i owns row i of H and enforces h_{i.} A = e_i'.
  std::vector<LpProblem> subs;
  subs.reserve(n);
  for (int i = 0; i < n; ++i) {
    LpProblem p = make_epigraph_shell(1, m);
    p.eq_rows.reserve(n);
    for (int c = 0; c < n; ++c) {
      LinRow row;
      row.terms.reserve(m);
      for (int j = 0; j < m; ++j)
        if (a(j, c) != 0.0) row.terms.push_back({p.h_index(0, j), a(j, c)});
      row.rhs = (c == i) ? 1.0 : 0.0;
      p.eq_rows.push_back(std::move(row));
    }
    subs.push_back(std::move(p));
  }
  return subs;
}

std::vector<LpProblem> build_right_inverse_lps(const DenseMatrix& a) {
  a.validate_finite("build_right_inverse_lps");
  const int m = a.rows();
  const int n = a.cols();
  // H is n x m; subproblem j owns column j of H and enforces A h_{.j} = e_j.
  std::vector<LpProblem> subs;
  subs.reserve(m);
  for (int j = 0; j < m; ++j) {
    LpProblem p = make_epigraph_shell(n, 1);
    p.eq_rows.reserve(m);
    for (int k = 0; k < m; ++k) {
      LinRow row;
      row.terms.reserve(n);
      for (int l = 0; l < n; ++l)
        if (a(k, l) != 0.0) row.terms.push_back({p.h_index(l, 0), a(k, l)});
      row.rhs = (k == j) ? 1.0 : 0.0;
      p.eq_rows.push_back(std::move(row));
    }
    subs.push_back(std::move(p));
  }
  return subs;
}

LpProblem build_relaxed_mp_lp(const DenseMatrix& a, const PropertySet& props) {
  a.validate_finite("build_relaxed_mp_lp");
  if (!props.p1)
    throw std::invalid_argument(
        "build_relaxed_mp_lp: P1 is required (without it H = 0 is optimal)");
  const int m = a.rows();
  const int n = a.cols();
  LpProblem p = make_epigraph_shell(n, m);  // H is n x m

  // P1: (AHA)_{ik} = A_{ik}; the coefficient of h_{jl} is A_{ij} * A_{lk}.
  // Redundant rows of rank-deficient A are kept; phase 1 decides consistency.
  p.eq_rows.reserve(m * n + (props.p3 ? m * (m - 1) / 2 : 0) +
                    (props.p4 ? n * (n - 1) / 2 : 0));
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) {
      LinRow row;
      row.terms.reserve(n * m);
      for (int j = 0; j < n; ++j) {
        const double aij = a(i, j);
        if (aij == 0.0) continue;
        for (int l = 0; l < m; ++l) {
          const double c = aij * a(l, k);
          if (c != 0.0) row.terms.push_back({p.h_index(j, l), c});
        }
      }
      row.rhs = a(i, k);
      p.eq_rows.push_back(std::move(row));
    }
  }

  if (props.p3) {
    // (AH)_{ik} = (AH)_{ki} for i < k.
    for (int i = 0; i < m; ++i) {
      for (int k = i + 1; k < m; ++k) {
        LinRow row;
        row.terms.reserve(2 * n);
        for (int j = 0; j < n; ++j) {
          if (a(i, j) != 0.0) row.terms.push_back({p.h_index(j, k), a(i, j)});
          if (a(k, j) != 0.0) row.terms.push_back({p.h_index(j, i), -a(k, j)});
        }
        row.rhs = 0.0;
        p.eq_rows.push_back(std::move(row));
      }
    }
  }

  if (props.p4) {
    // (HA)_{jl} = (HA)_{lj} for j < l.
    for (int j = 0; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        LinRow row;
        row.terms.reserve(2 * m);
        for (int c = 0; c < m; ++c) {
          if (a(c, l) != 0.0) row.terms.push_back({p.h_index(j, c), a(c, l)});
          if (a(c, j) != 0.0) row.terms.push_back({p.h_index(l, c), -a(c, j)});
        }
        row.rhs = 0.0;
        p.eq_rows.push_back(std::move(row));
      }
    }
  }
  return p;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

}  // namespace spinv
