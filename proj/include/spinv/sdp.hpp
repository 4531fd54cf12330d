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

#ifndef SPINV_SDP_HPP
#define SPINV_SDP_HPP

#include <utility>
#include <vector>

#include "spinv/lp.hpp"
#include "spinv/matrix.hpp"
#include "spinv/properties.hpp"

namespace spinv {

// One lifted PSD block per selected entry (i, j) of H (n x m). The block
// variable Z_ij is (m+n+1) x (m+n+1):
//
//   Z_ij = [ x0   x'  ]   with x = [ row i of H ; column j of H ],
//          [ x    Hij ]
//
// x0 = 1 and Z_ij >= 0 relax the quadratic entry equation of HAH = H.
struct LiftedBlockSpec {
  int i = 0;    // row index into H
  int j = 0;    // column index into H
  int dim = 0;  // m + n + 1
  // selector: x_k equals the H entry with variable index x_to_h[k].
  std::vector<int> x_to_h;

  bool operator==(const LiftedBlockSpec&) const = default;
};

// Linear constraint over H entries and block entries. Each symmetric block
// entry Z(r, c) (r <= c) appears at most once; its coefficient multiplies
// the value of that entry.
struct SdpRow {
  struct ZTerm {
    int block;
    int r;
    int c;
    double coef;
    bool operator==(const ZTerm&) const = default;
  };
  std::vector<LinTerm> h_terms;
  std::vector<ZTerm> z_terms;
  double rhs = 0.0;

  bool operator==(const SdpRow&) const = default;
};

struct SdpProblem {
  int m = 0;  // rows of A
  int n = 0;  // cols of A
  LpProblem base_lp;                   // P1 (+P3/P4) rows and the 1-norm epigraph
  std::vector<LiftedBlockSpec> blocks;
  DenseMatrix q;     // [[0, A], [A', 0]], (m+n) x (m+n)
  DenseMatrix qbar;  // q bordered by a zero row/column
};

// Q := [[0_m, A], [A', 0_n]]; (1/2) x' Q x with x = [row_i(H); col_j(H)]
// equals (HAH)_{ij}.
DenseMatrix build_q(const DenseMatrix& a);

// Border q with a zero row/column, so (1/2) <Qbar, Z_ij> = (1/2) x' Q x at
// the rank-1 lift.
DenseMatrix build_qbar(const DenseMatrix& q);

// Assemble the relaxation: the LP rows for `props` plus one lifted block per
// entry in block_set (pairs (i, j) indexing H, 0-based). An empty block_set
// reduces the problem to the plain LP. props.p1 is required.
SdpProblem build_sdp(const DenseMatrix& a, const PropertySet& props,
                     const std::vector<std::pair<int, int>>& block_set);

// The coupling rows tying blocks to H: per block, the corner equation
// Z(0,0) = 1, the border rows Z(0,l) = x_l, and (1/2) <Qbar, Z> = h_ij.
std::vector<SdpRow> sdp_constraint_rows(const SdpProblem& p);

// Rank-1 lift of H restricted to one block: (1, x)(1, x)'.
DenseMatrix lifted_block(const LiftedBlockSpec& spec, const DenseMatrix& h);

// Nearest (Frobenius) positive semidefinite matrix: eigendecompose and clamp
// negative eigenvalues. Input must be symmetric within sym_tol (max entry).
DenseMatrix psd_project(const DenseMatrix& s, double sym_tol = 1e-10);

struct SdpParams {
  double rho = 1.0;         // splitting step
  double over_relax = 1.6;  // relaxation factor
  double tol = 1e-5;        // residual stopping threshold
  long max_iterations = 20000;
  // Convergence additionally requires block corners within corner_tol of 1.
  double corner_tol = 1e-6;
};

struct SdpSolution {
  DenseMatrix h;
  std::vector<DenseMatrix> z_blocks;  // cone-side iterates, exactly PSD
  double objective = 0.0;             // 1-norm objective at the returned h
  double primal_residual = 0.0;       // max |affine iterate - cone iterate|
  double dual_residual = 0.0;
  double min_block_eig = 0.0;
  double max_corner_dev = 0.0;        // max |Z(0,0) - 1| over blocks
  long iterations = 0;
  bool converged = false;
};

// Alternating-direction splitting between (a) the affine subspace of all
// equality rows (LP rows, corner/border/coupling rows; the 1-norm objective
// enters this step) and (b) the product of the PSD cones, one projection
// per block, and the 1-norm epigraph cone on the (h, t) pairs.
SdpSolution solve_sdp(const SdpProblem& p, const SdpParams& params = {});

// Minimum block eigenvalue at the rank-1 lift of H. For H = A+, the lifts
// sit on the cone boundary, so this reports ~0: the relaxation admits no
// strictly feasible point there and the solver must not rely on one.
double slater_diagnostic(const SdpProblem& p, const DenseMatrix& h);

}  // namespace spinv

#endif  // SPINV_SDP_HPP
