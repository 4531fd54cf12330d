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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spinv/parallel.hpp"
#include "spinv/sdp.hpp"
#include "spinv/svd.hpp"

namespace spinv {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Stacked iterate layout: h entries, t entries, then per block the scaled
// upper triangle (svec: off-diagonals times sqrt(2)), so the Euclidean norm
// of the vector matches the Frobenius norm of the symmetric blocks and both
// projections act in the same metric.
struct Layout {
  int nh = 0;
  int nblocks = 0;
  int block_dim = 0;
  long block_len = 0;
  long total = 0;

  long t_offset() const { return nh; }
  long block_offset(int b) const { return 2L * nh + b * block_len; }
  long tri_index(int r, int c) const {  // r <= c
    return static_cast<long>(r) * block_dim - static_cast<long>(r) * (r + 1) / 2 + c;
  }
};

struct SparseRow {
  std::vector<long> idx;
  std::vector<double> val;
  double rhs = 0.0;
};

// Dense Cholesky with a small diagonal shift; the coupling rows of
// rank-deficient instances repeat information, so the Gram matrix of the
// constraints can be singular.
class NormalSolver {
 public:
  void factor(const std::vector<SparseRow>& rows, long dim) {
    n_ = static_cast<int>(rows.size());
    l_.assign(static_cast<long>(n_) * n_, 0.0);
    // Gram matrix via column -> rows adjacency.
    std::vector<std::vector<std::pair<int, double>>> by_col(dim);
    for (int r = 0; r < n_; ++r)
      for (size_t k = 0; k < rows[r].idx.size(); ++k)
        by_col[rows[r].idx[k]].push_back({r, rows[r].val[k]});
    for (const auto& col : by_col)
      for (size_t a = 0; a < col.size(); ++a)
        for (size_t b = a; b < col.size(); ++b) {
          const int ra = col[a].first, rb = col[b].first;
          const double v = col[a].second * col[b].second;
          l_[static_cast<long>(std::max(ra, rb)) * n_ + std::min(ra, rb)] += v;
        }
    double dmax = 1.0;
    for (int i = 0; i < n_; ++i) dmax = std::max(dmax, l_[static_cast<long>(i) * n_ + i]);
    const double shift = 1e-10 * dmax;
    for (int i = 0; i < n_; ++i) l_[static_cast<long>(i) * n_ + i] += shift;

    for (int j = 0; j < n_; ++j) {
      double* lj = l_.data() + static_cast<long>(j) * n_;
      double d = lj[j];
      for (int k = 0; k < j; ++k) d -= lj[k] * lj[k];
      if (d <= 0.0) throw std::runtime_error("solve_sdp: constraint Gram factorization failed");
      lj[j] = std::sqrt(d);
#pragma omp parallel for schedule(static) if (n_ - j > 512) \
    num_threads(parallel::max_threads())
      for (int i = j + 1; i < n_; ++i) {
        double* li = l_.data() + static_cast<long>(i) * n_;
        double s = li[j];
        for (int k = 0; k < j; ++k) s -= li[k] * lj[k];
        li[j] = s / lj[j];
      }
    }
  }

  // Solve (C C' + shift I) x = b in place.
  void solve(std::vector<double>& b) const {
    for (int i = 0; i < n_; ++i) {
      const double* li = l_.data() + static_cast<long>(i) * n_;
      double s = b[i];
      for (int k = 0; k < i; ++k) s -= li[k] * b[k];
      b[i] = s / li[i];
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = b[i];
      for (int k = i + 1; k < n_; ++k) s -= l_[static_cast<long>(k) * n_ + i] * b[k];
      b[i] = s / l_[static_cast<long>(i) * n_ + i];
    }
  }

 private:
  int n_ = 0;
  std::vector<double> l_;  // lower triangle, row-major
};

// Projection of (a, b) onto the 2D cone {(h, t): |h| <= t}.
inline void project_abs_pair(double& a, double& b) {
  if (std::abs(a) <= b) return;
  if (std::abs(a) <= -b) {
    a = 0.0;
    b = 0.0;
    return;
  }
  const double mu = 0.5 * (std::abs(a) + b);
  a = a >= 0.0 ? mu : -mu;
  b = mu;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpParams& params) {
  const LpProblem& lp = p.base_lp;
  Layout lay;
  lay.nh = lp.num_h();
  lay.nblocks = static_cast<int>(p.blocks.size());
  lay.block_dim = p.m + p.n + 1;
  lay.block_len = static_cast<long>(lay.block_dim) * (lay.block_dim + 1) / 2;
  lay.total = 2L * lay.nh + static_cast<long>(lay.nblocks) * lay.block_len;

  // Affine rows: LP equality rows over h, then corner/border/coupling rows.
  std::vector<SparseRow> rows;
  rows.reserve(lp.eq_rows.size() + p.blocks.size() * (lay.block_dim + 1));
  for (const LinRow& er : lp.eq_rows) {
    SparseRow r;
    for (const LinTerm& t : er.terms) {
      r.idx.push_back(t.var);
      r.val.push_back(t.coef);
    }
    r.rhs = er.rhs;
    rows.push_back(std::move(r));
  }
  for (const SdpRow& sr : sdp_constraint_rows(p)) {
    SparseRow r;
    for (const LinTerm& t : sr.h_terms) {
      r.idx.push_back(t.var);
      r.val.push_back(t.coef);
    }
    for (const SdpRow::ZTerm& z : sr.z_terms) {
      const long pos = lay.block_offset(z.block) + lay.tri_index(z.r, z.c);
      // Stored entry is sqrt(2) * Z(r, c) off the diagonal.
      r.idx.push_back(pos);
      r.val.push_back(z.r == z.c ? z.coef : z.coef / kSqrt2);
    }
    r.rhs = sr.rhs;
    rows.push_back(std::move(r));
  }
  // Unit infinity-norm row scaling.
  for (SparseRow& r : rows) {
    double amax = 0.0;
    for (double v : r.val) amax = std::max(amax, std::abs(v));
    if (amax > 0.0) {
      for (double& v : r.val) v /= amax;
      r.rhs /= amax;
    }
  }
  const int nrows = static_cast<int>(rows.size());

  NormalSolver normal;
  normal.factor(rows, lay.total);

  // Objective vector over (h, t) coordinates.
  std::vector<double> cost(lay.total, 0.0);
  for (int k = 0; k < 2 * lay.nh; ++k) cost[k] = lp.objective[k] / params.rho;

  std::vector<double> u(lay.total, 0.0), v(lay.total, 0.0), dualvar(lay.total, 0.0);
  std::vector<double> vprev(lay.total, 0.0), work(lay.total, 0.0);
  std::vector<double> rvec(nrows, 0.0);

  auto affine_project = [&](std::vector<double>& x) {
    for (int r = 0; r < nrows; ++r) {
      double s = -rows[r].rhs;
      const SparseRow& row = rows[r];
      for (size_t k = 0; k < row.idx.size(); ++k) s += row.val[k] * x[row.idx[k]];
      rvec[r] = s;
    }
    normal.solve(rvec);
    for (int r = 0; r < nrows; ++r) {
      const double yr = rvec[r];
      if (yr == 0.0) continue;
      const SparseRow& row = rows[r];
      for (size_t k = 0; k < row.idx.size(); ++k) x[row.idx[k]] -= row.val[k] * yr;
    }
  };

  const int bd = lay.block_dim;

  auto cone_project = [&](std::vector<double>& x) {
    for (int k = 0; k < lay.nh; ++k) project_abs_pair(x[k], x[lay.t_offset() + k]);
    const int nb = lay.nblocks;
#pragma omp parallel for schedule(static) if (nb > 1) \
    num_threads(parallel::max_threads())
    for (int b = 0; b < nb; ++b) {
      DenseMatrix zfull(bd, bd);
      double* zb = x.data() + lay.block_offset(b);
      for (int r = 0; r < bd; ++r)
        for (int c = r; c < bd; ++c) {
          const double val = zb[lay.tri_index(r, c)] * (r == c ? 1.0 : 1.0 / kSqrt2);
          zfull(r, c) = val;
          zfull(c, r) = val;
        }
      const DenseMatrix proj = psd_project(zfull, 1e-8);
      for (int r = 0; r < bd; ++r)
        for (int c = r; c < bd; ++c)
          zb[lay.tri_index(r, c)] = proj(r, c) * (r == c ? 1.0 : kSqrt2);
    }
  };

  double rp = std::numeric_limits<double>::infinity();
  double rd = std::numeric_limits<double>::infinity();
  double corner_dev = 0.0;
  long it = 0;
  const double alpha = params.over_relax;

  for (it = 0; it < params.max_iterations; ++it) {
    // u-step: affine projection of v - dual - c/rho.
    for (long k = 0; k < lay.total; ++k) u[k] = v[k] - dualvar[k] - cost[k];
    affine_project(u);

    vprev = v;
    // v-step on the over-relaxed point.
    for (long k = 0; k < lay.total; ++k)
      v[k] = alpha * u[k] + (1.0 - alpha) * vprev[k] + dualvar[k];
    cone_project(v);
    for (long k = 0; k < lay.total; ++k)
      dualvar[k] += alpha * u[k] + (1.0 - alpha) * vprev[k] - v[k];

    rp = 0.0;
    rd = 0.0;
    for (long k = 0; k < lay.total; ++k) {
      rp = std::max(rp, std::abs(u[k] - v[k]));
      rd = std::max(rd, params.rho * std::abs(v[k] - vprev[k]));
    }
    corner_dev = 0.0;
    for (int b = 0; b < lay.nblocks; ++b)
      corner_dev = std::max(
          corner_dev, std::abs(v[lay.block_offset(b) + lay.tri_index(0, 0)] - 1.0));
    if (rp <= params.tol && rd <= params.tol && corner_dev <= params.corner_tol) {
      ++it;
      break;
    }
  }

  SdpSolution sol;
  sol.iterations = it;
  sol.primal_residual = rp;
  sol.dual_residual = rd;
  sol.max_corner_dev = corner_dev;
  sol.converged = rp <= params.tol && rd <= params.tol && corner_dev <= params.corner_tol;

  // Report H from the affine side: the returned point satisfies the enforced
  // linear properties to solve accuracy rather than to the cone tolerance.
  sol.h = DenseMatrix(lp.h_rows, lp.h_cols);
  for (int k = 0; k < lay.nh; ++k)
    sol.h(k / lp.h_cols, k % lp.h_cols) = u[k];
  double obj = 0.0;
  for (int k = 0; k < lay.nh; ++k)
    obj += lp.objective[k] * u[k] + lp.objective[lay.t_offset() + k] * std::abs(u[k]);
  sol.objective = obj;

  sol.min_block_eig = lay.nblocks > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  sol.z_blocks.reserve(lay.nblocks);
  for (int b = 0; b < lay.nblocks; ++b) {
    DenseMatrix z(bd, bd);
    const double* zb = v.data() + lay.block_offset(b);
    for (int r = 0; r < bd; ++r)
      for (int c = r; c < bd; ++c) {
        const double val = zb[lay.tri_index(r, c)] * (r == c ? 1.0 : 1.0 / kSqrt2);
        z(r, c) = val;
        z(c, r) = val;
      }
    SymEig e = sym_eig(z);
    sol.min_block_eig = std::min(sol.min_block_eig, e.values.back());
    sol.z_blocks.push_back(std::move(z));
  }
  return sol;
}

}  // namespace spinv
