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
#include <set>
#include <stdexcept>

#include "spinv/sdp.hpp"
#include "spinv/svd.hpp"

namespace spinv {

DenseMatrix build_q(const DenseMatrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  DenseMatrix q(m + n, m + n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      q(i, m + j) = a(i, j);
      q(m + j, i) = a(i, j);
    }
  return q;
}

DenseMatrix build_qbar(const DenseMatrix& q) {
  if (q.rows() != q.cols()) throw DimensionError("build_qbar: q not square");
  if (asymmetry(q) > 1e-12 * std::max(1.0, max_abs(q)))
    throw std::invalid_argument("build_qbar: q not symmetric");
  const int d = q.rows();
  DenseMatrix qbar(d + 1, d + 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) qbar(i + 1, j + 1) = q(i, j);
  return qbar;
}

SdpProblem build_sdp(const DenseMatrix& a, const PropertySet& props,
                     const std::vector<std::pair<int, int>>& block_set) {
  const int m = a.rows();
  const int n = a.cols();
  SdpProblem p;
  p.m = m;
  p.n = n;
  p.base_lp = build_relaxed_mp_lp(a, props);
  p.q = build_q(a);
  p.qbar = build_qbar(p.q);

  std::set<std::pair<int, int>> seen;
  p.blocks.reserve(block_set.size());
  for (auto [i, j] : block_set) {
    if (i < 0 || i >= n || j < 0 || j >= m)
      throw std::invalid_argument("build_sdp: block index out of range");
    if (!seen.insert({i, j}).second)
      throw std::invalid_argument("build_sdp: duplicate block");
    LiftedBlockSpec spec;
    spec.i = i;
    spec.j = j;
    spec.dim = m + n + 1;
    spec.x_to_h.reserve(m + n);
    // x = [row i of H; column j of H]; the overlap entry h_ij appears twice.
    for (int l = 0; l < m; ++l) spec.x_to_h.push_back(p.base_lp.h_index(i, l));
    for (int l = 0; l < n; ++l) spec.x_to_h.push_back(p.base_lp.h_index(l, j));
    p.blocks.push_back(std::move(spec));
  }
  return p;
}

std::vector<SdpRow> sdp_constraint_rows(const SdpProblem& p) {
  std::vector<SdpRow> rows;
  const int d = p.m + p.n;
  for (int b = 0; b < static_cast<int>(p.blocks.size()); ++b) {
    const LiftedBlockSpec& spec = p.blocks[b];

    SdpRow corner;
    corner.z_terms.push_back({b, 0, 0, 1.0});
    corner.rhs = 1.0;
    rows.push_back(std::move(corner));

    for (int l = 0; l < d; ++l) {
      SdpRow border;
      border.z_terms.push_back({b, 0, 1 + l, 1.0});
      border.h_terms.push_back({spec.x_to_h[l], -1.0});
      border.rhs = 0.0;
      rows.push_back(std::move(border));
    }

    // (1/2) <Qbar, Z> = h_ij. Qbar is hollow with the A block off-diagonal,
    // so the symmetric pairs contribute A(r, c) * Z(1 + r, 1 + m + c).
    SdpRow coupling;
    for (int r = 0; r < p.m; ++r)
      for (int c = 0; c < p.n; ++c) {
        const double arc = p.qbar(1 + r, 1 + p.m + c);
        if (arc != 0.0) coupling.z_terms.push_back({b, 1 + r, 1 + p.m + c, arc});
      }
    coupling.h_terms.push_back({p.base_lp.h_index(spec.i, spec.j), -1.0});
    coupling.rhs = 0.0;
    rows.push_back(std::move(coupling));
  }
  return rows;
}

DenseMatrix lifted_block(const LiftedBlockSpec& spec, const DenseMatrix& h) {
  const int d = static_cast<int>(spec.x_to_h.size());
  if (spec.dim != d + 1) throw DimensionError("lifted_block: inconsistent spec");
  std::vector<double> x(d + 1);
  x[0] = 1.0;
  for (int l = 0; l < d; ++l) {
    const int v = spec.x_to_h[l];
    x[1 + l] = h.data()[v];
  }
  DenseMatrix z(d + 1, d + 1);
  for (int r = 0; r <= d; ++r)
    for (int c = 0; c <= d; ++c) z(r, c) = x[r] * x[c];
  return z;
}

DenseMatrix psd_project(const DenseMatrix& s, double sym_tol) {
  if (s.rows() != s.cols()) throw DimensionError("psd_project: matrix not square");
  const int n = s.rows();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(s(i, j) - s(j, i)));
  if (worst > sym_tol)
    throw std::invalid_argument("psd_project: input asymmetric beyond tolerance");

  DenseMatrix sym(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (s(i, j) + s(j, i));
  SymEig e = sym_eig(sym);
  DenseMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    const double lam = e.values[k];
    if (lam <= 0.0) break;  // values sorted non-increasing
    for (int i = 0; i < n; ++i) {
      const double vik = e.vectors(i, k) * lam;
      for (int j = 0; j < n; ++j) out(i, j) += vik * e.vectors(j, k);
    }
  }
  // Exact symmetry of the result regardless of rounding.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

double slater_diagnostic(const SdpProblem& p, const DenseMatrix& h) {
  double mineig = std::numeric_limits<double>::infinity();
  for (const LiftedBlockSpec& spec : p.blocks) {
    const DenseMatrix z = lifted_block(spec, h);
    SymEig e = sym_eig(z);
    mineig = std::min(mineig, e.values.back());
  }
  return mineig;
}

}  // namespace spinv
