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

#include "spinv/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spinv/kernels.hpp"

namespace spinv {

namespace {

// One-sided Jacobi on the columns of w (m x n, m >= n). On return the
// columns of w are mutually orthogonal and v accumulates the rotations:
// w_out = a_in * v.
void jacobi_orthogonalize(DenseMatrix& w, DenseMatrix& v, const SvdOptions& opts) {
  const int m = w.rows();
  const int n = w.cols();
  double worst = 0.0;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    worst = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int i = 0; i < m; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          alpha += wp * wp;
          beta += wq * wq;
          gamma += wp * wq;
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        const double rel = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, rel);
        if (rel <= opts.tol) continue;
        // Rotation zeroing the (p,q) Gram entry.
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < m; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (worst <= opts.tol) return;
  }
  throw SvdConvergenceError(opts.max_sweeps, worst);
}

// Extend the first `have` orthonormal columns of u to a full orthonormal
// basis: greedily take the standard basis vector with the largest residual
// against the current span, with re-orthogonalized Gram-Schmidt.
void complete_basis(DenseMatrix& u, int have) {
  const int m = u.rows();
  std::vector<double> x(m);
  for (int next = have; next < m; ++next) {
    int best = -1;
    double best_norm = -1.0;
    std::vector<double> best_x;
    for (int cand = 0; cand < m; ++cand) {
      std::fill(x.begin(), x.end(), 0.0);
      x[cand] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int c = 0; c < next; ++c) {
          double proj = 0.0;
          for (int i = 0; i < m; ++i) proj += u(i, c) * x[i];
          for (int i = 0; i < m; ++i) x[i] -= proj * u(i, c);
        }
      }
      const double norm = std::sqrt(dot(x.data(), x.data(), m));
      if (norm > best_norm) {
        best_norm = norm;
        best = cand;
        best_x = x;
      }
    }
    if (best < 0 || best_norm < 1e-8) throw std::logic_error("svd: basis completion failed");
    for (int i = 0; i < m; ++i) u(i, next) = best_x[i] / best_norm;
  }
}

SvdFactors svd_tall(const DenseMatrix& a, const SvdOptions& opts) {
  const int m = a.rows();
  const int n = a.cols();
  DenseMatrix w = a;
  DenseMatrix v = DenseMatrix::identity(n);
  jacobi_orthogonalize(w, v, opts);

  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(sum);
  }

  // Sort singular values non-increasing, permuting the columns of w and v.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return sigma[x] > sigma[y]; });

  DenseMatrix u(m, m);
  DenseMatrix vs(n, n);
  std::vector<double> s(n);
  const double smax = sigma.empty() ? 0.0 : sigma[order[0]];
  int nonzero = 0;
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    s[j] = sigma[src];
    for (int i = 0; i < n; ++i) vs(i, j) = v(i, src);
    if (s[j] > smax * 1e-14 && s[j] > 0.0) {
      for (int i = 0; i < m; ++i) u(i, j) = w(i, src) / s[j];
      nonzero = j + 1;
    }
  }
  complete_basis(u, nonzero);
  return SvdFactors{std::move(u), std::move(s), std::move(vs)};
}

}  // namespace

SvdFactors svd(const DenseMatrix& a, const SvdOptions& opts) {
  if (a.rows() == 0 || a.cols() == 0) throw DimensionError("svd: empty matrix");
  a.validate_finite("svd");
  if (a.rows() >= a.cols()) return svd_tall(a, opts);
  SvdFactors f = svd_tall(a.transposed(), opts);
  return SvdFactors{std::move(f.v), std::move(f.s), std::move(f.u)};
}

double default_rank_tol(const DenseMatrix& a, const SvdFactors& f) {
  const double smax = f.s.empty() ? 0.0 : f.s[0];
  return std::numeric_limits<double>::epsilon() * std::max(a.rows(), a.cols()) * smax;
}

DenseMatrix mp_pinv(const DenseMatrix& a, double rank_tol) {
  SvdFactors f = svd(a);
  if (rank_tol <= 0.0) rank_tol = default_rank_tol(a, f);
  const int m = a.rows();
  const int n = a.cols();
  const int k = static_cast<int>(f.s.size());
  // A+ = V * Sigma+ * U' accumulated over the retained singular triplets.
  DenseMatrix pinv(n, m);
  for (int t = 0; t < k; ++t) {
    if (f.s[t] <= rank_tol) break;  // s is sorted
    const double inv = 1.0 / f.s[t];
    for (int i = 0; i < n; ++i) {
      const double vit = f.v(i, t) * inv;
      if (vit == 0.0) continue;
      double* prow = pinv.row(i);
      for (int j = 0; j < m; ++j) prow[j] += vit * f.u(j, t);
    }
  }
  return pinv;
}

PropertyResiduals mp_residuals(const DenseMatrix& a, const DenseMatrix& h) {
  if (a.rows() != h.cols() || a.cols() != h.rows())
    throw DimensionError("mp_residuals: H must have the transposed shape of A");
  const DenseMatrix ah = matmul(a, h);
  const DenseMatrix ha = matmul(h, a);
  PropertyResiduals r{};
  r.p1 = frobenius_norm(matmul(ah, a) - a);
  r.p2 = frobenius_norm(matmul(ha, h) - h);
  r.p3 = asymmetry(ah);
  r.p4 = asymmetry(ha);
  return r;
}

SymEig sym_eig(const DenseMatrix& s, int max_sweeps) {
  if (s.rows() != s.cols()) throw DimensionError("sym_eig: matrix not square");
  const int n = s.rows();
  DenseMatrix a = s;
  DenseMatrix v = DenseMatrix::identity(n);
  const double tol = 1e-14;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < n; ++i) {
      diag += std::abs(a(i, i));
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a(i, j)));
    }
    if (off <= tol * std::max(1.0, diag / n)) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tol * std::max(1.0, (std::abs(a(p, p)) + std::abs(a(q, q))) / 2))
          continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - sn * aiq;
          a(i, q) = sn * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - sn * aqi;
          a(q, i) = sn * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - sn * viq;
          v(i, q) = sn * vip + c * viq;
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x) > a(y, y); });
  SymEig e;
  e.values.resize(n);
  e.vectors = DenseMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    e.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
  }
  return e;
}

}  // namespace spinv
