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

#ifndef SPINV_SVD_HPP
#define SPINV_SVD_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "spinv/matrix.hpp"

namespace spinv {

class SvdConvergenceError : public std::runtime_error {
 public:
  SvdConvergenceError(int sweeps, double off)
      : std::runtime_error("svd: no convergence after " + std::to_string(sweeps) +
                           " sweeps (worst relative off-diagonal " + std::to_string(off) + ")"),
        sweeps_done(sweeps),
        worst_offdiag(off) {}
  int sweeps_done;
  double worst_offdiag;
};

// A = U * diag(S) * V', with U (m x m) and V (n x n) orthogonal and
// S the min(m, n) singular values sorted non-increasing.
struct SvdFactors {
  DenseMatrix u;
  std::vector<double> s;
  DenseMatrix v;
};

struct SvdOptions {
  int max_sweeps = 60;
  // A column pair is considered orthogonal when |<a_p, a_q>| is below
  // tol * ||a_p|| * ||a_q||.
  double tol = 1e-14;
};

// One-sided Jacobi SVD. Accurate and simple at the matrix sizes this
// library targets (tens of rows/columns).
SvdFactors svd(const DenseMatrix& a, const SvdOptions& opts = {});

// Default rank cutoff used by mp_pinv: machine epsilon * max(m, n) * s_max.
double default_rank_tol(const DenseMatrix& a, const SvdFactors& f);

// Moore-Penrose pseudoinverse via the SVD: reciprocals of the singular
// values above rank_tol. rank_tol <= 0 selects the default cutoff.
DenseMatrix mp_pinv(const DenseMatrix& a, double rank_tol = 0.0);

// Frobenius-norm residuals of the four Moore-Penrose properties of (A, H).
struct PropertyResiduals {
  double p1;  // ||AHA - A||_F
  double p2;  // ||HAH - H||_F
  double p3;  // ||(AH)' - AH||_F
  double p4;  // ||(HA)' - HA||_F
};

PropertyResiduals mp_residuals(const DenseMatrix& a, const DenseMatrix& h);

// Symmetric eigendecomposition (cyclic Jacobi): s = vectors * diag(values) *
// vectors', values sorted non-increasing.
struct SymEig {
  DenseMatrix vectors;  // columns are eigenvectors
  std::vector<double> values;
};

SymEig sym_eig(const DenseMatrix& s, int max_sweeps = 100);

}  // namespace spinv

#endif  // SPINV_SVD_HPP
