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

#include "spinv/kernels.hpp"

#include "spinv/parallel.hpp"

namespace spinv {

namespace {

// Row block of the product: rows [r0, r1) of c = a * b.
// ikj loop order keeps both b and c accesses contiguous.
void matmul_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c,
                 int r0, int r1) {
  const int n = b.cols();
  const int kk = a.cols();
  for (int i = r0; i < r1; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (int k = 0; k < kk; ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void check_mul_shapes(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
}

}  // namespace

DenseMatrix matmul_serial(const DenseMatrix& a, const DenseMatrix& b) {
  check_mul_shapes(a, b);
  DenseMatrix c(a.rows(), b.cols());
  matmul_rows(a, b, c, 0, a.rows());
  return c;
}

DenseMatrix matmul_parallel(const DenseMatrix& a, const DenseMatrix& b) {
  check_mul_shapes(a, b);
  DenseMatrix c(a.rows(), b.cols());
  const int m = a.rows();
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
  for (int i = 0; i < m; ++i) matmul_rows(a, b, c, i, i + 1);
  return c;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  // Parallelism only pays off once the product has some volume.
  const long work = static_cast<long>(a.rows()) * a.cols() * b.cols();
  if (parallel::enabled() && work >= 64 * 64 * 64) return matmul_parallel(a, b);
  return matmul_serial(a, b);
}

void matvec(const DenseMatrix& m, const double* x, double* y) {
  for (int i = 0; i < m.rows(); ++i) y[i] = dot(m.row(i), x, m.cols());
}

void matvec_transposed(const DenseMatrix& m, const double* x, double* y) {
  for (int j = 0; j < m.cols(); ++j) y[j] = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* ri = m.row(i);
    for (int j = 0; j < m.cols(); ++j) y[j] += xi * ri[j];
  }
}

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace spinv
