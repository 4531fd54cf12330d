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

#ifndef SPINV_KERNELS_HPP
#define SPINV_KERNELS_HPP

#include "spinv/matrix.hpp"

namespace spinv {

// Dense matrix product c = a * b.
//
// The parallel kernel splits work over rows of the result; each output
// entry is accumulated by the same serial inner loop as the reference
// kernel, so serial and parallel results are bitwise identical.
DenseMatrix matmul_serial(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_parallel(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// y = M x  (x.size() == cols, y.size() == rows).
void matvec(const DenseMatrix& m, const double* x, double* y);

// y = M' x  (x.size() == rows, y.size() == cols).
void matvec_transposed(const DenseMatrix& m, const double* x, double* y);

double dot(const double* a, const double* b, int n);

}  // namespace spinv

#endif  // SPINV_KERNELS_HPP
