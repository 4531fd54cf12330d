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

#include <doctest.h>

#include <tuple>

#include "spinv/kernels.hpp"
#include "spinv/rng.hpp"

using namespace spinv;

namespace {

DenseMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
  SplitMix64 gen(seed);
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gen.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("matmul identity and shapes") {
  const DenseMatrix a = random_matrix(4, 7, 11);
  CHECK(max_abs_diff(matmul(DenseMatrix::identity(4), a), a) == 0.0);
  CHECK(max_abs_diff(matmul(a, DenseMatrix::identity(7)), a) == 0.0);
  CHECK_THROWS_AS(matmul(a, a), DimensionError);
}

TEST_CASE("parallel kernel is bitwise identical to the serial reference") {
  const std::tuple<int, int, int> shapes[] = {{1, 5, 3}, {17, 9, 31}, {64, 64, 64}, {3, 100, 2}};
  for (auto [m, k, n] : shapes) {
    const DenseMatrix a = random_matrix(m, k, 1000 + m);
    const DenseMatrix b = random_matrix(k, n, 2000 + n);
    const DenseMatrix cs = matmul_serial(a, b);
    const DenseMatrix cp = matmul_parallel(a, b);
    REQUIRE(cs.same_shape(cp));
    CHECK(max_abs_diff(cs, cp) == 0.0);
  }
}

TEST_CASE("matmul against a hand example") {
  const DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const DenseMatrix b{{5.0, 6.0}, {7.0, 8.0}};
  const DenseMatrix c = matmul(a, b);
  CHECK(c(0, 0) == 19.0);
  CHECK(c(0, 1) == 22.0);
  CHECK(c(1, 0) == 43.0);
  CHECK(c(1, 1) == 50.0);
}

TEST_CASE("matvec matches matmul") {
  const DenseMatrix a = random_matrix(6, 4, 42);
  const DenseMatrix x = random_matrix(4, 1, 43);
  std::vector<double> y(6);
  matvec(a, x.data(), y.data());
  const DenseMatrix ref = matmul(a, x);
  for (int i = 0; i < 6; ++i) CHECK(y[i] == doctest::Approx(ref(i, 0)).epsilon(1e-14));

  std::vector<double> z(4);
  const DenseMatrix w = random_matrix(6, 1, 44);
  matvec_transposed(a, w.data(), z.data());
  const DenseMatrix reft = matmul(a.transposed(), w);
  for (int j = 0; j < 4; ++j) CHECK(z[j] == doctest::Approx(reft(j, 0)).epsilon(1e-14));
}

}  // TEST_SUITE
