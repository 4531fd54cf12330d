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

#ifndef SPINV_MATRIX_HPP
#define SPINV_MATRIX_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinv {

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Dense real matrix, row-major. Value semantics throughout; all library
// entry points require finite entries (see validate_finite).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0);
  DenseMatrix(int rows, int cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(int n);
  static DenseMatrix zeros(int rows, int cols) { return DenseMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long size() const { return static_cast<long>(rows_) * cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return data_[static_cast<long>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<long>(i) * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(int i) { return data_.data() + static_cast<long>(i) * cols_; }
  const double* row(int i) const { return data_.data() + static_cast<long>(i) * cols_; }

  DenseMatrix transposed() const;

  // Throws std::invalid_argument if any entry is NaN or infinite.
  void validate_finite(const char* who = "DenseMatrix") const;

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Entry-wise 1-norm: sum of absolute entries.
double one_norm(const DenseMatrix& m);

// Frobenius norm.
double frobenius_norm(const DenseMatrix& m);

// Largest absolute entry.
double max_abs(const DenseMatrix& m);

// Number of entries with |entry| > zero_tol (strict, absolute tolerance).
long nnz(const DenseMatrix& m, double zero_tol);

// max |a - b| entry-wise; shapes must match.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// ||a - a'||_F / symmetry residual helper.
double asymmetry(const DenseMatrix& a);

}  // namespace spinv

#endif  // SPINV_MATRIX_HPP
