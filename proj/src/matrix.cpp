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

#include "spinv/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace spinv {

DenseMatrix::DenseMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<long>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw DimensionError("DenseMatrix: negative dimension");
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw DimensionError("DenseMatrix: negative dimension");
  if (static_cast<long>(data_.size()) != static_cast<long>(rows) * cols)
    throw DimensionError("DenseMatrix: entry count does not match shape");
  validate_finite();
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<long>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw DimensionError("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  validate_finite();
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void DenseMatrix::validate_finite(const char* who) const {
  for (double x : data_)
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(who) + ": non-finite entry");
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (!same_shape(other)) throw DimensionError("operator+=: shape mismatch");
  for (long k = 0; k < size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (!same_shape(other)) throw DimensionError("operator-=: shape mismatch");
  for (long k = 0; k < size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (long k = 0; k < size(); ++k) data_[k] *= s;
  return *this;
}

double one_norm(const DenseMatrix& m) {
  double sum = 0.0;
  const double* p = m.data();
  for (long k = 0; k < m.size(); ++k) sum += std::abs(p[k]);
  return sum;
}

double frobenius_norm(const DenseMatrix& m) {
  double sum = 0.0;
  const double* p = m.data();
  for (long k = 0; k < m.size(); ++k) sum += p[k] * p[k];
  return std::sqrt(sum);
}

double max_abs(const DenseMatrix& m) {
  double mx = 0.0;
  const double* p = m.data();
  for (long k = 0; k < m.size(); ++k) mx = std::max(mx, std::abs(p[k]));
  return mx;
}

long nnz(const DenseMatrix& m, double zero_tol) {
  if (zero_tol < 0.0) throw std::invalid_argument("nnz: negative tolerance");
  long count = 0;
  const double* p = m.data();
  for (long k = 0; k < m.size(); ++k)
    if (std::abs(p[k]) > zero_tol) ++count;
  return count;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.same_shape(b)) throw DimensionError("max_abs_diff: shape mismatch");
  double mx = 0.0;
  for (long k = 0; k < a.size(); ++k) mx = std::max(mx, std::abs(a.data()[k] - b.data()[k]));
  return mx;
}

double asymmetry(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("asymmetry: matrix not square");
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) {
      double d = a(i, j) - a(j, i);
      sum += 2.0 * d * d;
    }
  return std::sqrt(sum);
}

}  // namespace spinv
