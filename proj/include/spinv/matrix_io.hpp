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

#ifndef SPINV_MATRIX_IO_HPP
#define SPINV_MATRIX_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "spinv/matrix.hpp"

namespace spinv {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Dense CSV: one matrix row per line, comma-separated decimal values,
// locale-independent ('.' decimal point). Written at 17 significant digits,
// so write -> read round-trips doubles bit-exactly.
DenseMatrix read_csv_matrix(std::istream& in, const std::string& name = "<stream>");
DenseMatrix read_csv_matrix_file(const std::string& path);
void write_csv_matrix(std::ostream& out, const DenseMatrix& m);
void write_csv_matrix_file(const std::string& path, const DenseMatrix& m);

// Matrix Market coordinate format reader ("%%MatrixMarket matrix coordinate
// real general"); entries not listed are zero. Provided for interoperability;
// there is no writer.
DenseMatrix read_matrix_market(std::istream& in, const std::string& name = "<stream>");
DenseMatrix read_matrix_market_file(const std::string& path);

// Dispatch on extension: ".mtx" -> Matrix Market, anything else -> CSV.
DenseMatrix read_matrix_file(const std::string& path);

}  // namespace spinv

#endif  // SPINV_MATRIX_IO_HPP
