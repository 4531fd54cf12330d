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

#include "spinv/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace spinv {

namespace {

double parse_double(const std::string& tok, const std::string& where) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || end != begin + tok.size())
    throw ParseError(where + ": bad numeric value '" + tok + "'");
  return v;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

DenseMatrix read_csv_matrix(std::istream& in, const std::string& name) {
  std::vector<double> entries;
  int cols = -1;
  int rows = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    int c = 0;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      entries.push_back(parse_double(trimmed(tok), name + ":" + std::to_string(lineno)));
      ++c;
    }
    if (cols < 0) cols = c;
    if (c != cols)
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(cols) + " columns, got " + std::to_string(c));
    ++rows;
  }
  if (rows == 0) throw ParseError(name + ": empty matrix file");
  return DenseMatrix(rows, cols, std::move(entries));
}

DenseMatrix read_csv_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return read_csv_matrix(in, path);
}

void write_csv_matrix(std::ostream& out, const DenseMatrix& m) {
  char buf[64];
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_csv_matrix_file(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_csv_matrix(out, m);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

DenseMatrix read_matrix_market(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(name + ": empty Matrix Market file");
  {
    std::string lower = line;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower.rfind("%%matrixmarket", 0) != 0)
      throw ParseError(name + ": missing MatrixMarket banner");
    if (lower.find("coordinate") == std::string::npos ||
        lower.find("real") == std::string::npos)
      throw ParseError(name + ": only 'coordinate real' Matrix Market files are supported");
    if (lower.find("general") == std::string::npos)
      throw ParseError(name + ": only 'general' symmetry is supported");
  }
  while (std::getline(in, line)) {
    if (!trimmed(line).empty() && trimmed(line)[0] != '%') break;
  }
  std::stringstream head(line);
  int rows = 0, cols = 0;
  long entries = 0;
  if (!(head >> rows >> cols >> entries) || rows <= 0 || cols <= 0 || entries < 0)
    throw ParseError(name + ": bad size line");
  DenseMatrix m(rows, cols);
  for (long k = 0; k < entries; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v))
      throw ParseError(name + ": truncated entry list (" + std::to_string(k) + " of " +
                       std::to_string(entries) + " read)");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError(name + ": entry index out of range");
    m(i - 1, j - 1) = v;
  }
  m.validate_finite("read_matrix_market");
  return m;
}

DenseMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return read_matrix_market(in, path);
}

DenseMatrix read_matrix_file(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0)
    return read_matrix_market_file(path);
  return read_csv_matrix_file(path);
}

}  // namespace spinv
