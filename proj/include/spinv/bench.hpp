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

#ifndef SPINV_BENCH_HPP
#define SPINV_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spinv/matrix.hpp"
#include "spinv/pseudo.hpp"

namespace spinv {

inline constexpr const char* kVersion = "0.1.0";

// Random rank-r instance: A = scale * U * V with U (m x r), V (r x n) and
// entries iid uniform(-1, 1). m == 0 means square (m = n).
struct InstanceSpec {
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  double scale = 0.01;
  int m = 0;
};

struct Instance {
  DenseMatrix a;
  std::uint64_t seed = 0;
  int redraws = 0;  // degenerate draws discarded before this one
};

// Deterministic in spec.seed; draws whose numerical rank falls short of r
// are redrawn with an incremented sub-seed (recorded in `redraws`).
Instance generate_instance(const InstanceSpec& spec);

// Quality and sparsity of a candidate H against A+ at the given zero
// tolerance. lsr uses b = all-ones; 2nr compares HA*1 with A+A*1.
struct MetricsRecord {
  double one_norm_ratio = 0.0;   // ||H||_1 / ||A+||_1
  double sparsity_ratio = 0.0;   // nnz(H) / nnz(A+), same zero_tol both sides
  double lsr = 0.0;              // ||AHb-b|| / ||AA+b-b||
  double two_norm_ratio = 0.0;   // ||HA*1|| / ||A+A*1||
  double apinv_one_norm = 0.0;
  long nnz_h = 0;
  long nnz_apinv = 0;
  bool degenerate_lsr = false;   // both lsr norms vanished or denominator did
};

MetricsRecord metrics(const DenseMatrix& a, const DenseMatrix& apinv,
                      const DenseMatrix& h, double zero_tol);

struct TableConfig {
  int n = 40;
  std::vector<int> ranks;
  int seeds_per_rank = 5;
  std::vector<Variant> variants;
  double zero_tol = 1e-5;
  double scale = 0.01;
  std::uint64_t base_seed = 20260811;
  ComputeOptions options;
  bool parallel = true;
};

struct TableRow {
  int n = 0;
  int r = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  std::string variant;
  MetricsRecord rec;
  LpStatus status = LpStatus::optimal;
  bool failed = false;  // generator or solver raised; row kept as a marker
};

// One row per (instance, variant), ordered by (rank position, instance,
// variant position). Cells are independent jobs and may run on a work pool;
// assembly is order-preserving, so identical configs give identical tables.
// Solver failures mark their row instead of aborting the run.
std::vector<TableRow> run_table(const TableConfig& config);

// CSV with header r,apinv_1norm,variant,1nr,sr,lsr,2nr,status and
// 6-significant-digit floats.
std::string table_to_csv(const std::vector<TableRow>& rows);

// Deterministic '#'-prefixed config echo (seeds, tolerances, version).
std::string provenance_block(const TableConfig& config);

}  // namespace spinv

#endif  // SPINV_BENCH_HPP
