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

#include "spinv/bench.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "spinv/kernels.hpp"
#include "spinv/parallel.hpp"
#include "spinv/rng.hpp"
#include "spinv/svd.hpp"

namespace spinv {

namespace {

DenseMatrix draw_factor(int rows, int cols, std::uint64_t stream_seed) {
  SplitMix64 gen(stream_seed);
  DenseMatrix f(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) f(i, j) = gen.uniform(-1.0, 1.0);
  return f;
}

double vec_norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> times_ones(const DenseMatrix& m) {
  std::vector<double> out(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += r[j];
    out[i] = s;
  }
  return out;
}

}  // namespace

Instance generate_instance(const InstanceSpec& spec) {
  const int n = spec.n;
  const int m = spec.m > 0 ? spec.m : spec.n;
  if (n <= 0 || spec.r < 1 || spec.r > std::min(m, n))
    throw std::invalid_argument("generate_instance: need 1 <= r <= min(m, n)");

  for (int redraw = 0; redraw < 64; ++redraw) {
    const DenseMatrix u = draw_factor(m, spec.r, SplitMix64::derive(spec.seed, 1, redraw));
    const DenseMatrix v = draw_factor(spec.r, n, SplitMix64::derive(spec.seed, 2, redraw));
    DenseMatrix a = matmul(u, v);
    a *= spec.scale;

    // Accept only draws whose numerical rank is exactly r.
    const SvdFactors f = svd(a);
    const double cut = default_rank_tol(a, f);
    const bool leading_ok = f.s[spec.r - 1] > 1e3 * cut;
    const bool trailing_ok =
        spec.r >= static_cast<int>(f.s.size()) || f.s[spec.r] <= cut;
    if (leading_ok && trailing_ok) return Instance{std::move(a), spec.seed, redraw};
  }
  throw std::runtime_error("generate_instance: could not draw a rank-r matrix");
}

MetricsRecord metrics(const DenseMatrix& a, const DenseMatrix& apinv,
                      const DenseMatrix& h, double zero_tol) {
  if (apinv.rows() != a.cols() || apinv.cols() != a.rows() || !h.same_shape(apinv))
    throw DimensionError("metrics: inconsistent shapes");
  MetricsRecord rec;
  rec.apinv_one_norm = one_norm(apinv);
  const double h1 = one_norm(h);
  rec.one_norm_ratio = rec.apinv_one_norm > 0.0 ? h1 / rec.apinv_one_norm
                                                : (h1 > 0.0 ? HUGE_VAL : 1.0);
  rec.nnz_h = nnz(h, zero_tol);
  rec.nnz_apinv = nnz(apinv, zero_tol);
  rec.sparsity_ratio = rec.nnz_apinv > 0
                           ? static_cast<double>(rec.nnz_h) / rec.nnz_apinv
                           : (rec.nnz_h > 0 ? HUGE_VAL : 1.0);

  const int m = a.rows();
  // lsr with b = 1_m.
  {
    std::vector<double> hb = times_ones(h);          // H * 1
    std::vector<double> apb = times_ones(apinv);     // A+ * 1
    std::vector<double> ahb(m), aapb(m);
    matvec(a, hb.data(), ahb.data());
    matvec(a, apb.data(), aapb.data());
    for (int i = 0; i < m; ++i) {
      ahb[i] -= 1.0;
      aapb[i] -= 1.0;
    }
    const double num = vec_norm2(ahb);
    const double den = vec_norm2(aapb);
    if (den < 1e-12) {
      rec.degenerate_lsr = true;
      rec.lsr = num < 1e-12 ? 1.0 : HUGE_VAL;
    } else {
      rec.lsr = num / den;
    }
  }
  // 2nr with x = HA * 1_n vs A+A * 1_n.
  {
    std::vector<double> a1 = times_ones(a);  // A * 1
    std::vector<double> x(h.rows()), xr(h.rows());
    matvec(h, a1.data(), x.data());
    matvec(apinv, a1.data(), xr.data());
    const double num = vec_norm2(x);
    const double den = vec_norm2(xr);
    rec.two_norm_ratio = den < 1e-12 ? (num < 1e-12 ? 1.0 : HUGE_VAL) : num / den;
  }
  return rec;
}

std::vector<TableRow> run_table(const TableConfig& config) {
  const int ni = static_cast<int>(config.ranks.size()) * config.seeds_per_rank;
  const int nv = static_cast<int>(config.variants.size());

  struct Cell {
    InstanceSpec spec;
    int instance_idx;
    int variant_idx;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(ni) * nv);
  for (size_t rk = 0; rk < config.ranks.size(); ++rk) {
    for (int inst = 0; inst < config.seeds_per_rank; ++inst) {
      InstanceSpec spec;
      spec.n = config.n;
      spec.r = config.ranks[rk];
      spec.scale = config.scale;
      spec.seed = SplitMix64::derive(config.base_seed, spec.r, inst);
      for (int v = 0; v < nv; ++v) cells.push_back({spec, inst, v});
    }
  }

  std::vector<TableRow> rows(cells.size());
  const int total = static_cast<int>(cells.size());
#pragma omp parallel for schedule(dynamic) if (config.parallel) \
    num_threads(parallel::max_threads())
  for (int c = 0; c < total; ++c) {
    const Cell& cell = cells[c];
    TableRow row;
    row.n = cell.spec.n;
    row.r = cell.spec.r;
    row.instance = cell.instance_idx;
    row.seed = cell.spec.seed;
    const Variant& variant = config.variants[cell.variant_idx];
    row.variant = variant.name();
    try {
      const Instance inst = generate_instance(cell.spec);
      const DenseMatrix apinv = mp_pinv(inst.a);
      const PinvResult res = compute(inst.a, variant, config.options);
      row.status = res.status;
      if (res.status == LpStatus::optimal || res.status == LpStatus::iteration_limit)
        row.rec = metrics(inst.a, apinv, res.h, config.zero_tol);
      else
        row.rec.apinv_one_norm = one_norm(apinv);
    } catch (const std::exception&) {
      row.failed = true;
      row.rec = MetricsRecord{};
      row.rec.lsr = std::nan("");
      row.rec.one_norm_ratio = std::nan("");
      row.rec.sparsity_ratio = std::nan("");
      row.rec.two_norm_ratio = std::nan("");
    }
    rows[c] = std::move(row);
  }
  return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::string out = "r,apinv_1norm,variant,1nr,sr,lsr,2nr,status\n";
  char buf[256];
  for (const TableRow& row : rows) {
    std::string status = row.failed ? "error" : to_string(row.status);
    if (row.rec.degenerate_lsr) status += ";lsr-flag";
    std::snprintf(buf, sizeof(buf), "%d,%.6g,%s,%.6g,%.6g,%.6g,%.6g,%s\n", row.r,
                  row.rec.apinv_one_norm, row.variant.c_str(), row.rec.one_norm_ratio,
                  row.rec.sparsity_ratio, row.rec.lsr, row.rec.two_norm_ratio,
                  status.c_str());
    out += buf;
  }
  return out;
}

std::string provenance_block(const TableConfig& config) {
  std::ostringstream os;
  os << "# spinv " << kVersion << " bench\n";
  os << "# n=" << config.n << " seeds_per_rank=" << config.seeds_per_rank
     << " zero_tol=" << config.zero_tol << " scale=" << config.scale
     << " base_seed=" << config.base_seed << "\n";
  os << "# ranks=";
  for (size_t k = 0; k < config.ranks.size(); ++k)
    os << (k ? "," : "") << config.ranks[k];
  os << "\n# variants=";
  for (size_t k = 0; k < config.variants.size(); ++k)
    os << (k ? "," : "") << config.variants[k].name();
  os << "\n# lp_tol=" << config.options.lp.tol << " sdp_tol=" << config.options.sdp.tol
     << " sdp_max_iterations=" << config.options.sdp.max_iterations << "\n";
  return os.str();
}

}  // namespace spinv
