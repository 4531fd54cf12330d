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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinv/bench.hpp"
#include "spinv/matrix_io.hpp"
#include "spinv/parallel.hpp"
#include "spinv/pseudo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct PinvArgs {
  std::string input;
  std::string out;
  std::string variant = "p1";
  double tol = 1e-9;
  double rank_tol = 0.0;
  double zero_tol = 1e-5;
  double sdp_tol = 1e-5;
  long sdp_max_iterations = 20000;
  bool provenance = false;
};

std::string pinv_provenance(const PinvArgs& a) {
  std::ostringstream os;
  os << "# spinv " << spinv::kVersion << " pinv\n";
  os << "# input=" << a.input << " variant=" << a.variant << " tol=" << a.tol
     << " rank_tol=" << a.rank_tol << " zero_tol=" << a.zero_tol
     << " sdp_tol=" << a.sdp_tol << " sdp_max_iterations=" << a.sdp_max_iterations
     << "\n";
  return os.str();
}

int run_pinv(const PinvArgs& args) {
  const spinv::DenseMatrix a = spinv::read_matrix_file(args.input);
  const spinv::Variant variant = spinv::Variant::parse(args.variant);

  spinv::ComputeOptions opts;
  opts.lp.tol = args.tol;
  opts.rank_tol = args.rank_tol;
  opts.sdp.tol = args.sdp_tol;
  opts.sdp.max_iterations = args.sdp_max_iterations;

  const spinv::PinvResult res = spinv::compute(a, variant, opts);
  if (res.status == spinv::LpStatus::infeasible) {
    std::cerr << "infeasible: no " << variant.name()
              << " pseudoinverse exists for this matrix (rank-deficient input)\n";
    return kExitInfeasible;
  }
  if (res.status == spinv::LpStatus::unbounded ||
      res.status == spinv::LpStatus::iteration_limit) {
    std::cerr << "solver failure: " << spinv::to_string(res.status) << "\n";
    return kExitError;
  }

  std::cout << "variant:    " << variant.name() << "\n";
  std::cout << "status:     " << spinv::to_string(res.status) << "\n";
  std::printf("objective:  %.10g\n", res.objective);
  std::printf("nnz:        %ld of %ld (zero_tol %.3g)\n",
              spinv::nnz(res.h, args.zero_tol), res.h.size(), args.zero_tol);
  std::printf("residuals:  p1 %.3e  p2 %.3e  p3 %.3e  p4 %.3e\n", res.residuals.p1,
              res.residuals.p2, res.residuals.p3, res.residuals.p4);
  std::printf("time:       %.1f ms\n", res.timing_ms);

  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw spinv::ParseError("cannot open '" + args.out + "' for writing");
    if (args.provenance) out << pinv_provenance(args);
    spinv::write_csv_matrix(out, res.h);
    if (!out) throw spinv::ParseError("write to '" + args.out + "' failed");
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string a_path;
  std::string h_path;
  double tol = 1e-8;
};

int run_verify(const VerifyArgs& args) {
  const spinv::DenseMatrix a = spinv::read_matrix_file(args.a_path);
  const spinv::DenseMatrix h = spinv::read_matrix_file(args.h_path);
  const spinv::VerifyReport report = spinv::verify(a, h, args.tol);
  std::cout << spinv::format_report(report);
  return kExitOk;
}

struct BenchArgs {
  int n = 20;
  std::string ranks = "4,8,12";
  int seeds = 3;
  std::string variants = "p1,p1+p3,p1+p4,p1+p3+p4";
  double zero_tol = 1e-5;
  double scale = 0.01;
  std::uint64_t seed = 20260811;
  double lp_tol = 1e-9;
  double sdp_tol = 1e-5;
  long sdp_max_iterations = 20000;
  std::string out;
  bool serial = false;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty list: '" + text + "'");
  return out;
}

int run_bench(const BenchArgs& args) {
  spinv::TableConfig config;
  config.n = args.n;
  config.ranks = parse_int_list(args.ranks);
  config.seeds_per_rank = args.seeds;
  config.zero_tol = args.zero_tol;
  config.scale = args.scale;
  config.base_seed = args.seed;
  config.parallel = !args.serial;
  config.options.lp.tol = args.lp_tol;
  config.options.sdp.tol = args.sdp_tol;
  config.options.sdp.max_iterations = args.sdp_max_iterations;
  // Cells already fan out; keep each cell's solver single-threaded.
  config.options.parallel = false;

  std::stringstream vs(args.variants);
  std::string tok;
  while (std::getline(vs, tok, ',')) {
    if (tok.empty()) continue;
    config.variants.push_back(spinv::Variant::parse(tok));
  }
  if (config.variants.empty()) throw std::invalid_argument("bench: no variants given");

  const std::vector<spinv::TableRow> rows = spinv::run_table(config);
  const std::string csv = spinv::provenance_block(config) + spinv::table_to_csv(rows);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.out);
    if (!out) throw spinv::ParseError("cannot open '" + args.out + "' for writing");
    out << csv;
    if (!out) throw spinv::ParseError("write to '" + args.out + "' failed");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse pseudoinverses via linear and semidefinite programming"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "thread pool size (default: SPINV_THREADS or all)");

  PinvArgs pinv_args;
  CLI::App* pinv = app.add_subcommand("pinv", "compute a sparse pseudoinverse");
  pinv->add_option("--input", pinv_args.input, "matrix file (CSV or .mtx)")->required();
  pinv->add_option("--out", pinv_args.out, "write H as CSV");
  pinv->add_option("--variant", pinv_args.variant,
                   "left | right | mp | p1[+p3][+p4][+p2sdp[:all|diag|i,j;...]]");
  pinv->add_option("--tol", pinv_args.tol, "LP tolerance");
  pinv->add_option("--rank-tol", pinv_args.rank_tol, "pinv rank cutoff (0: default)");
  pinv->add_option("--zero-tol", pinv_args.zero_tol, "nnz zero tolerance");
  pinv->add_option("--sdp-tol", pinv_args.sdp_tol, "SDP residual tolerance");
  pinv->add_option("--sdp-max-iterations", pinv_args.sdp_max_iterations,
                   "SDP iteration cap");
  pinv->add_flag("--provenance", pinv_args.provenance, "echo config into the output file");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "check a candidate pseudoinverse");
  verify->set_help_flag("--help", "print help");  // frees -h/--h for the candidate
  verify->add_option("--a", verify_args.a_path, "matrix A file")->required();
  verify->add_option("--h", verify_args.h_path, "candidate H file")->required();
  verify->add_option("--tol", verify_args.tol, "property tolerance");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "sparsity/quality table on random instances");
  bench->add_option("--n", bench_args.n, "instance size (square)");
  bench->add_option("--ranks", bench_args.ranks, "comma-separated rank list");
  bench->add_option("--seeds", bench_args.seeds, "instances per rank");
  bench->add_option("--variants", bench_args.variants, "comma-separated variant list");
  bench->add_option("--zero-tol", bench_args.zero_tol, "sparsity zero tolerance");
  bench->add_option("--scale", bench_args.scale, "instance scale factor");
  bench->add_option("--seed", bench_args.seed, "base seed");
  bench->add_option("--lp-tol", bench_args.lp_tol, "LP tolerance");
  bench->add_option("--sdp-tol", bench_args.sdp_tol, "SDP residual tolerance");
  bench->add_option("--sdp-max-iterations", bench_args.sdp_max_iterations,
                    "SDP iteration cap");
  bench->add_option("--out", bench_args.out, "output CSV path (default: stdout)");
  bench->add_flag("--serial", bench_args.serial, "run table cells serially");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) spinv::parallel::set_threads(threads);

  try {
    if (pinv->parsed()) return run_pinv(pinv_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const spinv::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
