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

#include "spinv/pseudo.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinv/kernels.hpp"

namespace spinv {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::pair<int, int> parse_pair(const std::string& tok) {
  std::stringstream ss(tok);
  int i = 0, j = 0;
  char comma = 0;
  if (!(ss >> i >> comma >> j) || comma != ',' || !(ss >> std::ws).eof() || i < 1 || j < 1)
    throw std::invalid_argument("variant: bad block pair '" + tok + "'");
  return {i - 1, j - 1};
}

}  // namespace

Variant Variant::parse(std::string_view text) {
  Variant v;
  if (text == "left") {
    v.kind = VariantKind::left;
    return v;
  }
  if (text == "right") {
    v.kind = VariantKind::right;
    return v;
  }
  if (text == "mp") {
    v.kind = VariantKind::mp;
    return v;
  }
  v.kind = VariantKind::relaxed;
  for (const std::string& tok : split(text, '+')) {
    if (tok == "p1") {
      v.props.p1 = true;
    } else if (tok == "p3") {
      v.props.p3 = true;
    } else if (tok == "p4") {
      v.props.p4 = true;
    } else if (tok.rfind("p2sdp", 0) == 0) {
      v.props.p2sdp = true;
      std::string spec = tok.substr(5);
      if (spec.empty()) {
        v.block_sel = BlockSelection::all;
      } else if (spec[0] == ':') {
        spec = spec.substr(1);
        if (spec == "all") {
          v.block_sel = BlockSelection::all;
        } else if (spec == "diag") {
          v.block_sel = BlockSelection::diag;
        } else {
          v.block_sel = BlockSelection::list;
          for (const std::string& pairtok : split(spec, ';'))
            v.block_list.push_back(parse_pair(pairtok));
        }
      } else {
        throw std::invalid_argument("variant: bad token '" + tok + "'");
      }
    } else {
      throw std::invalid_argument("variant: unknown token '" + tok + "'");
    }
  }
  if (!v.props.p1)
    throw std::invalid_argument("variant: relaxed variants require p1");
  return v;
}

std::string Variant::name() const {
  switch (kind) {
    case VariantKind::left: return "left";
    case VariantKind::right: return "right";
    case VariantKind::mp: return "mp";
    case VariantKind::relaxed: break;
  }
  std::string s = "p1";
  if (props.p3) s += "+p3";
  if (props.p4) s += "+p4";
  if (props.p2sdp) {
    s += "+p2sdp";
    if (block_sel == BlockSelection::diag) s += ":diag";
    if (block_sel == BlockSelection::list) {
      s += ":";
      for (size_t k = 0; k < block_list.size(); ++k) {
        if (k) s += ";";
        s += std::to_string(block_list[k].first + 1) + "," +
             std::to_string(block_list[k].second + 1);
      }
    }
  }
  return s;
}

std::vector<std::pair<int, int>> Variant::blocks_for(int h_rows, int h_cols) const {
  std::vector<std::pair<int, int>> out;
  switch (block_sel) {
    case BlockSelection::all:
      for (int i = 0; i < h_rows; ++i)
        for (int j = 0; j < h_cols; ++j) out.push_back({i, j});
      break;
    case BlockSelection::diag:
      for (int k = 0; k < std::min(h_rows, h_cols); ++k) out.push_back({k, k});
      break;
    case BlockSelection::list:
      out = block_list;
      break;
  }
  return out;
}

namespace {

PinvResult compute_decomposed(const DenseMatrix& a, bool left, const ComputeOptions& opts) {
  PinvResult res;
  res.solver = PinvResult::Solver::lp;
  const std::vector<LpProblem> subs =
      left ? build_left_inverse_lps(a) : build_right_inverse_lps(a);
  const std::vector<LpSolution> sols = solve_lps(subs, opts.lp, opts.parallel);

  res.h = DenseMatrix(a.cols(), a.rows());
  res.status = LpStatus::optimal;
  double obj = 0.0;
  for (size_t k = 0; k < sols.size(); ++k) {
    const LpSolution& s = sols[k];
    if (s.status != LpStatus::optimal) {
      // Rank-deficient input: no left (right) inverse exists.
      res.status = s.status;
      break;
    }
    obj += s.objective;
    if (left) {
      for (int j = 0; j < a.rows(); ++j) res.h(static_cast<int>(k), j) = s.h(0, j);
    } else {
      for (int i = 0; i < a.cols(); ++i) res.h(i, static_cast<int>(k)) = s.h(i, 0);
    }
  }
  if (res.status == LpStatus::optimal) res.objective = obj;
  return res;
}

}  // namespace

PinvResult compute(const DenseMatrix& a, const Variant& v, const ComputeOptions& opts) {
  a.validate_finite("compute");
  const auto start = std::chrono::steady_clock::now();
  PinvResult res;
  switch (v.kind) {
    case VariantKind::left:
      res = compute_decomposed(a, true, opts);
      break;
    case VariantKind::right:
      res = compute_decomposed(a, false, opts);
      break;
    case VariantKind::mp: {
      res.solver = PinvResult::Solver::svd;
      res.h = mp_pinv(a, opts.rank_tol);
      res.status = LpStatus::optimal;
      res.objective = one_norm(res.h);
      break;
    }
    case VariantKind::relaxed: {
      if (!v.props.p2sdp) {
        res.solver = PinvResult::Solver::lp;
        const LpProblem p = build_relaxed_mp_lp(a, v.props);
        LpSolution s = solve_lp(p, opts.lp);
        res.status = s.status;
        res.h = std::move(s.h);
        res.objective = one_norm(res.h);
      } else {
        res.solver = PinvResult::Solver::sdp;
        const SdpProblem p = build_sdp(a, v.props, v.blocks_for(a.cols(), a.rows()));
        SdpSolution s = solve_sdp(p, opts.sdp);
        res.status = s.converged ? LpStatus::optimal : LpStatus::iteration_limit;
        res.h = std::move(s.h);
        res.objective = s.objective;
        res.sdp_primal_residual = s.primal_residual;
        res.sdp_min_block_eig = s.min_block_eig;
      }
      break;
    }
  }
  if (res.status == LpStatus::optimal || res.status == LpStatus::iteration_limit) {
    if (res.h.rows() == a.cols() && res.h.cols() == a.rows())
      res.residuals = mp_residuals(a, res.h);
  }
  res.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return res;
}

VerifyReport verify(const DenseMatrix& a, const DenseMatrix& h, double tol) {
  if (a.rows() != h.cols() || a.cols() != h.rows())
    throw DimensionError("verify: H must have the transposed shape of A");
  VerifyReport r;
  r.tol = tol;
  r.residuals = mp_residuals(a, h);
  const double scale = std::max({1.0, frobenius_norm(a), frobenius_norm(h)});
  r.p1 = r.residuals.p1 <= tol * scale;
  r.p2 = r.residuals.p2 <= tol * scale;
  r.p3 = r.residuals.p3 <= tol * scale;
  r.p4 = r.residuals.p4 <= tol * scale;

  const DenseMatrix ah = matmul(a, h);
  const DenseMatrix ha = matmul(h, a);
  r.left_inverse_residual = frobenius_norm(ha - DenseMatrix::identity(a.cols()));
  r.right_inverse_residual = frobenius_norm(ah - DenseMatrix::identity(a.rows()));
  r.left_inverse = r.left_inverse_residual <= tol * scale;
  r.right_inverse = r.right_inverse_residual <= tol * scale;

  const DenseMatrix apinv = mp_pinv(a);
  r.ah_vs_aap = frobenius_norm(ah - matmul(a, apinv));
  r.ha_vs_apa = frobenius_norm(ha - matmul(apinv, a));
  r.ah_matches_aap = r.ah_vs_aap <= tol * scale;
  r.ha_matches_apa = r.ha_vs_apa <= tol * scale;
  return r;
}

std::string format_report(const VerifyReport& r) {
  auto prop = [](bool ok) { return ok ? "ok " : "VIOLATED"; };
  auto holds = [](bool ok) { return ok ? "yes" : "no "; };
  std::ostringstream os;
  os << "P1 (AHA=A)        " << prop(r.p1) << "  residual " << r.residuals.p1 << "\n"
     << "P2 (HAH=H)        " << prop(r.p2) << "  residual " << r.residuals.p2 << "\n"
     << "P3 (AH symmetric) " << prop(r.p3) << "  residual " << r.residuals.p3 << "\n"
     << "P4 (HA symmetric) " << prop(r.p4) << "  residual " << r.residuals.p4 << "\n"
     << "HA = I            " << holds(r.left_inverse) << "  residual "
     << r.left_inverse_residual << "\n"
     << "AH = I            " << holds(r.right_inverse) << "  residual "
     << r.right_inverse_residual << "\n"
     << "AH = AA+          " << holds(r.ah_matches_aap) << "  residual " << r.ah_vs_aap
     << "\n"
     << "HA = A+A          " << holds(r.ha_matches_apa) << "  residual " << r.ha_vs_apa
     << "\n";
  return os.str();
}

}  // namespace spinv
