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

#ifndef SPINV_PSEUDO_HPP
#define SPINV_PSEUDO_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinv/lp.hpp"
#include "spinv/matrix.hpp"
#include "spinv/properties.hpp"
#include "spinv/sdp.hpp"
#include "spinv/svd.hpp"

namespace spinv {

enum class VariantKind { left, right, mp, relaxed };

// Which lifted blocks a +p2sdp variant uses. "all" covers every entry of H,
// "diag" the entries (k, k); an explicit list gives full control.
enum class BlockSelection { all, diag, list };

// A named pseudoinverse variant.
//
// Grammar accepted by parse():
//   "left" | "right" | "mp"
//   "p1" ["+p3"] ["+p4"] ["+p2sdp" [":" ("all" | "diag" | "i,j[;i,j...]")]]
// Property tokens may appear in any order; p1 is mandatory for the relaxed
// kinds. Block indices are 1-based in the grammar.
struct Variant {
  VariantKind kind = VariantKind::mp;
  PropertySet props;
  BlockSelection block_sel = BlockSelection::all;
  std::vector<std::pair<int, int>> block_list;  // 0-based, kind list only

  static Variant parse(std::string_view text);
  std::string name() const;

  // The block set for an n x m unknown H under this variant's selection.
  std::vector<std::pair<int, int>> blocks_for(int h_rows, int h_cols) const;
};

struct ComputeOptions {
  LpOptions lp;
  SdpParams sdp;
  double rank_tol = 0.0;  // mp_pinv cutoff; <= 0 selects the default
  bool parallel = true;   // fan decomposed subproblems out over threads
};

struct PinvResult {
  DenseMatrix h;
  double objective = 0.0;       // ||H||_1 at the returned point
  PropertyResiduals residuals{};  // always all four, enforced or not
  enum class Solver { lp, sdp, svd } solver = Solver::svd;
  LpStatus status = LpStatus::optimal;
  double timing_ms = 0.0;
  // Populated when solver == sdp.
  double sdp_primal_residual = 0.0;
  double sdp_min_block_eig = 0.0;
};

// Dispatch: left/right go to the decomposed inverse LPs (infeasible is a
// first-class outcome, not an error), mp to the SVD pseudoinverse, relaxed
// variants to the property LP or, with p2sdp, the lifted SDP relaxation.
PinvResult compute(const DenseMatrix& a, const Variant& v, const ComputeOptions& opts = {});

struct VerifyReport {
  double tol = 0.0;
  PropertyResiduals residuals{};
  bool p1 = false, p2 = false, p3 = false, p4 = false;
  double left_inverse_residual = 0.0;   // ||HA - I||_F
  double right_inverse_residual = 0.0;  // ||AH - I||_F
  bool left_inverse = false, right_inverse = false;
  double ah_vs_aap = 0.0;  // ||AH - AA+||_F
  double ha_vs_apa = 0.0;  // ||HA - A+A||_F
  bool ah_matches_aap = false, ha_matches_apa = false;
};

// Property report of a candidate H against A, including the least-squares
// (AH = AA+) and minimum-norm (HA = A+A) identities.
VerifyReport verify(const DenseMatrix& a, const DenseMatrix& h, double tol = 1e-8);

std::string format_report(const VerifyReport& r);

}  // namespace spinv

#endif  // SPINV_PSEUDO_HPP
