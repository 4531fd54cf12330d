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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spinv/kernels.hpp"
#include "spinv/lp.hpp"
#include "spinv/parallel.hpp"

namespace spinv {

namespace {

// Two-phase dense revised simplex for the weighted 1-norm problems this
// library builds: min sum_j (c_j h_j + w_j |h_j|) s.t. G h = g, h free.
//
// The epigraph variables t_j never enter the working basis. Each free h_j
// carries the V-shaped cost w_j |h_j| directly: a nonbasic h_j sits at its
// breakpoint 0 and may enter moving up or down, and the ratio test lets a
// basic h_j either leave the basis at 0 or cross it with a cost-slope flip
// (a long step). Pivot-for-pivot this is the classic simplex on the
// epigraph form, but the basis has one slot per equality row instead of one
// per row plus two per matrix entry, which keeps the dense inverse small.
//
// Equality rows are normalized to unit infinity-norm (and nonnegative rhs)
// before solving; everything reported goes back to original units.
class L1Simplex {
 public:
  L1Simplex(const LpProblem& p, const LpOptions& opts) : p_(p), opts_(opts) {
    nh_ = p.num_h();
    rows_ = static_cast<int>(p.eq_rows.size());
    load_problem();
  }

  LpSolution run() {
    LpSolution sol;
    if (rows_ == 0) {
      // No equality constraints: h = 0 is optimal.
      sol.h = DenseMatrix(p_.h_rows, p_.h_cols);
      sol.status = LpStatus::optimal;
      return sol;
    }
    for (int attempt = 0;; ++attempt) {
      try {
        return run_once(sol);
      } catch (const RestartNeeded&) {
        if (attempt >= 2) throw std::runtime_error("solve_lp: repeated basis failures");
        sol = LpSolution{};
        pivots_.clear();
        load_problem();  // restore any rows dropped after phase 1
      }
    }
  }

 private:
  struct RestartNeeded {};

  static constexpr double kPivotTol = 1e-9;
  static constexpr double kDegenTol = 1e-12;

  LpSolution run_once(LpSolution& sol) {
    init_artificial_basis();
    phase1_ = true;
    // Phases can re-run: a basis repair during phase 2 may leave a stray
    // artificial away from zero, which sends control back to phase 1.
    for (int round = 0; round < 24; ++round) {
      LpStatus st = iterate();
      if (st != LpStatus::optimal) return finish(sol, st);
      refactor_and_refine();
      const double p1obj = phase1_objective();
      compute_duals();
      if (phase1_) {
        // The drifted inverse may have priced out early; trust only the
        // rebuilt one.
        int j, dir;
        if (price(j, dir)) continue;
        sol.phase1_objective = p1obj;
        if (p1obj > feas_tol()) {
          collect_farkas(sol);
          return finish(sol, LpStatus::infeasible);
        }
        // Pivot leftover artificials out where their tableau row has a
        // usable structural entry; rows whose tableau row vanishes are
        // implied by the others and can be dropped. This shrinks the
        // working basis to the row rank and removes the pinned slots that
        // would force degenerate pivots all through phase 2.
        finalize_phase1();
        phase1_ = false;
        assign_regimes();
        std::fill(ban_until_.begin(), ban_until_.end(), -1L);
        continue;
      }
      if (p1obj > feas_tol()) {  // repair re-entered infeasibility
        phase1_ = true;
        std::fill(ban_until_.begin(), ban_until_.end(), -1L);
        continue;
      }
      // Confirm optimality against the freshly rebuilt inverse.
      int j, dir;
      if (!price(j, dir)) return finish(sol, LpStatus::optimal);
    }
    return finish(sol, LpStatus::iteration_limit);
  }

  const LpProblem& p_;
  LpOptions opts_;
  int nh_ = 0;
  int rows_ = 0;

  std::vector<double> col_;        // rows_ x nh_, column-major, scaled G
  std::vector<double> rhs_;        // scaled g, nonnegative
  std::vector<double> row_scale_;  // signed scale: scaled_row = s * original_row
  std::vector<int> orig_row_;      // working row -> original equality row
  std::vector<double> wabs_;       // |.| weight per h variable
  std::vector<double> clin_;       // linear cost per h variable

  std::vector<double> binv_;       // rows_ x rows_, row-major
  std::vector<int> basic_;         // var in basis slot r: h index, or nh_+r0 artificial
  std::vector<int> pos_;           // h var -> basis slot, or -1
  std::vector<signed char> regime_;  // cost side of basic h (+1/-1)
  std::vector<double> xb_;
  std::vector<double> y_;
  std::vector<double> cb_;

  bool phase1_ = true;
  bool bland_ = false;
  long iters_ = 0;
  long degenerate_ = 0;
  int repairs_ = 0;
  int empty_ratio_events_ = 0;
  double ymax_ = 0.0;
  std::vector<long> ban_until_;  // per h var: unusable until this iteration
  std::vector<LpPivot> pivots_;

  double* column(int j) { return col_.data() + static_cast<long>(j) * rows_; }
  const double* column(int j) const { return col_.data() + static_cast<long>(j) * rows_; }
  bool is_artificial(int var) const { return var >= nh_; }

  double feas_tol() const {
    double gmax = 1.0;
    for (double v : rhs_) gmax = std::max(gmax, std::abs(v));
    // The phase-1 objective sums ~rows noise-level residuals.
    return std::max(opts_.tol, 1e-9) * gmax * std::max(1.0, std::sqrt(double(rows_)));
  }

  void load_problem() {
    if (static_cast<int>(p_.objective.size()) != p_.num_vars)
      throw std::invalid_argument("solve_lp: objective size mismatch");
    if (p_.num_vars != 2 * nh_)
      throw std::invalid_argument("solve_lp: expected h and t variable pairs");
    if (static_cast<int>(p_.ineq_rows.size()) != 2 * nh_)
      throw std::invalid_argument("solve_lp: expected 2 absolute-value rows per entry");
    for (int k = 0; k < nh_; ++k) {
      const LinRow& up = p_.ineq_rows[2 * k];
      const LinRow& dn = p_.ineq_rows[2 * k + 1];
      auto canonical = [&](const LinRow& r, double hsign) {
        return r.rhs == 0.0 && r.terms.size() == 2 && r.terms[0].var == nh_ + k &&
               r.terms[0].coef == 1.0 && r.terms[1].var == k && r.terms[1].coef == hsign;
      };
      if (!canonical(up, -1.0) || !canonical(dn, 1.0))
        throw std::invalid_argument("solve_lp: nonstandard absolute-value rows");
    }

    wabs_.resize(nh_);
    clin_.resize(nh_);
    for (int k = 0; k < nh_; ++k) {
      wabs_[k] = p_.objective[nh_ + k];
      clin_[k] = p_.objective[k];
      if (wabs_[k] < 0.0)
        throw std::invalid_argument("solve_lp: negative epigraph weight");
    }

    col_.assign(static_cast<long>(rows_) * nh_, 0.0);
    rhs_.resize(rows_);
    row_scale_.resize(rows_);
    orig_row_.resize(rows_);
    for (int r = 0; r < rows_; ++r) orig_row_[r] = r;
    for (int r = 0; r < rows_; ++r) {
      const LinRow& row = p_.eq_rows[r];
      double amax = 0.0;
      for (const LinTerm& t : row.terms) {
        if (t.var < 0 || t.var >= nh_)
          throw std::invalid_argument("solve_lp: equality row references a non-h variable");
        amax = std::max(amax, std::abs(t.coef));
      }
      double s = amax > 0.0 ? 1.0 / amax : 1.0;
      if (row.rhs * s < 0.0) s = -s;
      row_scale_[r] = s;
      rhs_[r] = row.rhs * s;
      for (const LinTerm& t : row.terms) column(t.var)[r] += t.coef * s;
    }
  }

  void init_artificial_basis() {
    binv_.assign(static_cast<long>(rows_) * rows_, 0.0);
    for (int r = 0; r < rows_; ++r) binv_[static_cast<long>(r) * rows_ + r] = 1.0;
    basic_.resize(rows_);
    regime_.assign(rows_, +1);
    pos_.assign(nh_, -1);
    ban_until_.assign(nh_, -1);
    xb_ = rhs_;
    for (int r = 0; r < rows_; ++r) basic_[r] = nh_ + r;
    y_.resize(rows_);
    cb_.resize(rows_);
  }

  void assign_regimes() {
    for (int r = 0; r < rows_; ++r)
      if (!is_artificial(basic_[r])) regime_[r] = xb_[r] < 0.0 ? -1 : +1;
  }

  // Textbook phase-1 completion: for every artificial still basic (at ~0),
  // scan its tableau row over the nonbasic structural columns. A usable
  // entry lets the artificial leave on a degenerate pivot; a vanishing row
  // is redundant and marked for removal.
  void finalize_phase1() {
    std::vector<int> art_slots;
    for (int slot = 0; slot < rows_; ++slot)
      if (is_artificial(basic_[slot])) art_slots.push_back(slot);
    if (art_slots.empty()) return;
    const int k = static_cast<int>(art_slots.size());

    // z[s][j] = (B^{-1} G)[art_slots[s], j], maintained through the pivots.
    std::vector<double> z(static_cast<long>(k) * nh_);
#pragma omp parallel for schedule(static) if (static_cast<long>(k) * rows_ > 1 << 16) \
    num_threads(parallel::max_threads())
    for (int j = 0; j < nh_; ++j) {
      const double* cj = column(j);
      for (int s = 0; s < k; ++s)
        z[static_cast<long>(s) * nh_ + j] =
            dot(binv_.data() + static_cast<long>(art_slots[s]) * rows_, cj, rows_);
    }

    std::vector<char> slot_done(k, 0);
    std::vector<double> u(rows_);
    for (int s = 0; s < k; ++s) {
      double* zs = z.data() + static_cast<long>(s) * nh_;
      int jbest = -1;
      double zmax = 1e-7;
      for (int j = 0; j < nh_; ++j) {
        if (pos_[j] >= 0) continue;
        const double a = std::abs(zs[j]);
        if (a > zmax) {
          zmax = a;
          jbest = j;
        }
      }
      if (jbest < 0) continue;  // redundant row, dropped below
      const int slot = art_slots[s];
      ftran(column(jbest), u.data());
      eliminate(slot, u.data());
      basic_[slot] = jbest;
      pos_[jbest] = slot;
      regime_[slot] = +1;
      xb_[slot] = 0.0;  // degenerate pivot: the artificial sat at zero
      slot_done[s] = 1;
      pivots_.push_back({jbest, nh_ + slot});
      for (int t = s + 1; t < k; ++t) {
        const double f = u[art_slots[t]] / u[slot];
        if (f == 0.0) continue;
        double* zt = z.data() + static_cast<long>(t) * nh_;
        for (int j = 0; j < nh_; ++j) zt[j] -= f * zs[j];
      }
    }

    std::vector<char> keep_row(rows_, 1);
    std::vector<char> keep_slot(rows_, 1);
    int kept = rows_;
    for (int s = 0; s < k; ++s) {
      if (slot_done[s]) continue;
      const int slot = art_slots[s];
      keep_row[basic_[slot] - nh_] = 0;
      keep_slot[slot] = 0;
      --kept;
    }
    if (kept == rows_) return;

    std::vector<int> new_of_old(rows_, -1);
    int nr = 0;
    for (int r = 0; r < rows_; ++r)
      if (keep_row[r]) new_of_old[r] = nr++;

    std::vector<double> ncol(static_cast<long>(nr) * nh_);
    for (int j = 0; j < nh_; ++j) {
      const double* src = column(j);
      double* dst = ncol.data() + static_cast<long>(j) * nr;
      for (int r = 0; r < rows_; ++r)
        if (keep_row[r]) dst[new_of_old[r]] = src[r];
    }
    std::vector<double> nrhs(nr), nscale(nr);
    std::vector<int> norig(nr);
    for (int r = 0; r < rows_; ++r) {
      if (!keep_row[r]) continue;
      const int t = new_of_old[r];
      nrhs[t] = rhs_[r];
      nscale[t] = row_scale_[r];
      norig[t] = orig_row_[r];
    }
    std::vector<int> nbasic;
    std::vector<signed char> nregime;
    nbasic.reserve(nr);
    nregime.reserve(nr);
    for (int slot = 0; slot < rows_; ++slot) {
      if (!keep_slot[slot]) continue;
      nbasic.push_back(basic_[slot]);
      nregime.push_back(regime_[slot]);
    }

    rows_ = nr;
    col_ = std::move(ncol);
    rhs_ = std::move(nrhs);
    row_scale_ = std::move(nscale);
    orig_row_ = std::move(norig);
    basic_ = std::move(nbasic);
    regime_ = std::move(nregime);
    std::fill(pos_.begin(), pos_.end(), -1);
    for (int slot = 0; slot < rows_; ++slot) pos_[basic_[slot]] = slot;
    binv_.assign(static_cast<long>(rows_) * rows_, 0.0);
    xb_.assign(rows_, 0.0);
    y_.assign(rows_, 0.0);
    cb_.assign(rows_, 0.0);
    refactor_and_refine();
  }

  double basic_cost(int slot) const {
    const int v = basic_[slot];
    if (is_artificial(v)) return phase1_ ? 1.0 : 0.0;
    return phase1_ ? 0.0 : clin_[v] + regime_[slot] * wabs_[v];
  }

  void compute_duals() {
    for (int r = 0; r < rows_; ++r) cb_[r] = basic_cost(r);
    std::fill(y_.begin(), y_.end(), 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double c = cb_[i];
      if (c == 0.0) continue;
      const double* bi = binv_.data() + static_cast<long>(i) * rows_;
      for (int j = 0; j < rows_; ++j) y_[j] += c * bi[j];
    }
    ymax_ = 0.0;
    for (double v : y_) ymax_ = std::max(ymax_, std::abs(v));
  }

  // Pricing noise in y'G_j is about eps * ||y|| * ||G_j||; scale the
  // threshold so roundoff of an ill-conditioned y cannot masquerade as a
  // descent column, without drowning genuine reduced costs.
  double price_tol() const {
    return std::max(opts_.tol, 1e-14 * ymax_ * std::sqrt(double(rows_)));
  }

  // Entering slopes of nonbasic h_j at its breakpoint.
  //   up  : +(c_j) + w_j - y'G_j
  //   down: -(c_j) + w_j + y'G_j
  // Phase 1 uses zero h costs. Returns false at optimality.
  bool price(int& enter, int& dir) const {
    const double tol = price_tol();
    double best = -tol;
    int bj = -1, bdir = 0;

    const int nt = parallel::max_threads();
    std::vector<double> tbest(nt, -tol);
    std::vector<int> tj(nt, -1), tdir(nt, 0);
#pragma omp parallel num_threads(nt) if (static_cast<long>(nh_) * rows_ > 1 << 15)
    {
#ifdef _OPENMP
      const int tid = omp_get_thread_num();
#else
      const int tid = 0;
#endif
      double lbest = -tol;
      int lj = -1, ldir = 0;
#pragma omp for schedule(static)
      for (int j = 0; j < nh_; ++j) {
        if (pos_[j] >= 0 || ban_until_[j] > iters_) continue;
        const double z = dot(y_.data(), column(j), rows_);
        const double w = phase1_ ? 0.0 : wabs_[j];
        const double c = phase1_ ? 0.0 : clin_[j];
        const double sup = c + w - z;
        const double sdn = -c + w + z;
        double s;
        int d;
        if (sup <= sdn) {
          s = sup;
          d = +1;
        } else {
          s = sdn;
          d = -1;
        }
        if (bland_) {
          if (s < -tol && lj < 0) {
            lbest = s;
            lj = j;
            ldir = d;
          }
        } else if (s < lbest) {
          lbest = s;
          lj = j;
          ldir = d;
        }
      }
      tbest[tid] = lbest;
      tj[tid] = lj;
      tdir[tid] = ldir;
    }
    for (int t = 0; t < nt; ++t) {
      if (tj[t] < 0) continue;
      const bool better = bland_ ? (bj < 0 || tj[t] < bj)
                                 : (tbest[t] < best || (tbest[t] == best && tj[t] < bj));
      if (bj < 0 || better) {
        best = tbest[t];
        bj = tj[t];
        bdir = tdir[t];
      }
    }
    if (bj < 0) return false;
    enter = bj;
    dir = bdir;
    return true;
  }

  void ftran(const double* a, double* u) const {
#pragma omp parallel for schedule(static) if (rows_ > 256) \
    num_threads(parallel::max_threads())
    for (int i = 0; i < rows_; ++i)
      u[i] = dot(binv_.data() + static_cast<long>(i) * rows_, a, rows_);
  }

  struct Blocker {
    double theta;
    int slot;
    double jump;  // slope increase if crossed; infinity for artificials
  };

  // One simplex phase. Returns optimal when priced out, or a terminal status.
  LpStatus iterate() {
    const long max_iter =
        opts_.max_iterations > 0 ? opts_.max_iterations : 50L * (rows_ + 200);
    std::vector<double> u(rows_);
    std::vector<Blocker> blockers;
    blockers.reserve(rows_);

    while (true) {
      if (iters_ >= max_iter) return LpStatus::iteration_limit;
      compute_duals();
      int j, dir;
      if (!price(j, dir)) return LpStatus::optimal;

      ftran(column(j), u.data());

      // Collect breakpoints along the entering ray.
      blockers.clear();
      for (int i = 0; i < rows_; ++i) {
        const double du = dir * u[i];
        const int v = basic_[i];
        if (is_artificial(v)) {
          if (phase1_) {
            if (du > kPivotTol)
              blockers.push_back({std::max(0.0, xb_[i] / du), i,
                                  std::numeric_limits<double>::infinity()});
          } else if (std::abs(du) > kPivotTol) {
            // Artificials may not move after phase 1; a stray one (left by a
            // basis repair) may only be driven back toward zero.
            const double theta =
                (du > 0.0 && xb_[i] > 0.0) ? xb_[i] / du : 0.0;
            blockers.push_back({theta, i, std::numeric_limits<double>::infinity()});
          }
        } else if (!phase1_) {
          if (regime_[i] * du > kPivotTol)
            blockers.push_back({std::max(0.0, xb_[i] / du), i,
                                2.0 * wabs_[v] * std::abs(du)});
        }
      }

      if (blockers.empty()) {
        // A positively weighted 1-norm objective cannot descend forever, so
        // an empty ratio test means the direction B^{-1}a_j is numerically
        // untrustworthy. Rebuild the inverse once; if the column keeps
        // producing empty rays, quarantine it for a while. Only a genuinely
        // weightless ray is unbounded.
        if (!phase1_ && wabs_[j] == 0.0 && clin_[j] != 0.0) return LpStatus::unbounded;
        if (++empty_ratio_events_ <= 1) {
          refactor_and_refine();
        } else {
          ban_until_[j] = iters_ + rows_;
          empty_ratio_events_ = 0;
        }
        continue;
      }

      std::sort(blockers.begin(), blockers.end(), [](const Blocker& a, const Blocker& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.slot < b.slot;
      });

      // Walk the breakpoints: pass one while the direction keeps improving
      // after its slope flip (never under Bland's rule), stop at the first
      // one that exhausts the descent.
      double slope = current_slope(j, dir);
      size_t stop = 0;
      if (!bland_) {
        while (stop + 1 < blockers.size() && std::isfinite(blockers[stop].jump) &&
               slope + blockers[stop].jump < -price_tol()) {
          slope += blockers[stop].jump;
          ++stop;
        }
      }
      // The step may neither descend past the cost stop nor move a pinned
      // artificial, but within a narrow band under that cap the leaving
      // variable is free to be the blocker with the largest pivot: tiny
      // pivots are what erode the inverse.
      double theta_cap = blockers[stop].theta;
      for (const Blocker& b : blockers)
        if (!std::isfinite(b.jump)) theta_cap = std::min(theta_cap, b.theta);
      const double band = 1e-7 * (1.0 + theta_cap);
      size_t pick = stop;
      double best_piv = -1.0;
      for (size_t k = 0; k < blockers.size() && blockers[k].theta <= theta_cap + band; ++k) {
        const double piv = std::abs(u[blockers[k].slot]);
        if (piv > best_piv) {
          best_piv = piv;
          pick = k;
        }
      }
      const Blocker chosen = blockers[pick];
      const double theta = std::min(chosen.theta, theta_cap + band);
      const int leave_slot = chosen.slot;
      const int leave_var = basic_[leave_slot];

      // Regime flips for the h breakpoints crossed strictly before the leave.
      for (const Blocker& b : blockers) {
        if (b.theta >= theta) break;
        if (b.slot != leave_slot && std::isfinite(b.jump))
          regime_[b.slot] = -regime_[b.slot];
      }

      for (int i = 0; i < rows_; ++i) xb_[i] -= theta * dir * u[i];

      const double piv = u[leave_slot];
      if (std::abs(piv) < kPivotTol * 0.5) {
        // Numerically unusable pivot: rebuild the inverse and retry.
        if (++repairs_ > 4) throw std::runtime_error("solve_lp: basis became unusable");
        refactor_and_refine();
        continue;  // reprice against the fresh inverse
      }

      eliminate(leave_slot, u.data());
      if (!is_artificial(leave_var)) pos_[leave_var] = -1;
      basic_[leave_slot] = j;
      pos_[j] = leave_slot;
      regime_[leave_slot] = static_cast<signed char>(dir);
      xb_[leave_slot] = dir * theta;

      pivots_.push_back({j, leave_var});
      ++iters_;
      empty_ratio_events_ = 0;
      if (theta <= kDegenTol && ++degenerate_ > 10L * rows_) bland_ = true;
      if (iters_ % 2000 == 0) refactor_and_refine();
    }
  }

  double current_slope(int j, int dir) const {
    const double z = dot(y_.data(), column(j), rows_);
    const double w = phase1_ ? 0.0 : wabs_[j];
    const double c = phase1_ ? 0.0 : clin_[j];
    return dir > 0 ? c + w - z : -c + w + z;
  }

  // Rank-1 update of the explicit inverse after a pivot on `slot`,
  // where u = B^{-1} a_entering.
  void eliminate(int slot, const double* u) {
    const double piv = u[slot];
    double* prow = binv_.data() + static_cast<long>(slot) * rows_;
    for (int k = 0; k < rows_; ++k) prow[k] /= piv;
#pragma omp parallel for schedule(static) if (rows_ > 256) \
    num_threads(parallel::max_threads())
    for (int i = 0; i < rows_; ++i) {
      if (i == slot) continue;
      const double f = u[i];
      if (f == 0.0) continue;
      double* ri = binv_.data() + static_cast<long>(i) * rows_;
      for (int k = 0; k < rows_; ++k) ri[k] -= f * prow[k];
    }
  }

  // B x for the current basis columns.
  void apply_basis(const double* x, double* out) const {
    std::fill(out, out + rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      const double xr = x[r];
      if (xr == 0.0) continue;
      const int v = basic_[r];
      if (is_artificial(v)) {
        out[v - nh_] += xr;
      } else {
        const double* aj = column(v);
        for (int i = 0; i < rows_; ++i) out[i] += xr * aj[i];
      }
    }
  }

  // Rebuild binv_ from scratch (Gauss-Jordan with partial pivoting) and
  // recompute basic values with one step of iterative refinement. A basis
  // column with no usable pivot is swapped for the artificial of a row that
  // has not been pivoted yet, and the factorization restarts.
  void refactor_and_refine() {
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (try_invert()) {
        ftran(rhs_.data(), xb_.data());
        std::vector<double> resid(rows_), corr(rows_);
        apply_basis(xb_.data(), resid.data());
        for (int i = 0; i < rows_; ++i) resid[i] = rhs_[i] - resid[i];
        ftran(resid.data(), corr.data());
        for (int i = 0; i < rows_; ++i) xb_[i] += corr[i];
        // Basic values may have moved (or the basis itself, after repairs);
        // keep the cost regimes aligned with the recomputed signs.
        for (int i = 0; i < rows_; ++i)
          if (!is_artificial(basic_[i]) && std::abs(xb_[i]) > 1e-11)
            regime_[i] = xb_[i] < 0.0 ? -1 : +1;
        return;
      }
    }
    throw RestartNeeded{};
  }

  // Gauss-Jordan inversion of the basis with partial pivoting. Columns with
  // no usable pivot are all repaired in one pass (swapped for artificials of
  // rows without a pivot) and the caller retries.
  bool try_invert() {
    const long n = rows_;
    std::vector<double> work(n * 2 * n, 0.0);
    std::vector<char> row_used(n, 0);
    std::vector<int> dead;
    for (int r = 0; r < n; ++r) {
      const int v = basic_[r];
      if (is_artificial(v)) {
        work[static_cast<long>(v - nh_) * 2 * n + r] = 1.0;
      } else {
        const double* aj = column(v);
        for (int i = 0; i < n; ++i) work[static_cast<long>(i) * 2 * n + r] = aj[i];
      }
      work[static_cast<long>(r) * 2 * n + n + r] = 1.0;
    }
    // Row i of `work` stays attached to constraint row i; pivot rows are
    // marked used instead of swapped so failures can name their rows.
    std::vector<int> pivot_row_of(n, -1);
    for (int k = 0; k < n; ++k) {
      int piv = -1;
      double pmax = 1e-12;
      for (int i = 0; i < n; ++i) {
        if (row_used[i]) continue;
        const double v = std::abs(work[static_cast<long>(i) * 2 * n + k]);
        if (v > pmax) {
          pmax = v;
          piv = i;
        }
      }
      if (piv < 0) {
        dead.push_back(k);
        continue;
      }
      row_used[piv] = 1;
      pivot_row_of[k] = piv;
      double* rk = work.data() + static_cast<long>(piv) * 2 * n;
      const double inv = 1.0 / rk[k];
      for (int c = 0; c < 2 * n; ++c) rk[c] *= inv;
#pragma omp parallel for schedule(static) if (n > 256) num_threads(parallel::max_threads())
      for (int i = 0; i < n; ++i) {
        if (i == piv) continue;
        double* ri = work.data() + static_cast<long>(i) * 2 * n;
        const double f = ri[k];
        if (f == 0.0) continue;
        for (int c = 0; c < 2 * n; ++c) ri[c] -= f * rk[c];
      }
    }
    if (!dead.empty()) {
      // Unused rows are exactly the ones the dead columns failed to cover.
      std::vector<int> free_rows;
      std::vector<char> art_in_use(n, 0);
      for (int r = 0; r < n; ++r)
        if (is_artificial(basic_[r])) art_in_use[basic_[r] - nh_] = 1;
      for (int i = 0; i < n; ++i)
        if (!row_used[i] && !art_in_use[i]) free_rows.push_back(i);
      if (free_rows.size() < dead.size()) throw RestartNeeded{};
      for (size_t t = 0; t < dead.size(); ++t) {
        const int slot = dead[t];
        const int old = basic_[slot];
        if (!is_artificial(old)) pos_[old] = -1;
        basic_[slot] = nh_ + free_rows[t];
        regime_[slot] = +1;
      }
      return false;
    }
    // binv row i corresponds to basis slot i: undo the row/column pairing.
    for (int k = 0; k < n; ++k) {
      const double* src = work.data() + static_cast<long>(pivot_row_of[k]) * 2 * n + n;
      double* dst = binv_.data() + static_cast<long>(k) * n;
      for (int j = 0; j < n; ++j) dst[j] = src[j];
    }
    return true;
  }

  double phase1_objective() const {
    double s = 0.0;
    for (int r = 0; r < rows_; ++r)
      if (is_artificial(basic_[r])) s += std::max(0.0, xb_[r]);
    return s;
  }

  void collect_farkas(LpSolution& sol) const {
    sol.farkas.assign(p_.eq_rows.size(), 0.0);
    for (int r = 0; r < rows_; ++r) sol.farkas[orig_row_[r]] = y_[r] * row_scale_[r];
  }

  LpSolution finish(LpSolution& sol, LpStatus st) {
    sol.status = st;
    sol.iterations = static_cast<int>(iters_);
    sol.pivots = std::move(pivots_);
    sol.h = DenseMatrix(p_.h_rows, p_.h_cols);
    if (rows_ == 0) return sol;

    if (st == LpStatus::optimal || st == LpStatus::iteration_limit) {
      for (int r = 0; r < rows_; ++r) {
        const int v = basic_[r];
        if (!is_artificial(v)) {
          sol.h(v / p_.h_cols, v % p_.h_cols) = xb_[r];
          sol.basis.push_back(v);
        }
      }
      std::sort(sol.basis.begin(), sol.basis.end());

      double obj = 0.0;
      for (int k = 0; k < nh_; ++k) {
        const double hk = sol.h(k / p_.h_cols, k % p_.h_cols);
        obj += clin_[k] * hk + wabs_[k] * std::abs(hk);
      }
      sol.objective = obj;

      // Honest certificates in original units; rows dropped as redundant
      // after phase 1 carry zero multipliers.
      if (!phase1_) compute_duals();
      sol.dual.assign(p_.eq_rows.size(), 0.0);
      double dualobj = 0.0;
      for (int r = 0; r < rows_; ++r) {
        sol.dual[orig_row_[r]] = y_[r] * row_scale_[r];
        dualobj += rhs_[r] * y_[r];
      }
      sol.duality_gap = obj - dualobj;

      double dinf = 0.0;
      for (int j = 0; j < nh_; ++j) {
        if (pos_[j] >= 0) continue;
        const double z = dot(y_.data(), column(j), rows_);
        dinf = std::max(dinf, -std::min(clin_[j] + wabs_[j] - z, -clin_[j] + wabs_[j] + z));
      }
      sol.dual_infeasibility = std::max(0.0, dinf);

      double pinf = 0.0;
      for (const LinRow& row : p_.eq_rows) {
        double v = -row.rhs;
        for (const LinTerm& t : row.terms)
          v += t.coef * sol.h(t.var / p_.h_cols, t.var % p_.h_cols);
        pinf = std::max(pinf, std::abs(v));
      }
      sol.primal_infeasibility = pinf;
    }
    return sol;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p, const LpOptions& opts) {
  L1Simplex solver(p, opts);
  return solver.run();
}

LpSolution solve_lp(const LpProblem& p, double tol) {
  LpOptions opts;
  opts.tol = tol;
  return solve_lp(p, opts);
}

std::vector<LpSolution> solve_lps(const std::vector<LpProblem>& problems,
                                  const LpOptions& opts, bool parallel) {
  std::vector<LpSolution> out(problems.size());
  const int n = static_cast<int>(problems.size());
  if (parallel && parallel::enabled()) {
#pragma omp parallel for schedule(dynamic) num_threads(parallel::max_threads())
    for (int i = 0; i < n; ++i) out[i] = solve_lp(problems[i], opts);
  } else {
    for (int i = 0; i < n; ++i) out[i] = solve_lp(problems[i], opts);
  }
  return out;
}

}  // namespace spinv
