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

#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "spinv/kernels.hpp"
#include "spinv/lp.hpp"
#include "spinv/rng.hpp"
#include "spinv/svd.hpp"

using namespace spinv;

namespace {

DenseMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
  SplitMix64 gen(seed);
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gen.uniform(-1.0, 1.0);
  return m;
}

DenseMatrix random_low_rank(int rows, int cols, int rank, std::uint64_t seed) {
  return matmul(random_matrix(rows, rank, seed), random_matrix(rank, cols, seed + 1));
}

const DenseMatrix kJ{{1.0, 1.0}, {1.0, 1.0}};

// Tiny handcrafted problem: min t s.t. t >= h, t >= -h, h = 1.
LpProblem fixed_scalar_problem() {
  LpProblem p;
  p.h_rows = 1;
  p.h_cols = 1;
  p.num_vars = 2;
  p.objective = {0.0, 1.0};
  p.eq_rows.push_back(LinRow{{{0, 1.0}}, 1.0});
  p.ineq_rows.push_back(LinRow{{{1, 1.0}, {0, -1.0}}, 0.0});
  p.ineq_rows.push_back(LinRow{{{1, 1.0}, {0, 1.0}}, 0.0});
  return p;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("builder invariants: variable and row counts") {
  const DenseMatrix a = random_matrix(3, 4, 1);
  for (bool p3 : {false, true}) {
    for (bool p4 : {false, true}) {
      PropertySet props{true, p3, p4, false};
      const LpProblem p = build_relaxed_mp_lp(a, props);
      const int nh = 4 * 3;  // H is n x m
      CHECK(p.num_vars == 2 * nh);
      CHECK(p.ineq_rows.size() == 2u * nh);
      const size_t expect =
          3u * 4u + (p3 ? 3u * 2u / 2u : 0u) + (p4 ? 4u * 3u / 2u : 0u);
      CHECK(p.eq_rows.size() == expect);
      for (int k = 0; k < nh; ++k) {
        CHECK(p.objective[k] == 0.0);
        CHECK(p.objective[nh + k] == 1.0);
      }
    }
  }
  CHECK_THROWS_AS(build_relaxed_mp_lp(a, PropertySet{false, true, false, false}),
                  std::invalid_argument);
}

TEST_CASE("left inverse of a 2x1 column picks one nonzero") {
  const DenseMatrix a{{1.0}, {1.0}};
  const auto subs = build_left_inverse_lps(a);
  REQUIRE(subs.size() == 1);
  // Oracle: the two vertices of h1 + h2 = 1 with minimal |h1| + |h2|.
  const oracle::VertexOpt ref = oracle::enumerate_vertices(subs[0]);
  REQUIRE(ref.feasible);
  CHECK(ref.objective == doctest::Approx(1.0).epsilon(1e-12));

  const LpSolution s = solve_lp(subs[0], 1e-9);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nnz(s.h, 1e-9) == 1);
  CHECK(s.h(0, 0) + s.h(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("left inverse of the identity is the identity") {
  const auto subs = build_left_inverse_lps(DenseMatrix::identity(2));
  REQUIRE(subs.size() == 2);
  for (int i = 0; i < 2; ++i) {
    const LpSolution s = solve_lp(subs[i], 1e-9);
    REQUIRE(s.status == LpStatus::optimal);
    for (int j = 0; j < 2; ++j)
      CHECK(s.h(0, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("no left inverse for rank-deficient input") {
  const auto subs = build_left_inverse_lps(kJ);
  for (const LpProblem& sub : subs) {
    const LpSolution s = solve_lp(sub, 1e-9);
    CHECK(s.status == LpStatus::infeasible);
    CHECK(s.phase1_objective > 1e-9);
    // Farkas certificate: y'G ~ 0 on every h column, y'g > 0.
    REQUIRE(s.farkas.size() == sub.eq_rows.size());
    double ytg = 0.0;
    std::vector<double> combo(sub.num_h(), 0.0);
    for (size_t r = 0; r < sub.eq_rows.size(); ++r) {
      ytg += s.farkas[r] * sub.eq_rows[r].rhs;
      for (const LinTerm& t : sub.eq_rows[r].terms) combo[t.var] += s.farkas[r] * t.coef;
    }
    CHECK(ytg > 1e-10);
    for (double c : combo) CHECK(std::abs(c) <= 1e-7 * std::abs(ytg));
  }
}

TEST_CASE("right inverse examples and transpose duality") {
  const DenseMatrix row{{1.0, 1.0}};
  const auto subs = build_right_inverse_lps(row);
  REQUIRE(subs.size() == 1);
  const LpSolution s = solve_lp(subs[0], 1e-9);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-9));

  const auto id = build_right_inverse_lps(DenseMatrix::identity(3));
  for (int j = 0; j < 3; ++j) {
    const LpSolution sj = solve_lp(id[j], 1e-9);
    for (int i = 0; i < 3; ++i)
      CHECK(sj.h(i, 0) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }

  // The right-inverse subproblems of A are the left-inverse subproblems of A'.
  const DenseMatrix a = random_matrix(3, 5, 9);
  const auto right = build_right_inverse_lps(a);
  const auto left_t = build_left_inverse_lps(a.transposed());
  REQUIRE(right.size() == left_t.size());
  for (size_t k = 0; k < right.size(); ++k) {
    CHECK(right[k].eq_rows == left_t[k].eq_rows);
    const LpSolution sr = solve_lp(right[k], 1e-9);
    const LpSolution sl = solve_lp(left_t[k], 1e-9);
    REQUIRE(sr.status == LpStatus::optimal);
    CHECK(sr.objective == doctest::Approx(sl.objective).epsilon(1e-12));
    for (int i = 0; i < right[k].num_h(); ++i)
      CHECK(sr.h.data()[i] == sl.h.data()[i]);
  }
}

TEST_CASE("relaxed P1 on the all-ones matrix: one effective constraint") {
  const LpProblem p = build_relaxed_mp_lp(kJ, PropertySet{true, false, false, false});
  CHECK(p.eq_rows.size() == 4);  // redundant rows are kept
  const oracle::VertexOpt ref = oracle::enumerate_vertices(p);
  REQUIRE(ref.feasible);
  CHECK(ref.objective == doctest::Approx(1.0).epsilon(1e-12));

  const LpSolution s = solve_lp(p, 1e-9);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nnz(s.h, 1e-9) == 1);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += s.h.data()[k];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("relaxed P1+P3 on the all-ones matrix reaches AH = AA+") {
  const LpProblem p = build_relaxed_mp_lp(kJ, PropertySet{true, true, false, false});
  const oracle::VertexOpt ref = oracle::enumerate_vertices(p);
  REQUIRE(ref.feasible);
  CHECK(ref.objective == doctest::Approx(1.0).epsilon(1e-12));

  const LpSolution s = solve_lp(p, 1e-9);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-9));
  // AH must equal AA+ = J/2 entry-wise.
  const DenseMatrix ah = matmul(kJ, s.h);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(ah(i, k) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("invertible A forces H = inverse(A)") {
  const DenseMatrix a{{2.0, 0.0}, {0.0, 4.0}};
  for (PropertySet props : {PropertySet{true, false, false, false},
                            PropertySet{true, true, true, false}}) {
    const LpSolution s = solve_lp(build_relaxed_mp_lp(a, props), 1e-9);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.h(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(s.h(1, 1) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(std::abs(s.h(0, 1)) <= 1e-10);
    CHECK(std::abs(s.h(1, 0)) <= 1e-10);
  }
}

TEST_CASE("scalar epigraph problem") {
  const LpSolution s = solve_lp(fixed_scalar_problem(), 1e-9);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(s.h(0, 0) == doctest::Approx(1.0));
  CHECK(s.duality_gap <= 1e-10);
}

TEST_CASE("solver rejects malformed problems") {
  LpProblem p = fixed_scalar_problem();
  p.objective = {0.0};
  CHECK_THROWS_AS(solve_lp(p, 1e-9), std::invalid_argument);
  LpProblem q = fixed_scalar_problem();
  q.ineq_rows.pop_back();
  CHECK_THROWS_AS(solve_lp(q, 1e-9), std::invalid_argument);
  LpProblem r = fixed_scalar_problem();
  r.eq_rows[0].terms[0].var = 1;  // equality row over a t variable
  CHECK_THROWS_AS(solve_lp(r, 1e-9), std::invalid_argument);
}

TEST_CASE("objective monotone in the enforced property set") {
  for (int rep = 0; rep < 3; ++rep) {
    const DenseMatrix a = random_low_rank(5, 5, 2, 400 + rep);
    const double o1 =
        solve_lp(build_relaxed_mp_lp(a, {true, false, false, false}), 1e-9).objective;
    const double o13 =
        solve_lp(build_relaxed_mp_lp(a, {true, true, false, false}), 1e-9).objective;
    const double o14 =
        solve_lp(build_relaxed_mp_lp(a, {true, false, true, false}), 1e-9).objective;
    const double o134 =
        solve_lp(build_relaxed_mp_lp(a, {true, true, true, false}), 1e-9).objective;
    CHECK(o1 <= o13 + 1e-8);
    CHECK(o1 <= o14 + 1e-8);
    CHECK(o13 <= o134 + 1e-8);
    CHECK(o14 <= o134 + 1e-8);
    // A+ is feasible for every variant.
    const double apinv1 = one_norm(mp_pinv(a));
    CHECK(o134 <= apinv1 + 1e-8 * std::max(1.0, apinv1));
  }
}

TEST_CASE("solutions satisfy the requested residuals") {
  const DenseMatrix a = random_low_rank(6, 6, 3, 321);
  const double anorm = frobenius_norm(a);
  for (PropertySet props : {PropertySet{true, false, false, false},
                            PropertySet{true, true, false, false},
                            PropertySet{true, false, true, false},
                            PropertySet{true, true, true, false}}) {
    const LpSolution s = solve_lp(build_relaxed_mp_lp(a, props), 1e-9);
    REQUIRE(s.status == LpStatus::optimal);
    const PropertyResiduals r = mp_residuals(a, s.h);
    CHECK(r.p1 <= 1e-6 * anorm);
    if (props.p3) CHECK(r.p3 <= 1e-6 * anorm);
    if (props.p4) CHECK(r.p4 <= 1e-6 * anorm);
    CHECK(s.duality_gap <= 1e-8 * std::max(1.0, std::abs(s.objective)));
    CHECK(s.primal_infeasibility <= 1e-8);
  }
}

TEST_CASE("full-rank collapse to the Moore-Penrose pseudoinverse") {
  const DenseMatrix a = random_matrix(7, 3, 55);  // full column rank
  const LpSolution s = solve_lp(build_relaxed_mp_lp(a, {true, true, false, false}), 1e-9);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(frobenius_norm(s.h - mp_pinv(a)) <= 1e-6);

  const DenseMatrix b = random_matrix(3, 7, 56);  // full row rank
  const LpSolution t = solve_lp(build_relaxed_mp_lp(b, {true, false, true, false}), 1e-9);
  REQUIRE(t.status == LpStatus::optimal);
  CHECK(frobenius_norm(t.h - mp_pinv(b)) <= 1e-6);
}

TEST_CASE("determinism: identical runs give identical pivot sequences") {
  const DenseMatrix a = random_low_rank(6, 6, 3, 777);
  const LpProblem p = build_relaxed_mp_lp(a, {true, true, false, false});
  const LpSolution s1 = solve_lp(p, 1e-9);
  const LpSolution s2 = solve_lp(p, 1e-9);
  REQUIRE(s1.status == LpStatus::optimal);
  CHECK(s1.pivots == s2.pivots);
  CHECK(s1.basis == s2.basis);
  CHECK(s1.iterations == s2.iterations);
  for (long k = 0; k < s1.h.size(); ++k) CHECK(s1.h.data()[k] == s2.h.data()[k]);
}

TEST_CASE("tiny problems match exhaustive vertex enumeration") {
  SplitMix64 gen(2026);
  int solved = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const int nh = 1 + static_cast<int>(gen.next() % 3);  // num_vars <= 6
    const int ne = 1 + static_cast<int>(gen.next() % 2);
    LpProblem p;
    p.h_rows = 1;
    p.h_cols = nh;
    p.num_vars = 2 * nh;
    p.objective.assign(2 * nh, 0.0);
    for (int k = 0; k < nh; ++k) p.objective[nh + k] = 1.0;
    for (int k = 0; k < nh; ++k) {
      p.ineq_rows.push_back(LinRow{{{nh + k, 1.0}, {k, -1.0}}, 0.0});
      p.ineq_rows.push_back(LinRow{{{nh + k, 1.0}, {k, 1.0}}, 0.0});
    }
    for (int e = 0; e < ne; ++e) {
      LinRow row;
      for (int k = 0; k < nh; ++k) {
        const double c = std::round(gen.uniform(-3.0, 3.0));
        if (c != 0.0) row.terms.push_back({k, c});
      }
      row.rhs = std::round(gen.uniform(-3.0, 3.0));
      p.eq_rows.push_back(std::move(row));
    }
    const oracle::VertexOpt ref = oracle::enumerate_vertices(p);
    const LpSolution s = solve_lp(p, 1e-9);
    if (!ref.feasible) {
      CHECK(s.status == LpStatus::infeasible);
      continue;
    }
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(ref.objective).epsilon(1e-9));
    ++solved;
  }
  CHECK(solved > 20);
}

}  // TEST_SUITE
