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

#include "spinv/bench.hpp"
#include "spinv/kernels.hpp"
#include "spinv/svd.hpp"

using namespace spinv;

TEST_SUITE("bench") {

TEST_CASE("generator determinism and shape") {
  const Instance a = generate_instance({4, 4, 99});
  const Instance b = generate_instance({4, 4, 99});
  CHECK(max_abs_diff(a.a, b.a) == 0.0);
  CHECK(a.a.rows() == 4);
  CHECK(a.a.cols() == 4);
  const Instance c = generate_instance({4, 4, 100});
  CHECK(max_abs_diff(a.a, c.a) > 0.0);

  const Instance rect = generate_instance({3, 3, 5, 1.0, 7});
  CHECK(rect.a.rows() == 7);
  CHECK(rect.a.cols() == 3);

  CHECK_THROWS_AS(generate_instance({4, 5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance({4, 0, 1}), std::invalid_argument);
}

TEST_CASE("generator hits the requested numerical rank") {
  const Instance inst = generate_instance({6, 2, 12345});
  const SvdFactors f = svd(inst.a);
  CHECK(f.s[1] > 1e-8);
  for (int k = 2; k < 6; ++k) CHECK(f.s[k] <= 1e-12 * f.s[0]);
}

TEST_CASE("scale enters linearly") {
  const Instance unit = generate_instance({5, 3, 77, 1.0});
  const Instance scaled = generate_instance({5, 3, 77, 0.01});
  REQUIRE(unit.redraws == scaled.redraws);
  CHECK(max_abs_diff(0.01 * unit.a, scaled.a) == 0.0);
}

TEST_CASE("metrics are exactly 1 for H = A+") {
  const Instance inst = generate_instance({5, 2, 31});
  const DenseMatrix apinv = mp_pinv(inst.a);
  const MetricsRecord rec = metrics(inst.a, apinv, apinv, 1e-5);
  CHECK(rec.one_norm_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.sparsity_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.lsr == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rec.two_norm_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rec.nnz_h == rec.nnz_apinv);
}

TEST_CASE("2nr hand value sqrt(2) on the all-ones example") {
  const DenseMatrix j{{1.0, 1.0}, {1.0, 1.0}};
  const DenseMatrix h{{0.5, 0.5}, {0.0, 0.0}};
  const MetricsRecord rec = metrics(j, mp_pinv(j), h, 1e-5);
  // HA*1 = (2, 0)', A+A*1 = (1, 1)': ratio 2/sqrt(2) = sqrt(2).
  CHECK(rec.two_norm_ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(rec.lsr == doctest::Approx(1.0).epsilon(1e-9));  // AH = AA+
}

TEST_CASE("lsr equals 1 when both residuals match") {
  const DenseMatrix a{{1.0, 0.0}, {0.0, 0.0}};
  const DenseMatrix h{{1.0, 0.0}, {0.0, 0.0}};  // satisfies P1
  const MetricsRecord rec = metrics(a, mp_pinv(a), h, 1e-5);
  CHECK(rec.lsr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(rec.degenerate_lsr);
}

TEST_CASE("lsr degenerate branch flags invertible-like cases") {
  const DenseMatrix a = DenseMatrix::identity(2);
  const MetricsRecord rec = metrics(a, mp_pinv(a), DenseMatrix::identity(2), 1e-5);
  CHECK(rec.degenerate_lsr);
  CHECK(rec.lsr == doctest::Approx(1.0));
}

TEST_CASE("table runner: counts, order, and determinism") {
  TableConfig config;
  config.n = 6;
  config.ranks = {2, 3};
  config.seeds_per_rank = 2;
  config.variants = {Variant::parse("p1"), Variant::parse("p1+p3")};
  config.scale = 1.0;
  const std::vector<TableRow> rows = run_table(config);
  REQUIRE(rows.size() == 2u * 2u * 2u);
  CHECK(rows[0].r == 2);
  CHECK(rows[0].variant == "p1");
  CHECK(rows[1].variant == "p1+p3");
  CHECK(rows.back().r == 3);

  const std::string csv1 = table_to_csv(rows);
  config.parallel = false;
  const std::string csv2 = table_to_csv(run_table(config));
  CHECK(csv1 == csv2);  // byte-identical, parallel or not
  CHECK(csv1.rfind("r,apinv_1norm,variant,1nr,sr,lsr,2nr,status\n", 0) == 0);

  for (const TableRow& row : rows) {
    CHECK_FALSE(row.failed);
    REQUIRE(row.status == LpStatus::optimal);
    CHECK(row.rec.one_norm_ratio <= 1.0 + 1e-9);
    CHECK(row.rec.sparsity_ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("structural sparsity at a small scale") {
  TableConfig config;
  config.n = 10;
  config.ranks = {3};
  config.seeds_per_rank = 2;
  config.variants = {Variant::parse("p1"), Variant::parse("p1+p3"),
                     Variant::parse("p1+p4"), Variant::parse("p1+p3+p4")};
  const std::vector<TableRow> rows = run_table(config);
  const double slack = 0.02 * 10 * 10;
  for (const TableRow& row : rows) {
    REQUIRE(row.status == LpStatus::optimal);
    long expect = 0;
    if (row.variant == "p1") expect = 3 * 3;
    if (row.variant == "p1+p3" || row.variant == "p1+p4") expect = 3 * 10;
    if (row.variant == "p1+p3+p4") expect = 2 * 3 * 10 - 3 * 3;
    CHECK(std::abs(static_cast<double>(row.rec.nnz_h - expect)) <= slack);
  }
}

TEST_CASE("corollary columns are exactly 1 in the table") {
  TableConfig config;
  config.n = 8;
  config.ranks = {3};
  config.seeds_per_rank = 2;
  config.variants = {Variant::parse("p1+p3"), Variant::parse("p1+p4"),
                     Variant::parse("p1+p3+p4")};
  for (const TableRow& row : run_table(config)) {
    REQUIRE(row.status == LpStatus::optimal);
    if (row.variant == "p1+p3" || row.variant == "p1+p3+p4")
      CHECK(row.rec.lsr == doctest::Approx(1.0).epsilon(1e-6));
    if (row.variant == "p1+p4" || row.variant == "p1+p3+p4")
      CHECK(row.rec.two_norm_ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("provenance block echoes the config deterministically") {
  TableConfig config;
  config.n = 6;
  config.ranks = {2};
  config.variants = {Variant::parse("p1")};
  const std::string prov = provenance_block(config);
  CHECK(prov.find("base_seed=20260811") != std::string::npos);
  CHECK(prov.find("variants=p1") != std::string::npos);
  CHECK(prov == provenance_block(config));
}

}  // TEST_SUITE
