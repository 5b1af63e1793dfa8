// Copyright 2026 The HD-SDR Authors.
//
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

#include "doctest.h"

#include "hdsdr/dr.hpp"
#include "hdsdr/metrics.hpp"
#include "json.hpp"
#include "oracle/brute_force.hpp"
#include "test_util.hpp"

using namespace hdsdr;

namespace {

Labels cycle_labels(Index m, int classes) {
  Labels g(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = std::to_string(i % classes);
  return g;
}

DataTable table_of(Points p) {
  DataTable t;
  t.points = std::move(p);
  return t;
}

}  // namespace

TEST_CASE("identity embedding scores one") {
  const Points p = test::random_points(60, 4, 1);
  for (Index k : {1, 5, 29}) {
    CHECK(trustworthiness(p, p, k) == 1.0);
    CHECK(continuity(p, p, k) == 1.0);
  }
  for (Index k : {1, 30, 59}) CHECK(jaccard_nn(p, p, k) == 1.0);
}

TEST_CASE("metrics equal the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CAPTURE(seed);
    const Index m = 20 + static_cast<Index>(seed) * 13;
    const Index n = 2 + static_cast<Index>(seed % 7);
    const bool lattice = seed % 3 == 0;
    const Points data = lattice ? test::lattice_points(m, n, seed)
                                : test::random_points(m, n, seed);
    const Points emb = lattice ? test::lattice_points(m, 2, seed + 100)
                               : test::random_points(m, 2, seed + 100);
    const Labels g = cycle_labels(m, 3);
    for (Index k : {Index{1}, Index{3}, m / 2 - 1}) {
      CAPTURE(k);
      CHECK(trustworthiness(data, emb, k) == oracle::trustworthiness(data, emb, k));
      CHECK(continuity(data, emb, k) == oracle::continuity(data, emb, k));
      CHECK(jaccard_nn(data, emb, k) == oracle::jaccard(data, emb, k));
      CHECK(neighborhood_hit(emb, g, k) == oracle::neighborhood_hit(emb, g, k));
    }
    CHECK(jaccard_nn(data, emb, m - 1) == oracle::jaccard(data, emb, m - 1));
  }
}

TEST_CASE("scrambled 1D instance") {
  const Points data = test::from_rows({{0}, {1}, {2}, {10}});
  const Points emb = test::from_rows({{0}, {3}, {1}, {7}});
  const double t = trustworthiness(data, emb, 1);
  CHECK(t == oracle::trustworthiness(data, emb, 1));
  CHECK(t < 1.0);
  CHECK(continuity(data, emb, 1) == oracle::continuity(data, emb, 1));
}

TEST_CASE("duality and symmetry") {
  for (std::uint64_t seed = 1; seed < 6; ++seed) {
    const Points a = test::random_points(50, 5, seed);
    const Points b = test::random_points(50, 2, seed * 7);
    for (Index k : {1, 4, 24}) {
      CHECK(continuity(a, b, k) == trustworthiness(b, a, k));
      CHECK(jaccard_nn(a, b, k) == jaccard_nn(b, a, k));
    }
  }
}

TEST_CASE("disjoint neighbor sets give zero Jaccard") {
  const Points data = test::from_rows({{0}, {1}, {3}});
  const Points emb = test::from_rows({{0}, {3}, {1}});
  CHECK(jaccard_nn(data, emb, 1) == 0.0);
  CHECK(jaccard_nn(data, emb, 2) == 1.0);
}

TEST_CASE("neighborhood hit examples") {
  const Points p = test::from_rows({{0}, {1}, {10}, {11}});
  const Labels g{"A", "A", "B", "B"};
  CHECK(neighborhood_hit(p, g, 1) == 1.0);
  CHECK(neighborhood_hit(p, g, 2) == 0.5);
  CHECK(neighborhood_hit(p, Labels(4, "x"), 3) == 1.0);
  CHECK(neighborhood_hit_curve(p, g, {1, 2, 3}) ==
        std::vector<double>{1.0, 0.5, 1.0 / 3.0});
}

TEST_CASE("neighborhood hit at k = m - 1 approaches 1 / C") {
  const Points p = test::random_points(400, 3, 5);
  const double q = neighborhood_hit(p, cycle_labels(400, 4), 399);
  // Exactly (m/C - 1) / (m - 1) for balanced classes.
  CHECK(q == doctest::Approx(99.0 / 399.0).epsilon(1e-12));
  CHECK(std::abs(q - 0.25) < 0.01);
}

TEST_CASE("neighborhood hit invariances") {
  const Points p = test::random_points(120, 3, 8);
  const Labels g = cycle_labels(120, 3);
  Labels renamed = g;
  for (auto& l : renamed) l = l == "0" ? "z" : l == "1" ? "0" : "1";
  Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized())
                            .toRotationMatrix();
  Points moved = p * rot.transpose();
  moved.rowwise() += Eigen::RowVector3d(5, -1, 2);
  for (Index k : {1, 7, 40}) {
    const double q = neighborhood_hit(p, g, k);
    CHECK(neighborhood_hit(p, renamed, k) == q);
    CHECK(neighborhood_hit(moved, g, k) == q);
  }
}

TEST_CASE("k range checks") {
  const Points p = test::random_points(10, 2, 1);
  const Labels g = cycle_labels(10, 2);
  CHECK_THROWS_AS(trustworthiness(p, p, 0), Error);
  CHECK_THROWS_AS(trustworthiness(p, p, 5), Error);
  CHECK_NOTHROW(trustworthiness(p, p, 4));
  CHECK_THROWS_AS(continuity(p, p, 5), Error);
  CHECK_THROWS_AS(jaccard_nn(p, p, 10), Error);
  CHECK_THROWS_AS(jaccard_nn(p, p, 0), Error);
  CHECK_THROWS_AS(neighborhood_hit(p, g, 10), Error);
  CHECK_THROWS_AS(neighborhood_hit(p, Labels(9, "a"), 2), Error);
  CHECK_THROWS_AS(trustworthiness(p, p.topRows(9), 2), Error);
}

TEST_CASE("projection curves agree with single-k metrics") {
  const Points data = test::random_points(150, 6, 21);
  const Points emb = random_projection(table_of(data), 2, 3).coords;
  const std::vector<Index> ks{1, 10, 74, 75, 149};
  const ProjectionCurves c = projection_curves(data, emb, ks);
  REQUIRE(c.ks == ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const Index k = ks[i];
    if (2 * k < 150) {
      REQUIRE(c.trustworthiness[i].has_value());
      CHECK(*c.trustworthiness[i] == trustworthiness(data, emb, k));
      CHECK(*c.continuity[i] == continuity(data, emb, k));
    } else {
      CHECK_FALSE(c.trustworthiness[i].has_value());
      CHECK_FALSE(c.continuity[i].has_value());
    }
    REQUIRE(c.jaccard[i].has_value());
    CHECK(*c.jaccard[i] == jaccard_nn(data, emb, k));
    for (const auto* v : {&c.trustworthiness[i], &c.continuity[i], &c.jaccard[i]}) {
      if (*v) CHECK((**v >= 0.0 && **v <= 1.0));
    }
  }
}

TEST_CASE("metric report serialization") {
  MetricReport r;
  r.ks = {10, 50};
  r.rows = 80;
  r.qt = {0.9, std::nullopt};
  r.qc = {0.8, std::nullopt};
  r.qj = {0.5, 0.25};
  r.qh = {std::nullopt, std::nullopt};
  r.metadata["method"] = "rp";
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("k,Qt,Qc,Qj,Qh\n", 0) == 0);
  CHECK(csv.find("10,0.9,0.8,0.5,\n") != std::string::npos);
  CHECK(csv.find("50,,,0.25,\n") != std::string::npos);
  const auto doc = nlohmann::json::parse(r.to_json());
  CHECK(doc["N"] == 80);
  CHECK(doc["Qt"][1].is_null());
  CHECK(doc["Qj"][1] == 0.25);
  CHECK(doc["metadata"]["method"] == "rp");
}

TEST_CASE("trait thresholds") {
  CHECK(size_class(1000) == "small");
  CHECK(size_class(1001) == "medium");
  CHECK(size_class(3000) == "medium");
  CHECK(size_class(3001) == "large");
  CHECK(dimensionality_class(9) == "low");
  CHECK(dimensionality_class(10) == "medium");
  CHECK(dimensionality_class(99) == "medium");
  CHECK(dimensionality_class(100) == "high");
  CHECK(idr_class(0.0999) == "low");
  CHECK(idr_class(0.1) == "medium");
  CHECK(idr_class(0.4999) == "medium");
  CHECK(idr_class(0.5) == "high");
  CHECK(idr_class(1.0) == "high");
  CHECK(class_count_class(2) == "small");
  CHECK(class_count_class(3) == "medium");
  CHECK(class_count_class(5) == "medium");
  CHECK(class_count_class(6) == "large");
}

TEST_CASE("traits of rank-1 data") {
  Points p(40, 10);
  for (Index i = 0; i < 40; ++i) {
    for (Index j = 0; j < 10; ++j) p(i, j) = static_cast<double>(i) * (j + 1);
  }
  const TraitReport r = data_traits(table_of(p));
  CHECK(r.idr_components == 1);
  CHECK(r.idr == doctest::Approx(0.1));
  CHECK(r.idr_class == "medium");
  CHECK_FALSE(r.classes.has_value());
}

TEST_CASE("traits of a small labeled table") {
  DataTable t = table_of(test::random_points(572, 8, 4));
  t.labels = cycle_labels(572, 3);
  const TraitReport r = data_traits(t, cycle_labels(572, 9));
  CHECK(r.size_class == "small");
  CHECK(r.dim_class == "low");
  CHECK(r.classes == 3);
  CHECK(r.class_class == "medium");
  CHECK(r.subclasses == 9);
  const auto doc = nlohmann::json::parse(r.to_json());
  CHECK(doc["size"] == "small");
  CHECK(doc["classes_class"] == "medium");
  CHECK(r.to_text().find("small") != std::string::npos);
}

TEST_CASE("traits of constant data") {
  const TraitReport r = data_traits(table_of(Points::Constant(5, 3, 1.0)));
  CHECK(r.idr_components == 0);
  CHECK(r.idr == 0.0);
  CHECK(r.idr_class == "low");
}
