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

#include <algorithm>
#include <random>

#include "hdsdr/dr.hpp"
#include "test_util.hpp"

using namespace hdsdr;

namespace {

DataTable table_of(Points p) {
  DataTable t;
  t.points = std::move(p);
  return t;
}

Points gaussian_points(Index m, Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z;
  Points p(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) p(i, j) = z(gen);
  }
  return p;
}

// Straightforward O(m^2 n) distances, independent of the library routine.
Matrix distances(const Points& p) {
  Matrix d(p.rows(), p.rows());
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.rows(); ++j) {
      double s = 0;
      for (Index c = 0; c < p.cols(); ++c) {
        s += (p(i, c) - p(j, c)) * (p(i, c) - p(j, c));
      }
      d(i, j) = std::sqrt(s);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("random projection basis is orthonormal") {
  for (Index s : {1, 2, 5, 12}) {
    const RpMatrix rp = rp_matrix(12, s, 99);
    REQUIRE(rp.basis.rows() == 12);
    REQUIRE(rp.basis.cols() == s);
    const Matrix gram = rp.basis.transpose() * rp.basis;
    CHECK((gram - Matrix::Identity(s, s)).cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK_THROWS_AS(rp_matrix(3, 4, 0), Error);
  CHECK_THROWS_AS(rp_matrix(3, 0, 0), Error);
}

TEST_CASE("random projection with s = n is an isometry") {
  for (Index n : {2, 6}) {
    const DataTable t = table_of(test::random_points(40, n, 5, 3.0));
    const Embedding e = random_projection(t, n, 1234);
    CHECK((distances(e.coords) - distances(t.points)).cwiseAbs().maxCoeff() <=
          1e-9);
  }
}

TEST_CASE("random projection is linear and deterministic") {
  Points p = test::random_points(10, 6, 2);
  p.row(4).setZero();
  const DataTable t = table_of(p);
  const Embedding a = random_projection(t, 2, 7);
  const Embedding b = random_projection(t, 2, 7);
  const Embedding c = random_projection(t, 2, 8);
  CHECK(a.coords.row(4).isZero(0.0));
  CHECK(a.coords == b.coords);
  CHECK(a.coords != c.coords);
  CHECK(a.method == "rp");
  CHECK(a.params.at("seed") == "7");
  CHECK(a.source_checksum == checksum(t));
  CHECK_THROWS_AS(random_projection(t, 7, 0), Error);
}

TEST_CASE("classical MDS of an equilateral triangle") {
  const double h = std::sqrt(3.0) / 2;
  const Matrix d = distances(test::from_rows({{0, 0}, {1, 0}, {0.5, h}}));
  const Points y = classical_mds(d);
  REQUIRE(y.rows() == 3);
  REQUIRE(y.cols() == 2);
  const Matrix back = distances(y);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      CHECK(std::abs(back(i, j) - (i == j ? 0.0 : 1.0)) <= 1e-9);
    }
  }
}

TEST_CASE("classical MDS of two points") {
  Matrix d(2, 2);
  d << 0, 2.5, 2.5, 0;
  const Points y = classical_mds(d, 1);
  CHECK(std::abs(std::abs(y(0, 0) - y(1, 0)) - 2.5) <= 1e-12);
  CHECK_THROWS_WITH_AS(classical_mds(d, 2),
                       doctest::Contains("insufficient intrinsic dimension"),
                       Error);
}

TEST_CASE("classical MDS reproduces realizable distances") {
  for (Index s : {1, 2, 3}) {
    const Points p = test::random_points(60, s, 10 + static_cast<std::uint64_t>(s), 4.0);
    const Matrix d = distances(p);
    const Points y = classical_mds(d, s);
    CHECK((distances(y) - d).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("classical MDS input validation") {
  Matrix d = distances(test::random_points(4, 2, 1));
  Matrix bad = d;
  bad(0, 1) += 0.1;
  CHECK_THROWS_AS(classical_mds(bad), Error);
  bad = d;
  bad(2, 2) = 1e-3;
  CHECK_THROWS_AS(classical_mds(bad), Error);
  bad = d;
  bad(0, 1) = bad(1, 0) = -1;
  CHECK_THROWS_AS(classical_mds(bad), Error);
  CHECK_THROWS_AS(classical_mds(Matrix(3, 2)), Error);
}

TEST_CASE("sign convention makes the largest entry positive") {
  Matrix v(3, 2);
  v << 0.1, 0.9, -0.8, -0.2, 0.3, 0.1;
  fix_signs(v);
  CHECK(v(1, 0) == 0.8);
  CHECK(v(0, 1) == 0.9);
  CHECK(v(0, 0) == -0.1);
}

TEST_CASE("landmark count") {
  CHECK(landmark_count(2000, 0.05, 2) == 100);
  CHECK(landmark_count(20, 0.05, 2) == 3);
  CHECK(landmark_count(50, 1.0, 2) == 50);
  const Points p = test::random_points(50, 3, 1);
  LandmarkOptions o;
  o.ratio = 0.0;
  CHECK_THROWS_AS(select_landmarks(p, o), Error);
  o.ratio = 1.5;
  CHECK_THROWS_AS(select_landmarks(p, o), Error);
  o.ratio = 0.5;
  CHECK_THROWS_AS(select_landmarks(p.topRows(2), o), Error);
}

TEST_CASE("default landmark selection on N = 2000") {
  const Points p = test::random_points(2000, 4, 3);
  LandmarkOptions o;
  const auto lm = select_landmarks(p, o);
  CHECK(lm.size() == 100);
  CHECK(std::is_sorted(lm.begin(), lm.end()));
  CHECK(std::adjacent_find(lm.begin(), lm.end()) == lm.end());
  CHECK(select_landmarks(p, o) == lm);
  o.selection = LandmarkSelection::kMaxMin;
  const auto mm = select_landmarks(p, o);
  CHECK(mm.size() == 100);
  CHECK(std::adjacent_find(mm.begin(), mm.end()) == mm.end());
}

TEST_CASE("landmark MDS with every point a landmark equals classical MDS") {
  const DataTable t = table_of(test::random_points(80, 5, 41));
  LandmarkOptions o;
  o.ratio = 1.0;
  const Embedding e = landmark_mds(t, o);
  const Points c = classical_mds(distances(t.points));
  CHECK((e.coords - c).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(e.method == "lmds");
}

TEST_CASE("non-landmark coincident with a landmark lands on it") {
  Points p = test::random_points(200, 6, 43);
  LandmarkOptions o;
  o.ratio = 0.1;
  o.seed = 5;
  const auto lm = select_landmarks(p, o);
  Index other = 0;
  while (std::binary_search(lm.begin(), lm.end(), other)) ++other;
  p.row(other) = p.row(lm[3]);
  REQUIRE(select_landmarks(p, o) == lm);
  const Embedding e = landmark_mds(table_of(p), o);
  CHECK((e.coords.row(other) - e.coords.row(lm[3])).cwiseAbs().maxCoeff() <=
        1e-9);
}

TEST_CASE("landmark MDS is deterministic per seed") {
  const DataTable t = table_of(test::random_points(300, 8, 47));
  LandmarkOptions o;
  o.seed = 3;
  const Embedding a = landmark_mds(t, o);
  CHECK(landmark_mds(t, o).coords == a.coords);
  o.seed = 4;
  CHECK(landmark_mds(t, o).coords != a.coords);
}

TEST_CASE("PCA of a line in 3D") {
  Points p(50, 3);
  for (Index i = 0; i < 50; ++i) {
    const double t = 0.1 * static_cast<double>(i) - 2.0;
    p.row(i) << 1 + 2 * t, -3 + t, 0.5 - 2 * t;
  }
  const PcaModel m = pca_fit(table_of(p));
  CHECK(std::abs(m.explained_variance_ratio(0) - 1.0) <= 1e-9);
  CHECK(std::abs(m.explained_variance_ratio(1)) <= 1e-9);
  CHECK(std::abs(m.explained_variance_ratio(2)) <= 1e-9);
  CHECK(components_for_variance(m, 0.8) == 1);
  const DataTable r = reduce_variance(table_of(p), 0.8);
  CHECK(r.cols() == 1);
  CHECK(r.names == std::vector<std::string>{"pc1"});
}

TEST_CASE("PCA of isotropic Gaussian data") {
  const PcaModel m = pca_fit(table_of(gaussian_points(10000, 5, 2024)));
  for (Index j = 0; j < 5; ++j) {
    CHECK(std::abs(m.explained_variance_ratio(j) - 0.2) <= 0.02);
  }
}

TEST_CASE("PCA model invariants") {
  Points p = gaussian_points(400, 6, 9);
  for (Index j = 0; j < 6; ++j) p.col(j) *= static_cast<double>(j + 1);
  const PcaModel m = pca_fit(table_of(p));
  const Vector& r = m.explained_variance_ratio;
  CHECK(std::abs(r.sum() - 1.0) <= 1e-9);
  CHECK((r.array() >= 0.0).all());
  for (Index j = 1; j < r.size(); ++j) CHECK(r(j) <= r(j - 1));
  CHECK((m.components.transpose() * m.components - Matrix::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
  CHECK((m.mean - p.colwise().mean().transpose()).norm() <= 1e-12);
}

TEST_CASE("PCA transform with s = n is an isometry") {
  const DataTable t = table_of(test::random_points(70, 4, 13, 2.0));
  const Embedding e = pca_transform(pca_fit(t), t, 4);
  CHECK((distances(e.coords) - distances(t.points)).cwiseAbs().maxCoeff() <=
        1e-9);
  CHECK(e.coords.colwise().mean().cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(e.method == "pca");
  CHECK_THROWS_AS(pca_transform(pca_fit(t), t, 5), Error);
}

TEST_CASE("PCA errors") {
  CHECK_THROWS_AS(pca_fit(table_of(test::random_points(1, 3, 1))), Error);
  CHECK_THROWS_AS(pca_fit(table_of(Points::Constant(5, 2, 3.0))), Error);
}

TEST_CASE("variance reduction") {
  DataTable t = table_of(test::random_points(100, 7, 17));
  t.labels = Labels(100, "a");
  (*t.labels)[3] = "b";
  const DataTable full = reduce_variance(t, 1.0);
  CHECK(full.cols() == 7);
  CHECK(full.labels == t.labels);
  CHECK(full.names.back() == "pc7");
  const DataTable part = reduce_variance(t, 0.5);
  CHECK(part.cols() < 7);
  const PcaModel m = pca_fit(t);
  const Index c = part.cols();
  CHECK(m.explained_variance_ratio.head(c).sum() >= 0.5);
  CHECK(m.explained_variance_ratio.head(c - 1).sum() < 0.5);
  CHECK_THROWS_AS(reduce_variance(t, 0.0), Error);
  CHECK_THROWS_AS(reduce_variance(t, 1.01), Error);
}
