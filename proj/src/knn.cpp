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

#include "hdsdr/knn.hpp"

#include <string>

namespace hdsdr {

NeighborIndex build_index(const Eigen::Ref<const Points>& points) {
  return NeighborIndex(Points(points));
}

std::vector<Neighbor<double>> query_knn(const NeighborIndex& index, Index row,
                                        Index k) {
  if (k < 1 || k > index.size() - 1) {
    throw Error("k out of range: k=" + std::to_string(k) + " with " +
                std::to_string(index.size()) + " points");
  }
  return index.query(row, k);
}

KnnTable all_knn(const NeighborIndex& index, Index k) {
  const Index m = index.size();
  if (k < 1 || k > m - 1) {
    throw Error("k out of range: k=" + std::to_string(k) + " with " +
                std::to_string(m) + " points");
  }
  KnnTable out;
  out.indices.resize(m, k);
  out.distances.resize(m, k);
#pragma omp parallel
  {
    std::vector<Index> idx;
    std::vector<double> d2;
#pragma omp for schedule(dynamic, 64)
    for (Index i = 0; i < m; ++i) {
      index.query_squared(index.points().row(i).data(), k, i, idx, d2);
      for (Index r = 0; r < k; ++r) {
        out.indices(i, r) = idx[static_cast<std::size_t>(r)];
        out.distances(i, r) = std::sqrt(d2[static_cast<std::size_t>(r)]);
      }
    }
  }
  return out;
}

KnnTable all_knn(const Eigen::Ref<const Points>& points, Index k) {
  return all_knn(build_index(points), k);
}

void neighbor_order(const Eigen::Ref<const Points>& points, Index i,
                    std::vector<Index>& order, std::vector<double>& d2) {
  const Index m = points.rows();
  const Index n = points.cols();
  d2.resize(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    d2[static_cast<std::size_t>(j)] =
        squared_distance(points.row(i).data(), points.row(j).data(), n);
  }
  order.clear();
  order.reserve(static_cast<std::size_t>(m - 1));
  for (Index j = 0; j < m; ++j) {
    if (j != i) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return closer(d2[static_cast<std::size_t>(a)], a,
                  d2[static_cast<std::size_t>(b)], b);
  });
}

RankMatrix rank_matrix(const Eigen::Ref<const Points>& points) {
  const Index m = points.rows();
  if (m < 2) throw Error("rank matrix needs at least two points");
  RankMatrix ranks = RankMatrix::Zero(m, m);
#pragma omp parallel
  {
    std::vector<Index> order;
    std::vector<double> d2;
#pragma omp for schedule(dynamic, 16)
    for (Index i = 0; i < m; ++i) {
      neighbor_order(points, i, order, d2);
      for (std::size_t r = 0; r < order.size(); ++r) {
        ranks(i, order[r]) = static_cast<Index>(r) + 1;
      }
    }
  }
  return ranks;
}

}  // namespace hdsdr
