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

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "hdsdr/types.hpp"

namespace hdsdr {

template <typename Scalar>
struct Neighbor {
  Index index;
  Scalar distance;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Strict (squared distance, row index) order used for every kNN tie-break.
template <typename Scalar>
inline bool closer(Scalar d2a, Index ia, Scalar d2b, Index ib) {
  return d2a < d2b || (d2a == d2b && ia < ib);
}

template <typename Scalar>
inline Scalar squared_distance(const Scalar* a, const Scalar* b, Index n) {
  Scalar s = 0;
  for (Index j = 0; j < n; ++j) {
    const Scalar d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

/// Exact kd-tree over the rows of a point matrix. Immutable after
/// construction; concurrent queries are safe.
///
/// Nodes split the widest coordinate at the median. Queries keep a bounded
/// max-heap keyed on (squared distance, index) and descend with incremental
/// cell distances, so results match an exhaustive scan including ties.
template <typename Scalar = double>
class KdTree {
 public:
  explicit KdTree(PointsX<Scalar> points, Index leaf_size = 10)
      : points_(std::move(points)), leaf_size_(std::max<Index>(leaf_size, 1)) {
    if (points_.rows() < 1 || points_.cols() < 1) {
      throw Error("cannot build a neighbor index over an empty point set");
    }
    if (!points_.allFinite()) {
      throw Error("neighbor index input contains non-finite values");
    }
    perm_.resize(static_cast<std::size_t>(points_.rows()));
    std::iota(perm_.begin(), perm_.end(), Index{0});
    nodes_.reserve(static_cast<std::size_t>(2 * points_.rows() / leaf_size_ + 2));
    build(0, points_.rows());
  }

  Index size() const { return points_.rows(); }
  Index dims() const { return points_.cols(); }
  const PointsX<Scalar>& points() const { return points_; }

  /// The min(k, m-1) nearest neighbors of stored row `row`, self excluded,
  /// ordered by ascending distance then ascending index.
  std::vector<Neighbor<Scalar>> query(Index row, Index k) const {
    check_row(row);
    return query_point(points_.row(row).data(), k, row);
  }

  /// Nearest neighbors of an arbitrary location; `exclude` (if >= 0) is
  /// skipped.
  std::vector<Neighbor<Scalar>> query_point(const Scalar* q, Index k,
                                            Index exclude = -1) const {
    std::vector<Index> idx;
    std::vector<Scalar> d2;
    query_squared(q, k, exclude, idx, d2);
    std::vector<Neighbor<Scalar>> out(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      out[r] = {idx[r], std::sqrt(d2[r])};
    }
    return out;
  }

  /// Allocation-reusing form returning squared distances.
  void query_squared(const Scalar* q, Index k, Index exclude,
                     std::vector<Index>& idx, std::vector<Scalar>& d2) const {
    if (k < 0) throw Error("neighbor count must be non-negative");
    const Index available = exclude >= 0 ? size() - 1 : size();
    k = std::min(k, available);
    idx.clear();
    d2.clear();
    if (k == 0) return;
    Heap heap;
    heap.items.reserve(static_cast<std::size_t>(k));
    heap.k = static_cast<std::size_t>(k);
    std::vector<Scalar> off(static_cast<std::size_t>(dims()), Scalar(0));
    search(0, q, exclude, Scalar(0), off, heap);
    std::sort_heap(heap.items.begin(), heap.items.end(), HeapLess{});
    idx.reserve(heap.items.size());
    d2.reserve(heap.items.size());
    for (const auto& [dist2, i] : heap.items) {
      idx.push_back(i);
      d2.push_back(dist2);
    }
  }

 private:
  struct Node {
    Index begin = 0, end = 0;  // leaf range into perm_
    Index dim = -1;            // -1 marks a leaf
    Scalar low_max = 0;        // max coordinate of the low child along dim
    Scalar high_min = 0;       // min coordinate of the high child along dim
    Index low = -1, high = -1;
  };

  using Item = std::pair<Scalar, Index>;
  struct HeapLess {
    bool operator()(const Item& a, const Item& b) const {
      return closer(a.first, a.second, b.first, b.second);
    }
  };
  struct Heap {
    std::vector<Item> items;
    std::size_t k = 0;
    bool full() const { return items.size() == k; }
    Scalar worst() const {
      return full() ? items.front().first
                    : std::numeric_limits<Scalar>::infinity();
    }
    void offer(Scalar d2, Index i) {
      if (!full()) {
        items.emplace_back(d2, i);
        std::push_heap(items.begin(), items.end(), HeapLess{});
      } else if (closer(d2, i, items.front().first, items.front().second)) {
        std::pop_heap(items.begin(), items.end(), HeapLess{});
        items.back() = {d2, i};
        std::push_heap(items.begin(), items.end(), HeapLess{});
      }
    }
  };

  void check_row(Index row) const {
    if (row < 0 || row >= size()) throw Error("query row out of range");
  }

  Index build(Index begin, Index end) {
    const Index id = static_cast<Index>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= leaf_size_) {
      nodes_[static_cast<std::size_t>(id)].begin = begin;
      nodes_[static_cast<std::size_t>(id)].end = end;
      return id;
    }
    const Index n = dims();
    Index best_dim = 0;
    Scalar best_spread = -1;
    for (Index j = 0; j < n; ++j) {
      Scalar lo = std::numeric_limits<Scalar>::infinity();
      Scalar hi = -lo;
      for (Index p = begin; p < end; ++p) {
        const Scalar v = points_(perm_[static_cast<std::size_t>(p)], j);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > best_spread) {
        best_spread = hi - lo;
        best_dim = j;
      }
    }
    if (best_spread <= 0) {  // all points identical
      nodes_[static_cast<std::size_t>(id)].begin = begin;
      nodes_[static_cast<std::size_t>(id)].end = end;
      return id;
    }
    const Index mid = begin + (end - begin) / 2;
    auto first = perm_.begin() + begin;
    auto nth = perm_.begin() + mid;
    auto last = perm_.begin() + end;
    std::nth_element(first, nth, last, [&](Index a, Index b) {
      const Scalar va = points_(a, best_dim), vb = points_(b, best_dim);
      return va < vb || (va == vb && a < b);
    });
    Scalar low_max = -std::numeric_limits<Scalar>::infinity();
    for (auto it = first; it != nth; ++it) {
      low_max = std::max(low_max, points_(*it, best_dim));
    }
    const Scalar high_min = points_(*nth, best_dim);
    const Index low = build(begin, mid);
    const Index high = build(mid, end);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.dim = best_dim;
    node.low_max = low_max;
    node.high_min = high_min;
    node.low = low;
    node.high = high;
    return id;
  }

  void search(Index id, const Scalar* q, Index exclude, Scalar cell_d2,
              std::vector<Scalar>& off, Heap& heap) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.dim < 0) {
      const Index n = dims();
      for (Index p = node.begin; p < node.end; ++p) {
        const Index i = perm_[static_cast<std::size_t>(p)];
        if (i == exclude) continue;
        heap.offer(squared_distance(q, points_.row(i).data(), n), i);
      }
      return;
    }
    const auto dim = static_cast<std::size_t>(node.dim);
    const Scalar to_low = q[dim] - node.low_max;
    const Scalar to_high = q[dim] - node.high_min;
    Index near_child, far_child;
    Scalar cut;
    if (to_low + to_high < 0) {
      near_child = node.low;
      far_child = node.high;
      cut = to_high * to_high;
    } else {
      near_child = node.high;
      far_child = node.low;
      cut = to_low * to_low;
    }
    search(near_child, q, exclude, cell_d2, off, heap);
    const Scalar saved = off[dim];
    const Scalar far_d2 = cell_d2 - saved + cut;
    // Ties at the worst distance may still displace a higher index.
    if (far_d2 <= heap.worst()) {
      off[dim] = cut;
      search(far_child, q, exclude, far_d2, off, heap);
      off[dim] = saved;
    }
  }

  PointsX<Scalar> points_;
  Index leaf_size_;
  std::vector<Index> perm_;
  std::vector<Node> nodes_;
};

using NeighborIndex = KdTree<double>;

/// Builds an exact index over the rows of `points`.
NeighborIndex build_index(const Eigen::Ref<const Points>& points);

/// Exactly k self-excluded neighbors of row `row`; requires 1 <= k <= m-1.
std::vector<Neighbor<double>> query_knn(const NeighborIndex& index, Index row,
                                        Index k);

/// Self-excluded kNN of every row, one row per point.
struct KnnTable {
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> indices;
  Points distances;
};

KnnTable all_knn(const NeighborIndex& index, Index k);
KnnTable all_knn(const Eigen::Ref<const Points>& points, Index k);

using RankMatrix =
    Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Entry (i, j), i != j, is the 1-based rank of j among the neighbors of i.
/// The diagonal is 0.
RankMatrix rank_matrix(const Eigen::Ref<const Points>& points);

/// All other rows ordered by (distance to row i, index); writes into `order`.
void neighbor_order(const Eigen::Ref<const Points>& points, Index i,
                    std::vector<Index>& order, std::vector<double>& d2);

}  // namespace hdsdr
