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

#include "hdsdr/lgc.hpp"

#include <cmath>
#include <string>

namespace hdsdr {

namespace {
// Bandwidths below this are treated as a stack of duplicates.
constexpr double kMinBandwidth = 1e-12;
}  // namespace

void LgcParams::validate() const {
  if (ks < 1) throw Error("ks must be >= 1");
  if (iterations < 0) throw Error("T must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must be in [0, 1]");
  if (!(epsilon > 0.0)) throw Error("epsilon must be > 0");
}

std::pair<DataTable, std::vector<ColumnRange>> normalize_minmax(
    const DataTable& table) {
  table.validate();
  DataTable out = table;
  std::vector<ColumnRange> ranges(static_cast<std::size_t>(table.cols()));
  for (Index j = 0; j < table.cols(); ++j) {
    const double lo = table.points.col(j).minCoeff();
    const double hi = table.points.col(j).maxCoeff();
    ranges[static_cast<std::size_t>(j)] = {lo, hi};
    if (hi > lo) {
      out.points.col(j) = (table.points.col(j).array() - lo) / (hi - lo);
    } else {
      out.points.col(j).setZero();
    }
  }
  return {std::move(out), std::move(ranges)};
}

Points denormalize(const Eigen::Ref<const Points>& points,
                   const std::vector<ColumnRange>& ranges) {
  if (static_cast<Index>(ranges.size()) != points.cols()) {
    throw Error("normalization record does not match column count");
  }
  Points out(points.rows(), points.cols());
  for (Index j = 0; j < points.cols(); ++j) {
    const auto& r = ranges[static_cast<std::size_t>(j)];
    out.col(j) = points.col(j).array() * (r.max - r.min) + r.min;
  }
  return out;
}

Vector density_gradient(const Eigen::Ref<const Vector>& point,
                        const Eigen::Ref<const Points>& neighbors, double h) {
  if (!(h > 0.0)) throw Error("bandwidth h must be > 0");
  if (neighbors.rows() > 0 && neighbors.cols() != point.size()) {
    throw Error("neighbor dimension mismatch");
  }
  Vector grad = Vector::Zero(point.size());
  for (Index r = 0; r < neighbors.rows(); ++r) {
    grad += neighbors.row(r).transpose() - point;
  }
  return grad * (1.5 / (h * h));
}

Points lgc_step(const Eigen::Ref<const Points>& positions,
                const LgcParams& params, std::span<double> shift) {
  const Index m = positions.rows();
  const Index n = positions.cols();
  const KdTree<double> index{Points(positions)};
  Points next(m, n);
  const bool record = !shift.empty();
  if (record && static_cast<Index>(shift.size()) != m) {
    throw Error("shift buffer size mismatch");
  }
  const double coeff_base = 1.5;
#pragma omp parallel
  {
    std::vector<Index> idx;
    std::vector<double> d2;
    Vector grad(n);
#pragma omp for schedule(dynamic, 64)
    for (Index i = 0; i < m; ++i) {
      const double* x = positions.row(i).data();
      index.query_squared(x, params.ks, i, idx, d2);
      const double h = std::sqrt(d2.back());
      if (h < kMinBandwidth) {
        next.row(i) = positions.row(i);
        if (record) shift[static_cast<std::size_t>(i)] = 0.0;
        continue;
      }
      grad.setZero();
      for (const Index j : idx) {
        grad += positions.row(j).transpose() - positions.row(i).transpose();
      }
      grad *= coeff_base / (h * h);
      const double norm = grad.norm();
      const double step = params.alpha / std::max(norm, params.epsilon);
      next.row(i) = positions.row(i) + step * grad.transpose();
      if (record) shift[static_cast<std::size_t>(i)] = step * norm;
    }
  }
  return next;
}

SharpenedResult lgc_sharpen(const DataTable& table, const LgcParams& params,
                            bool normalize) {
  params.validate();
  table.validate();
  if (table.rows() <= params.ks) {
    throw Error("N <= ks: " + std::to_string(table.rows()) +
                " rows cannot supply " + std::to_string(params.ks) +
                " distinct neighbors per point");
  }
  SharpenedResult result;
  if (normalize) {
    auto [normalized, ranges] = normalize_minmax(table);
    result.sharpened = std::move(normalized);
    result.normalization = std::move(ranges);
  } else {
    result.sharpened = table;
  }
  Points& x = result.sharpened.points;
  std::vector<double> shift(static_cast<std::size_t>(x.rows()));
  for (int t = 0; t < params.iterations; ++t) {
    x = lgc_step(x, params, shift);
    if (!x.allFinite()) {
      throw Error("non-finite positions after LGC iteration " +
                  std::to_string(t + 1));
    }
    double total = 0.0;
    for (double s : shift) total += s;
    result.mean_shift.push_back(total / static_cast<double>(shift.size()));
  }
  return result;
}

}  // namespace hdsdr
