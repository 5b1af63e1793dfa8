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

#include <span>
#include <utility>
#include <vector>

#include "hdsdr/knn.hpp"
#include "hdsdr/types.hpp"

namespace hdsdr {

/// Sharpening hyperparameters. Defaults are the recommended preset; the
/// learning rate is meaningful on min-max normalized data.
struct LgcParams {
  Index ks = 50;           // neighbors defining the local bandwidth
  int iterations = 10;     // T
  double alpha = 0.15;     // per-iteration shift length
  double epsilon = 1e-5;   // gradient norm floor

  void validate() const;
};

/// Per-column affine map used to bring data into [0, 1].
struct ColumnRange {
  double min = 0;
  double max = 0;
};

struct SharpenedResult {
  DataTable sharpened;
  // Empty when normalization was disabled.
  std::vector<ColumnRange> normalization;
  // Mean shift length of the points, one entry per iteration.
  std::vector<double> mean_shift;
};

/// Maps each column affinely onto [0, 1]; constant columns map to 0.
std::pair<DataTable, std::vector<ColumnRange>> normalize_minmax(
    const DataTable& table);

/// Inverse of normalize_minmax for points in normalized space.
Points denormalize(const Eigen::Ref<const Points>& points,
                   const std::vector<ColumnRange>& ranges);

/// Analytic gradient of the Epanechnikov kernel density sum at `point`
/// over `neighbors` (rows), all within bandwidth h:
///   sum_i 3 / (2 h^2) * (x_i - x).
Vector density_gradient(const Eigen::Ref<const Vector>& point,
                        const Eigen::Ref<const Points>& neighbors, double h);

/// Local Gradient Clustering: T synchronous advection steps of every point
/// along its normalized density gradient, neighbors and bandwidths rebuilt
/// from the current positions at each step.
SharpenedResult lgc_sharpen(const DataTable& table, const LgcParams& params,
                            bool normalize = true);

/// One advection step from frozen positions. Returns the new positions and
/// writes each point's shift length to `shift` when non-empty.
Points lgc_step(const Eigen::Ref<const Points>& positions,
                const LgcParams& params, std::span<double> shift = {});

}  // namespace hdsdr
