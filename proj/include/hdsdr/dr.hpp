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

#include <cstdint>

#include "hdsdr/types.hpp"

namespace hdsdr {

/// n x s matrix with orthonormal columns drawn from a seeded Gaussian.
struct RpMatrix {
  Matrix basis;
  std::uint64_t seed = 0;
};

/// Draws i.i.d. standard normals and orthonormalizes them with modified
/// Gram-Schmidt, redrawing (up to 10 times) on rank deficiency.
RpMatrix rp_matrix(Index n, Index s, std::uint64_t seed);

Embedding random_projection(const DataTable& table, Index s = 2,
                            std::uint64_t seed = 0);

/// Classical (Torgerson) MDS of a symmetric distance matrix.
Points classical_mds(const Eigen::Ref<const Matrix>& dist, Index s = 2);

/// Pairwise Euclidean distances between the rows of `points`.
Matrix pairwise_distances(const Eigen::Ref<const Points>& points);

enum class LandmarkSelection { kRandom, kMaxMin };

struct LandmarkOptions {
  Index s = 2;
  double ratio = 0.05;
  std::uint64_t seed = 0;
  LandmarkSelection selection = LandmarkSelection::kRandom;
};

/// Landmark count used for N rows: max(s + 1, round(ratio * N)).
Index landmark_count(Index rows, double ratio, Index s);

/// Sorted landmark rows for the given options.
std::vector<Index> select_landmarks(const Eigen::Ref<const Points>& points,
                                    const LandmarkOptions& options);

/// Classical MDS on landmarks, distance-based triangulation for the rest.
Embedding landmark_mds(const DataTable& table, const LandmarkOptions& options);

struct PcaModel {
  Vector mean;
  Matrix components;  // n x n, columns ordered by explained variance
  Vector explained_variance_ratio;
};

PcaModel pca_fit(const DataTable& table);
Embedding pca_transform(const PcaModel& model, const DataTable& table,
                        Index s = 2);

/// Smallest leading component count whose cumulative ratio reaches
/// `fraction`.
Index components_for_variance(const PcaModel& model, double fraction);

/// Projects onto the leading components that keep `fraction` of the total
/// variance. Labels pass through.
DataTable reduce_variance(const DataTable& table, double fraction);

/// Makes each column's entry of largest magnitude positive.
void fix_signs(Eigen::Ref<Matrix> vectors);

}  // namespace hdsdr
