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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdsdr/types.hpp"

namespace hdsdr {

// All neighborhoods below exclude the point itself; ties are ordered by row
// index as in the knn module.

/// Penalizes false neighbors: points among the k nearest in `embedding` but
/// not in `data`, weighted by their excess rank in `data`.
/// Requires 1 <= k and 2k < m.
double trustworthiness(const Eigen::Ref<const Points>& data,
                       const Eigen::Ref<const Points>& embedding, Index k);

/// Penalizes missing neighbors; equals trustworthiness(embedding, data, k).
double continuity(const Eigen::Ref<const Points>& data,
                  const Eigen::Ref<const Points>& embedding, Index k);

/// Mean Jaccard similarity of the kNN sets in both spaces; 1 <= k <= m-1.
double jaccard_nn(const Eigen::Ref<const Points>& data,
                  const Eigen::Ref<const Points>& embedding, Index k);

/// Mean fraction of each point's k nearest neighbors sharing its label.
double neighborhood_hit(const Eigen::Ref<const Points>& points,
                        const Labels& labels, Index k);

/// Neighborhood hit for several k from a single kNN pass.
std::vector<double> neighborhood_hit_curve(const Eigen::Ref<const Points>& points,
                                           const Labels& labels,
                                           const std::vector<Index>& ks);

struct ProjectionCurves {
  std::vector<Index> ks;
  // std::nullopt where k is outside the metric's valid range.
  std::vector<std::optional<double>> trustworthiness;
  std::vector<std::optional<double>> continuity;
  std::vector<std::optional<double>> jaccard;
};

/// Qt, Qc and Qj over a k grid from one full neighbor ordering per point.
ProjectionCurves projection_curves(const Eigen::Ref<const Points>& data,
                                   const Eigen::Ref<const Points>& embedding,
                                   const std::vector<Index>& ks);

inline const std::vector<Index> kDefaultKGrid = {10,  25,  50,  100,
                                                 200, 400, 700, 1000};

struct MetricReport {
  std::vector<Index> ks;
  std::vector<std::optional<double>> qt, qc, qj, qh;
  Index rows = 0;
  std::map<std::string, std::string> metadata;

  std::string to_csv() const;
  std::string to_json() const;
};

struct TraitReport {
  Index rows = 0;
  Index dims = 0;
  std::string size_class;
  std::string dim_class;
  Index idr_components = 0;
  double idr = 0.0;
  std::string idr_class;
  std::optional<Index> classes;
  std::optional<std::string> class_class;
  std::optional<Index> subclasses;

  std::string to_json() const;
  std::string to_text() const;
};

std::string size_class(Index rows);
std::string dimensionality_class(Index dims);
std::string idr_class(double idr);
std::string class_count_class(Index classes);

/// Size, dimensionality, intrinsic dimensionality ratio (95% PCA variance)
/// and, when labels exist, class-count traits.
TraitReport data_traits(const DataTable& table,
                        const std::optional<Labels>& sublabels = std::nullopt);

}  // namespace hdsdr
