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

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdsdr {

// Point sets are stored one observation per row.
template <typename Scalar>
using PointsX =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Points = PointsX<double>;
using Vector = VectorX<double>;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

using Labels = std::vector<std::string>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// N x n feature matrix with optional per-row class labels and column names.
struct DataTable {
  Points points;
  std::optional<Labels> labels;
  std::vector<std::string> names;

  Index rows() const { return points.rows(); }
  Index cols() const { return points.cols(); }
  bool has_labels() const { return labels.has_value(); }

  /// Throws hdsdr::Error when a table invariant is broken.
  void validate() const;
};

/// Projected coordinates of a DataTable. Row i is the image of source row i.
struct Embedding {
  Points coords;
  std::string method;
  std::map<std::string, std::string> params;
  std::string source_checksum;

  Index rows() const { return coords.rows(); }
  Index dims() const { return coords.cols(); }
};

/// Sparse row -> label map produced by interactive labeling.
using LabelAssignment = std::map<std::size_t, std::string>;

/// FNV-1a 64-bit digest over values, labels and shape, as 16 hex digits.
std::string checksum(const DataTable& table);

/// Default column names f0..f{n-1}.
std::vector<std::string> default_names(Index n);

/// Throws unless every coefficient is finite.
void require_finite(const Eigen::Ref<const Points>& points,
                    const std::string& what);

/// Builds full labels of a table from a sparse assignment; missing rows are
/// reported as an error naming the first unassigned index.
Labels labels_from_assignment(const LabelAssignment& assignment, Index rows);

}  // namespace hdsdr
