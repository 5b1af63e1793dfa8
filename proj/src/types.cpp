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

#include "hdsdr/types.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>

namespace hdsdr {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
}

}  // namespace

void DataTable::validate() const {
  if (points.rows() < 1 || points.cols() < 1) {
    throw Error("data table must have at least one row and one column");
  }
  require_finite(points, "data table");
  if (labels && static_cast<Index>(labels->size()) != points.rows()) {
    throw Error("label count " + std::to_string(labels->size()) +
                " does not match row count " + std::to_string(points.rows()));
  }
  if (!names.empty() && static_cast<Index>(names.size()) != points.cols()) {
    throw Error("column name count does not match column count");
  }
}

std::string checksum(const DataTable& table) {
  std::uint64_t h = kFnvOffset;
  const std::int64_t shape[2] = {table.rows(), table.cols()};
  fnv_mix(h, shape, sizeof(shape));
  for (Index i = 0; i < table.rows(); ++i) {
    for (Index j = 0; j < table.cols(); ++j) {
      double v = table.points(i, j);
      if (v == 0.0) v = 0.0;  // fold -0.0
      fnv_mix(h, &v, sizeof(v));
    }
  }
  if (table.labels) {
    for (const auto& l : *table.labels) {
      fnv_mix(h, l.data(), l.size());
      const char sep = '\0';
      fnv_mix(h, &sep, 1);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> default_names(Index n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) names.push_back("f" + std::to_string(j));
  return names;
}

void require_finite(const Eigen::Ref<const Points>& points,
                    const std::string& what) {
  if (!points.allFinite()) {
    throw Error(what + " contains non-finite values");
  }
}

Labels labels_from_assignment(const LabelAssignment& assignment, Index rows) {
  Labels out(static_cast<std::size_t>(rows));
  std::vector<bool> seen(static_cast<std::size_t>(rows), false);
  for (const auto& [row, label] : assignment) {
    if (static_cast<Index>(row) >= rows) {
      throw Error("label row index " + std::to_string(row) +
                  " out of range for " + std::to_string(rows) + " rows");
    }
    out[row] = label;
    seen[row] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error("missing labels: row " + std::to_string(i) +
                  " is unassigned");
    }
  }
  return out;
}

}  // namespace hdsdr
