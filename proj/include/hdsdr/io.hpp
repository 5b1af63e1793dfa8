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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hdsdr/types.hpp"

namespace hdsdr {

struct CsvOptions {
  char delimiter = ',';
  // Column extracted into DataTable::labels when present in the header.
  std::string label_column = "label";
};

/// Reads a headed CSV into a DataTable. Every non-label column must be
/// numeric and finite.
DataTable read_table(const std::filesystem::path& path,
                     const CsvOptions& options = {});
DataTable parse_table(const std::string& text, const CsvOptions& options = {});

/// Writes a headed CSV. Values use the shortest round-trip representation.
void write_table(const DataTable& table, const std::filesystem::path& path,
                 const CsvOptions& options = {});
std::string format_table(const DataTable& table,
                         const CsvOptions& options = {});

/// Projection bundle: the JSON interchange with the labeling UI and external
/// DR tools.
struct Bundle {
  static constexpr int kFormatVersion = 1;

  Points attributes;
  std::vector<std::string> attribute_names;
  Embedding embedding;
  // Absent when the bundle carries no labels; individual entries may be null.
  std::optional<std::vector<std::optional<std::string>>> labels;

  Index rows() const { return embedding.rows(); }

  /// Attributes as a table; labels are attached only when every row has one.
  DataTable attribute_table() const;
};

Bundle make_bundle(const DataTable& table, const Embedding& embedding);

void write_bundle(const DataTable& table, const Embedding& embedding,
                  const std::filesystem::path& path);
void write_bundle(const Bundle& bundle, const std::filesystem::path& path);
std::string format_bundle(const Bundle& bundle);

Bundle read_bundle(const std::filesystem::path& path);
Bundle parse_bundle(const std::string& text);

/// Label CSV with header "row_index,label". Empty labels mean unassigned.
LabelAssignment read_labels(const std::filesystem::path& path);
LabelAssignment parse_labels(const std::string& text);
void write_labels(const LabelAssignment& labels, Index rows,
                  const std::filesystem::path& path);

/// Reads an external embedding (headed CSV, numeric columns only; a label
/// column is ignored) and checks its row count against the source table.
Embedding import_embedding(const std::filesystem::path& path,
                           const DataTable& source,
                           const std::string& method = "external");

std::string format_double(double value);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hdsdr
