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
#include <string>

#include "hdsdr/types.hpp"

namespace hdsdr {

enum class DatasetId { kWifi, kBanknote };

struct DatasetDescriptor {
  DatasetId id;
  std::string name;
  Index rows;
  Index dims;
  Index classes;
  std::string source_url;
  // FNV digest of the parsed table (see checksum()); empty when unpinned.
  std::string checksum;
  // Conventional file name of the native download.
  std::string file_name;
};

DatasetId parse_dataset_id(const std::string& name);
const DatasetDescriptor& descriptor(DatasetId id);

/// Parses the dataset's native text format:
///   wifi      whitespace-separated, 7 signal strengths then room 1..4
///   banknote  comma-separated, 4 wavelet features then class 0/1
/// and validates shape and class count against the descriptor.
DataTable load_dataset(DatasetId id, const std::filesystem::path& path);
DataTable parse_dataset(DatasetId id, const std::string& text);

/// Looks for the native file under $HDSDR_DATA_DIR, then `fallback_dir`.
/// Returns an empty path when it is not present.
std::filesystem::path locate_dataset(DatasetId id,
                                     const std::filesystem::path& fallback_dir);

}  // namespace hdsdr
