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

#include "hdsdr/ingest.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "hdsdr/io.hpp"

namespace hdsdr {

namespace {

const DatasetDescriptor kWifi{
    DatasetId::kWifi,
    "wifi",
    2000,
    7,
    4,
    "https://archive.ics.uci.edu/ml/machine-learning-databases/00422/"
    "wifi_localization.txt",
    "",
    "wifi_localization.txt"};

// 1327 rows: the filtered variant, not the 1372-row UCI distribution.
const DatasetDescriptor kBanknote{
    DatasetId::kBanknote,
    "banknote",
    1327,
    4,
    2,
    "https://archive.ics.uci.edu/ml/machine-learning-databases/00267/"
    "data_banknote_authentication.txt",
    "",
    "data_banknote_authentication.txt"};

std::vector<std::string> tokens(const std::string& line, bool commas) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    const bool sep = c == ' ' || c == '\t' || c == '\r' || (commas && c == ',');
    if (sep) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

DatasetId parse_dataset_id(const std::string& name) {
  if (name == "wifi") return DatasetId::kWifi;
  if (name == "banknote") return DatasetId::kBanknote;
  throw Error("unknown dataset '" + name + "' (expected wifi or banknote)");
}

const DatasetDescriptor& descriptor(DatasetId id) {
  return id == DatasetId::kWifi ? kWifi : kBanknote;
}

DataTable parse_dataset(DatasetId id, const std::string& text) {
  const DatasetDescriptor& d = descriptor(id);
  const bool commas = id == DatasetId::kBanknote;
  std::vector<std::vector<double>> rows;
  Labels labels;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = tokens(line, commas);
    if (fields.empty()) continue;
    if (static_cast<Index>(fields.size()) != d.dims + 1) {
      throw Error(d.name + ": line " + std::to_string(line_no) + " has " +
                  std::to_string(fields.size()) + " fields, expected " +
                  std::to_string(d.dims + 1));
    }
    std::vector<double> row;
    for (Index j = 0; j < d.dims; ++j) {
      const std::string& f = fields[static_cast<std::size_t>(j)];
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end != f.c_str() + f.size() || !std::isfinite(v)) {
        throw Error(d.name + ": non-numeric value '" + f + "' on line " +
                    std::to_string(line_no));
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
    labels.push_back(fields.back());
  }
  const Index n = static_cast<Index>(rows.size());
  if (n != d.rows) {
    throw Error(d.name + ": shape mismatch, expected N=" +
                std::to_string(d.rows) + ", found N=" + std::to_string(n));
  }
  const std::set<std::string> distinct(labels.begin(), labels.end());
  if (static_cast<Index>(distinct.size()) != d.classes) {
    throw Error(d.name + ": expected " + std::to_string(d.classes) +
                " classes, found " + std::to_string(distinct.size()));
  }
  DataTable t;
  t.points.resize(n, d.dims);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d.dims; ++j) {
      t.points(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  t.labels = std::move(labels);
  t.names = default_names(d.dims);
  if (!d.checksum.empty() && checksum(t) != d.checksum) {
    throw Error(d.name + ": checksum mismatch, expected " + d.checksum +
                ", found " + checksum(t));
  }
  return t;
}

DataTable load_dataset(DatasetId id, const std::filesystem::path& path) {
  return parse_dataset(id, read_text(path));
}

std::filesystem::path locate_dataset(DatasetId id,
                                     const std::filesystem::path& fallback_dir) {
  const std::string& file = descriptor(id).file_name;
  if (const char* env = std::getenv("HDSDR_DATA_DIR")) {
    const std::filesystem::path p = std::filesystem::path(env) / file;
    if (std::filesystem::exists(p)) return p;
  }
  const std::filesystem::path p = fallback_dir / file;
  if (std::filesystem::exists(p)) return p;
  return {};
}

}  // namespace hdsdr
