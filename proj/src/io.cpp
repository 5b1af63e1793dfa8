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

#include "hdsdr/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hdsdr {

namespace {

using json = nlohmann::json;

std::vector<std::string> split_record(const std::string& line, char delim,
                                      std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) {
    throw Error("line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t')) --last;
  if (first < last && *first == '+') ++first;
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string quote_field(const std::string& s, char delim) {
  if (s.find_first_of(std::string{delim, '"', '\n', '\r'}) ==
      std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

json rows_to_json(const Eigen::Ref<const Points>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Points json_to_rows(const json& rows, const char* what) {
  if (!rows.is_array()) throw Error(std::string(what) + " must be an array");
  const Index n = static_cast<Index>(rows.size());
  Index d = -1;
  Points m;
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) {
      throw Error(std::string(what) + " row " + std::to_string(i) +
                  " is not an array");
    }
    if (d < 0) {
      d = static_cast<Index>(row.size());
      m.resize(n, d);
    } else if (static_cast<Index>(row.size()) != d) {
      throw Error(std::string(what) + " is ragged at row " +
                  std::to_string(i));
    }
    for (Index j = 0; j < d; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) {
        throw Error(std::string(what) + " row " + std::to_string(i) +
                    " has a non-numeric entry");
      }
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

DataTable parse_table(const std::string& text, const CsvOptions& options) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error("empty file");
  const auto header = split_record(lines[0], options.delimiter, 1);

  Index label_col = -1;
  std::vector<std::size_t> feature_cols;
  DataTable table;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!options.label_column.empty() && header[c] == options.label_column &&
        label_col < 0) {
      label_col = static_cast<Index>(c);
    } else {
      feature_cols.push_back(c);
      table.names.push_back(header[c]);
    }
  }
  if (feature_cols.empty()) throw Error("no feature columns");

  std::vector<std::vector<std::string>> records;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    auto rec = split_record(lines[l], options.delimiter, l + 1);
    if (rec.size() != header.size()) {
      throw Error("ragged rows: line " + std::to_string(l + 1) + " has " +
                  std::to_string(rec.size()) + " fields, header has " +
                  std::to_string(header.size()));
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw Error("empty file: no data rows");

  const Index n = static_cast<Index>(records.size());
  table.points.resize(n, static_cast<Index>(feature_cols.size()));
  if (label_col >= 0) table.labels.emplace();
  for (Index i = 0; i < n; ++i) {
    const auto& rec = records[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
      const std::string& cell = rec[feature_cols[j]];
      double v = 0.0;
      if (!parse_double(cell, v)) {
        throw Error("non-numeric cell '" + cell + "' in column '" +
                    header[feature_cols[j]] + "' at data row " +
                    std::to_string(i));
      }
      if (!std::isfinite(v)) {
        throw Error("non-finite cell '" + cell + "' at data row " +
                    std::to_string(i));
      }
      table.points(i, static_cast<Index>(j)) = v;
    }
    if (label_col >= 0) {
      table.labels->push_back(rec[static_cast<std::size_t>(label_col)]);
    }
  }
  return table;
}

DataTable read_table(const std::filesystem::path& path,
                     const CsvOptions& options) {
  return parse_table(read_text(path), options);
}

std::string format_table(const DataTable& table, const CsvOptions& options) {
  table.validate();
  const auto names =
      table.names.empty() ? default_names(table.cols()) : table.names;
  const char d = options.delimiter;
  std::string out;
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out.push_back(d);
    out += quote_field(names[j], d);
  }
  if (table.labels) {
    out.push_back(d);
    out += quote_field(options.label_column, d);
  }
  out.push_back('\n');
  for (Index i = 0; i < table.rows(); ++i) {
    for (Index j = 0; j < table.cols(); ++j) {
      if (j) out.push_back(d);
      out += format_double(table.points(i, j));
    }
    if (table.labels) {
      out.push_back(d);
      out += quote_field((*table.labels)[static_cast<std::size_t>(i)], d);
    }
    out.push_back('\n');
  }
  return out;
}

void write_table(const DataTable& table, const std::filesystem::path& path,
                 const CsvOptions& options) {
  write_text(path, format_table(table, options));
}

DataTable Bundle::attribute_table() const {
  DataTable t;
  t.points = attributes;
  t.names = attribute_names;
  if (labels) {
    Labels full;
    for (const auto& l : *labels) {
      if (!l) return t;
      full.push_back(*l);
    }
    t.labels = std::move(full);
  }
  return t;
}

Bundle make_bundle(const DataTable& table, const Embedding& embedding) {
  if (embedding.rows() != table.rows()) {
    throw Error("row-count mismatch: embedding has " +
                std::to_string(embedding.rows()) + " rows, table has " +
                std::to_string(table.rows()));
  }
  require_finite(embedding.coords, "embedding");
  Bundle b;
  b.attributes = table.points;
  b.attribute_names =
      table.names.empty() ? default_names(table.cols()) : table.names;
  b.embedding = embedding;
  if (table.labels) {
    b.labels.emplace(table.labels->begin(), table.labels->end());
  }
  return b;
}

std::string format_bundle(const Bundle& b) {
  if (b.attributes.rows() != b.embedding.rows()) {
    throw Error("row-count mismatch between attributes and coords");
  }
  if (b.labels && static_cast<Index>(b.labels->size()) != b.rows()) {
    throw Error("row-count mismatch between labels and coords");
  }
  json doc;
  doc["format_version"] = Bundle::kFormatVersion;
  doc["method"] = b.embedding.method;
  doc["params"] = json::object();
  for (const auto& [k, v] : b.embedding.params) doc["params"][k] = v;
  doc["source_checksum"] = b.embedding.source_checksum;
  doc["attribute_names"] = b.attribute_names;
  doc["attributes"] = rows_to_json(b.attributes);
  doc["coords"] = rows_to_json(b.embedding.coords);
  if (b.labels) {
    json labels = json::array();
    for (const auto& l : *b.labels) {
      if (l) {
        labels.push_back(*l);
      } else {
        labels.push_back(nullptr);
      }
    }
    doc["labels"] = std::move(labels);
  }
  return doc.dump() + "\n";
}

void write_bundle(const Bundle& bundle, const std::filesystem::path& path) {
  write_text(path, format_bundle(bundle));
}

void write_bundle(const DataTable& table, const Embedding& embedding,
                  const std::filesystem::path& path) {
  write_bundle(make_bundle(table, embedding), path);
}

Bundle parse_bundle(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed bundle JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("malformed bundle: not an object");
  if (!doc.contains("format_version") ||
      !doc["format_version"].is_number_integer()) {
    throw Error("malformed bundle: missing format_version");
  }
  const int version = doc["format_version"].get<int>();
  if (version < 1 || version > Bundle::kFormatVersion) {
    throw Error("unsupported bundle format_version " +
                std::to_string(version));
  }
  if (!doc.contains("coords")) throw Error("malformed bundle: missing coords");

  Bundle b;
  b.embedding.coords = json_to_rows(doc["coords"], "coords");
  b.embedding.method = doc.value("method", std::string("unknown"));
  b.embedding.source_checksum = doc.value("source_checksum", std::string());
  if (doc.contains("params") && doc["params"].is_object()) {
    for (const auto& [k, v] : doc["params"].items()) {
      b.embedding.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  const Index n = b.embedding.rows();
  if (doc.contains("attributes")) {
    b.attributes = json_to_rows(doc["attributes"], "attributes");
    if (b.attributes.rows() != n) {
      throw Error("row-count mismatch: " + std::to_string(b.attributes.rows()) +
                  " attribute rows vs " + std::to_string(n) + " coords");
    }
  } else {
    b.attributes.resize(n, 0);
  }
  if (doc.contains("attribute_names")) {
    b.attribute_names =
        doc["attribute_names"].get<std::vector<std::string>>();
  }
  if (static_cast<Index>(b.attribute_names.size()) != b.attributes.cols()) {
    b.attribute_names = default_names(b.attributes.cols());
  }
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    const json& labels = doc["labels"];
    if (!labels.is_array() || static_cast<Index>(labels.size()) != n) {
      throw Error("row-count mismatch: labels vs coords");
    }
    b.labels.emplace();
    for (const auto& l : labels) {
      if (l.is_null()) {
        b.labels->push_back(std::nullopt);
      } else if (l.is_string()) {
        b.labels->push_back(l.get<std::string>());
      } else {
        throw Error("malformed bundle: label must be string or null");
      }
    }
  }
  require_finite(b.embedding.coords, "bundle coords");
  return b;
}

Bundle read_bundle(const std::filesystem::path& path) {
  return parse_bundle(read_text(path));
}

LabelAssignment parse_labels(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error("empty file");
  const auto header = split_record(lines[0], ',', 1);
  if (header.size() != 2 || header[0] != "row_index" || header[1] != "label") {
    throw Error("label file header must be 'row_index,label'");
  }
  LabelAssignment out;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    const auto rec = split_record(lines[l], ',', l + 1);
    if (rec.size() != 2) {
      throw Error("ragged rows: line " + std::to_string(l + 1));
    }
    std::size_t row = 0;
    auto [ptr, ec] =
        std::from_chars(rec[0].data(), rec[0].data() + rec[0].size(), row);
    if (ec != std::errc() || ptr != rec[0].data() + rec[0].size()) {
      throw Error("non-numeric row_index '" + rec[0] + "' at line " +
                  std::to_string(l + 1));
    }
    if (rec[1].empty()) continue;
    if (!out.emplace(row, rec[1]).second) {
      throw Error("duplicate row_index " + rec[0]);
    }
  }
  return out;
}

LabelAssignment read_labels(const std::filesystem::path& path) {
  return parse_labels(read_text(path));
}

void write_labels(const LabelAssignment& labels, Index rows,
                  const std::filesystem::path& path) {
  for (const auto& [row, _] : labels) {
    if (static_cast<Index>(row) >= rows) {
      throw Error("label row index " + std::to_string(row) + " out of range");
    }
  }
  std::string out = "row_index,label\n";
  for (Index i = 0; i < rows; ++i) {
    out += std::to_string(i);
    out.push_back(',');
    auto it = labels.find(static_cast<std::size_t>(i));
    if (it != labels.end()) out += quote_field(it->second, ',');
    out.push_back('\n');
  }
  write_text(path, out);
}

Embedding import_embedding(const std::filesystem::path& path,
                           const DataTable& source,
                           const std::string& method) {
  DataTable t = read_table(path);
  if (t.rows() != source.rows()) {
    throw Error("row-count mismatch: external embedding has " +
                std::to_string(t.rows()) + " rows, table has " +
                std::to_string(source.rows()));
  }
  Embedding e;
  e.coords = std::move(t.points);
  e.method = method;
  e.params["source_file"] = path.filename().string();
  e.source_checksum = checksum(source);
  return e;
}

}  // namespace hdsdr
