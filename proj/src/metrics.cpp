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

#include "hdsdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hdsdr/dr.hpp"
#include "hdsdr/io.hpp"
#include "hdsdr/knn.hpp"

namespace hdsdr {

namespace {

void check_pair(const Eigen::Ref<const Points>& data,
                const Eigen::Ref<const Points>& embedding) {
  if (data.rows() != embedding.rows()) {
    throw Error("data and embedding row counts differ: " +
                std::to_string(data.rows()) + " vs " +
                std::to_string(embedding.rows()));
  }
  if (data.rows() < 2) throw Error("metrics need at least two points");
}

bool trust_k_valid(Index k, Index m) { return k >= 1 && 2 * k < m; }
bool set_k_valid(Index k, Index m) { return k >= 1 && k <= m - 1; }

double trust_from_sum(std::int64_t penalty, Index k, Index m) {
  const double mm = static_cast<double>(m);
  const double kk = static_cast<double>(k);
  return 1.0 - 2.0 / (mm * kk * (2.0 * mm - 3.0 * kk - 1.0)) *
                   static_cast<double>(penalty);
}

void check_labels(const Labels& labels, Index m) {
  if (static_cast<Index>(labels.size()) != m) {
    throw Error("missing labels: " + std::to_string(labels.size()) +
                " labels for " + std::to_string(m) + " points");
  }
}

}  // namespace

ProjectionCurves projection_curves(const Eigen::Ref<const Points>& data,
                                   const Eigen::Ref<const Points>& embedding,
                                   const std::vector<Index>& ks) {
  check_pair(data, embedding);
  const Index m = data.rows();
  const auto nk = ks.size();
  // Per point, per k: [trust penalty, continuity penalty, jaccard overlap].
  std::vector<std::int64_t> trust_pen(static_cast<std::size_t>(m) * nk, 0);
  std::vector<std::int64_t> cont_pen(static_cast<std::size_t>(m) * nk, 0);
  std::vector<Index> overlap(static_cast<std::size_t>(m) * nk, 0);

#pragma omp parallel
  {
    std::vector<Index> order_d, order_e;
    std::vector<double> d2;
    std::vector<Index> rank_d(static_cast<std::size_t>(m));
    std::vector<Index> rank_e(static_cast<std::size_t>(m));
#pragma omp for schedule(dynamic, 16)
    for (Index i = 0; i < m; ++i) {
      neighbor_order(data, i, order_d, d2);
      neighbor_order(embedding, i, order_e, d2);
      for (std::size_t r = 0; r < order_d.size(); ++r) {
        rank_d[static_cast<std::size_t>(order_d[r])] = static_cast<Index>(r) + 1;
        rank_e[static_cast<std::size_t>(order_e[r])] = static_cast<Index>(r) + 1;
      }
      for (std::size_t c = 0; c < nk; ++c) {
        const Index k = ks[c];
        if (!set_k_valid(k, m)) continue;
        std::int64_t tp = 0, cp = 0;
        Index common = 0;
        for (Index r = 0; r < k; ++r) {
          const auto je = static_cast<std::size_t>(order_e[static_cast<std::size_t>(r)]);
          const auto jd = static_cast<std::size_t>(order_d[static_cast<std::size_t>(r)]);
          if (rank_d[je] > k) {
            tp += rank_d[je] - k;
          } else {
            ++common;
          }
          if (rank_e[jd] > k) cp += rank_e[jd] - k;
        }
        const std::size_t at = static_cast<std::size_t>(i) * nk + c;
        trust_pen[at] = tp;
        cont_pen[at] = cp;
        overlap[at] = common;
      }
    }
  }

  ProjectionCurves out;
  out.ks = ks;
  for (std::size_t c = 0; c < nk; ++c) {
    const Index k = ks[c];
    if (trust_k_valid(k, m)) {
      std::int64_t tp = 0, cp = 0;
      for (Index i = 0; i < m; ++i) {
        tp += trust_pen[static_cast<std::size_t>(i) * nk + c];
        cp += cont_pen[static_cast<std::size_t>(i) * nk + c];
      }
      out.trustworthiness.push_back(trust_from_sum(tp, k, m));
      out.continuity.push_back(trust_from_sum(cp, k, m));
    } else {
      out.trustworthiness.push_back(std::nullopt);
      out.continuity.push_back(std::nullopt);
    }
    if (set_k_valid(k, m)) {
      double sum = 0.0;
      for (Index i = 0; i < m; ++i) {
        const Index common = overlap[static_cast<std::size_t>(i) * nk + c];
        sum += static_cast<double>(common) / static_cast<double>(2 * k - common);
      }
      out.jaccard.push_back(sum / static_cast<double>(m));
    } else {
      out.jaccard.push_back(std::nullopt);
    }
  }
  return out;
}

double trustworthiness(const Eigen::Ref<const Points>& data,
                       const Eigen::Ref<const Points>& embedding, Index k) {
  check_pair(data, embedding);
  if (!trust_k_valid(k, data.rows())) {
    throw Error("k out of range for trustworthiness: need 1 <= k < m/2, got k=" +
                std::to_string(k) + ", m=" + std::to_string(data.rows()));
  }
  return *projection_curves(data, embedding, {k}).trustworthiness.front();
}

double continuity(const Eigen::Ref<const Points>& data,
                  const Eigen::Ref<const Points>& embedding, Index k) {
  return trustworthiness(embedding, data, k);
}

double jaccard_nn(const Eigen::Ref<const Points>& data,
                  const Eigen::Ref<const Points>& embedding, Index k) {
  check_pair(data, embedding);
  if (!set_k_valid(k, data.rows())) {
    throw Error("k out of range for jaccard: need 1 <= k <= m-1, got k=" +
                std::to_string(k));
  }
  return *projection_curves(data, embedding, {k}).jaccard.front();
}

std::vector<double> neighborhood_hit_curve(const Eigen::Ref<const Points>& points,
                                           const Labels& labels,
                                           const std::vector<Index>& ks) {
  const Index m = points.rows();
  check_labels(labels, m);
  if (ks.empty()) return {};
  Index kmax = 0;
  for (Index k : ks) {
    if (!set_k_valid(k, m)) {
      throw Error("k out of range for neighborhood hit: need 1 <= k <= m-1, "
                  "got k=" + std::to_string(k));
    }
    kmax = std::max(kmax, k);
  }
  // Intern labels so comparisons are integer.
  std::map<std::string, int> ids;
  std::vector<int> g(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    auto [it, _] = ids.emplace(labels[static_cast<std::size_t>(i)],
                               static_cast<int>(ids.size()));
    g[static_cast<std::size_t>(i)] = it->second;
  }
  const KnnTable knn = all_knn(points, kmax);
  std::vector<std::int64_t> hits(ks.size(), 0);
  for (Index i = 0; i < m; ++i) {
    // prefix[r] = same-label count among the first r neighbors
    Index running = 0;
    std::vector<Index> prefix(static_cast<std::size_t>(kmax) + 1, 0);
    for (Index r = 0; r < kmax; ++r) {
      if (g[static_cast<std::size_t>(knn.indices(i, r))] ==
          g[static_cast<std::size_t>(i)]) {
        ++running;
      }
      prefix[static_cast<std::size_t>(r) + 1] = running;
    }
    for (std::size_t c = 0; c < ks.size(); ++c) {
      hits[c] += prefix[static_cast<std::size_t>(ks[c])];
    }
  }
  std::vector<double> out;
  for (std::size_t c = 0; c < ks.size(); ++c) {
    out.push_back(static_cast<double>(hits[c]) /
                  (static_cast<double>(ks[c]) * static_cast<double>(m)));
  }
  return out;
}

double neighborhood_hit(const Eigen::Ref<const Points>& points,
                        const Labels& labels, Index k) {
  return neighborhood_hit_curve(points, labels, {k}).front();
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

nlohmann::json jcell(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string MetricReport::to_csv() const {
  std::string out = "k,Qt,Qc,Qj,Qh\n";
  for (std::size_t c = 0; c < ks.size(); ++c) {
    out += std::to_string(ks[c]) + "," + cell(qt[c]) + "," + cell(qc[c]) +
           "," + cell(qj[c]) + "," + cell(qh[c]) + "\n";
  }
  return out;
}

std::string MetricReport::to_json() const {
  nlohmann::json doc;
  doc["N"] = rows;
  doc["k"] = ks;
  auto column = [](const std::vector<std::optional<double>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(jcell(x));
    return a;
  };
  doc["Qt"] = column(qt);
  doc["Qc"] = column(qc);
  doc["Qj"] = column(qj);
  doc["Qh"] = column(qh);
  doc["metadata"] = metadata;
  return doc.dump(2) + "\n";
}

std::string size_class(Index rows) {
  if (rows <= 1000) return "small";
  if (rows <= 3000) return "medium";
  return "large";
}

std::string dimensionality_class(Index dims) {
  if (dims < 10) return "low";
  if (dims < 100) return "medium";
  return "high";
}

std::string idr_class(double idr) {
  if (idr < 0.1) return "low";
  if (idr < 0.5) return "medium";
  return "high";
}

std::string class_count_class(Index classes) {
  if (classes <= 2) return "small";
  if (classes <= 5) return "medium";
  return "large";
}

TraitReport data_traits(const DataTable& table,
                        const std::optional<Labels>& sublabels) {
  table.validate();
  TraitReport t;
  t.rows = table.rows();
  t.dims = table.cols();
  t.size_class = size_class(t.rows);
  t.dim_class = dimensionality_class(t.dims);
  if (t.rows >= 2 && (table.points.rowwise() - table.points.row(0))
                             .cwiseAbs()
                             .maxCoeff() > 0.0) {
    t.idr_components = components_for_variance(pca_fit(table), 0.95);
  }
  t.idr = static_cast<double>(t.idr_components) / static_cast<double>(t.dims);
  t.idr_class = idr_class(t.idr);
  if (table.labels) {
    const std::set<std::string> distinct(table.labels->begin(),
                                         table.labels->end());
    t.classes = static_cast<Index>(distinct.size());
    t.class_class = class_count_class(*t.classes);
  }
  if (sublabels) {
    const std::set<std::string> distinct(sublabels->begin(), sublabels->end());
    t.subclasses = static_cast<Index>(distinct.size());
  }
  return t;
}

std::string TraitReport::to_json() const {
  nlohmann::json doc;
  doc["N"] = rows;
  doc["n"] = dims;
  doc["size"] = size_class;
  doc["dimensionality"] = dim_class;
  doc["idr_components"] = idr_components;
  doc["idr"] = idr;
  doc["idr_class"] = idr_class;
  if (classes) {
    doc["classes"] = *classes;
    doc["classes_class"] = *class_class;
  }
  if (subclasses) doc["subclasses"] = *subclasses;
  return doc.dump(2) + "\n";
}

std::string TraitReport::to_text() const {
  std::ostringstream out;
  out << "size: " << size_class << " (N=" << rows << ")\n"
      << "dimensionality: " << dim_class << " (n=" << dims << ")\n"
      << "idr: " << idr_class << " (" << idr << ", " << idr_components
      << " components for 95% variance)\n";
  if (classes) out << "classes: " << *class_class << " (g=" << *classes << ")\n";
  if (subclasses) out << "subclasses: " << *subclasses << "\n";
  return out.str();
}

}  // namespace hdsdr
