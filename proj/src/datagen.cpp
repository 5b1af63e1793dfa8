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

#include "hdsdr/datagen.hpp"

#include <cmath>
#include <random>

namespace hdsdr {

namespace {

Vector axis_point(Index dims, Index axis, double length) {
  Vector c = Vector::Zero(dims);
  c(axis) = length;
  return c;
}

Vector scalar_stdev(double s) { return Vector::Constant(1, s); }

}  // namespace

void MixtureSpec::validate() const {
  if (dims < 1) throw Error("mixture needs dims >= 1");
  if (clusters.empty()) throw Error("mixture needs at least one cluster");
  for (const auto& c : clusters) {
    if (c.count < 1) throw Error("cluster count must be >= 1");
    if (c.center.size() != dims) throw Error("cluster center dimension mismatch");
    if (c.stdev.size() != 1 && c.stdev.size() != dims) {
      throw Error("cluster stdev must be scalar or per-dimension");
    }
    if (!(c.stdev.array() > 0.0).all() || !c.stdev.allFinite()) {
      throw Error("cluster stdev must be > 0");
    }
  }
}

DataTable gen_mixture(const MixtureSpec& spec) {
  spec.validate();
  Index total = 0;
  for (const auto& c : spec.clusters) total += c.count;
  DataTable t;
  t.points.resize(total, spec.dims);
  t.labels.emplace();
  t.labels->reserve(static_cast<std::size_t>(total));
  t.names = default_names(spec.dims);
  std::mt19937_64 gen(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Index row = 0;
  for (std::size_t id = 0; id < spec.clusters.size(); ++id) {
    const auto& c = spec.clusters[id];
    for (Index r = 0; r < c.count; ++r, ++row) {
      for (Index j = 0; j < spec.dims; ++j) {
        const double s = c.stdev.size() == 1 ? c.stdev(0) : c.stdev(j);
        t.points(row, j) = c.center(j) + s * normal(gen);
      }
      t.labels->push_back(std::to_string(id));
    }
  }
  return t;
}

Preset parse_preset(const std::string& name) {
  if (name == "type1") return Preset::kType1;
  if (name == "type2") return Preset::kType2;
  if (name == "type3") return Preset::kType3;
  if (name == "type4") return Preset::kType4;
  if (name == "type5") return Preset::kType5;
  throw Error("unknown preset '" + name + "' (expected type1..type5)");
}

std::string preset_name(Preset preset) {
  switch (preset) {
    case Preset::kType1: return "type1";
    case Preset::kType2: return "type2";
    case Preset::kType3: return "type3";
    case Preset::kType4: return "type4";
    case Preset::kType5: return "type5";
  }
  return "unknown";
}

MixtureSpec preset_spec(Preset preset, std::uint64_t seed, Index per_cluster,
                        Index dims, double separation) {
  if (dims < 7) throw Error("presets need at least 7 dimensions");
  if (!(separation > 0.0)) throw Error("preset separation must be > 0");
  MixtureSpec spec;
  spec.dims = dims;
  spec.seed = seed;
  // Centers on coordinate axes: |c_a - c_b| = sqrt(l_a^2 + l_b^2).
  const double unit = separation / std::sqrt(2.0);
  switch (preset) {
    case Preset::kType1:
    case Preset::kType5:
      for (Index c = 0; c < 5; ++c) {
        spec.clusters.push_back(
            {axis_point(dims, c, unit), scalar_stdev(1.0), per_cluster});
      }
      break;
    case Preset::kType2: {
      const double stdev[5] = {0.6, 0.8, 1.0, 1.2, 1.4};
      for (Index c = 0; c < 5; ++c) {
        spec.clusters.push_back(
            {axis_point(dims, c, unit), scalar_stdev(stdev[c]), per_cluster});
      }
      break;
    }
    case Preset::kType3: {
      const double scale[5] = {0.7, 0.85, 1.0, 1.5, 2.5};
      for (Index c = 0; c < 5; ++c) {
        spec.clusters.push_back({axis_point(dims, c, unit * scale[c]),
                                 scalar_stdev(1.0), per_cluster});
      }
      break;
    }
    case Preset::kType4: {
      // Pair members sit half a separation apart along a private axis.
      const double offset = 0.5 * separation;
      const Vector a = axis_point(dims, 0, 1.5 * unit);
      const Vector b = axis_point(dims, 1, 1.5 * unit);
      spec.clusters.push_back({a, scalar_stdev(1.0), per_cluster});
      spec.clusters.push_back(
          {a + axis_point(dims, 5, offset), scalar_stdev(1.0), per_cluster});
      spec.clusters.push_back({b, scalar_stdev(1.0), per_cluster});
      spec.clusters.push_back(
          {b + axis_point(dims, 6, offset), scalar_stdev(1.0), per_cluster});
      spec.clusters.push_back(
          {axis_point(dims, 2, 1.5 * unit), scalar_stdev(1.0), per_cluster});
      break;
    }
  }
  return spec;
}

DataTable gen_preset(Preset preset, std::uint64_t seed, Index per_cluster,
                     Index dims, double separation) {
  DataTable t =
      gen_mixture(preset_spec(preset, seed, per_cluster, dims, separation));
  if (preset == Preset::kType5) {
    // Independent stream for the noise.
    t = add_noise_snr(t, 10.0, seed ^ 0x9e3779b97f4a7c15ULL);
  }
  return t;
}

double signal_power(const Eigen::Ref<const Points>& points) {
  const Eigen::RowVectorXd mean = points.colwise().mean();
  return (points.rowwise() - mean).squaredNorm() /
         static_cast<double>(points.size());
}

DataTable add_noise_snr(const DataTable& table, double snr_db,
                        std::uint64_t seed) {
  table.validate();
  if (!std::isfinite(snr_db)) throw Error("SNR must be finite");
  const double sigma =
      std::sqrt(signal_power(table.points) / std::pow(10.0, snr_db / 10.0));
  DataTable out = table;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index i = 0; i < out.rows(); ++i) {
    for (Index j = 0; j < out.cols(); ++j) {
      out.points(i, j) += sigma * normal(gen);
    }
  }
  return out;
}

SpecialKind parse_special(const std::string& name) {
  if (name == "lognormal2d") return SpecialKind::kLognormal2d;
  if (name == "hypersphere_outliers") return SpecialKind::kHypersphereOutliers;
  if (name == "uniform_cube") return SpecialKind::kUniformCube;
  throw Error("unknown kind '" + name +
              "' (expected lognormal2d, hypersphere_outliers, uniform_cube)");
}

DataTable gen_special(SpecialKind kind, const SpecialParams& params,
                      std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  DataTable t;
  switch (kind) {
    case SpecialKind::kLognormal2d: {
      const Index rows = params.rows > 0 ? params.rows : 10000;
      const Index dims = params.dims > 0 ? params.dims : 2;
      t.points.resize(rows, dims);
      for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < dims; ++j) t.points(i, j) = std::exp(normal(gen));
      }
      t.labels = Labels(static_cast<std::size_t>(rows), "0");
      break;
    }
    case SpecialKind::kHypersphereOutliers: {
      const Index inliers = params.rows > 0 ? params.rows : 5000;
      const Index dims = params.dims > 0 ? params.dims : 20;
      if (!(params.radius > 0.0) || !(params.outlier_radius > 0.0)) {
        throw Error("hypersphere radii must be > 0");
      }
      if (params.outliers < 0) throw Error("outlier count must be >= 0");
      const Index rows = inliers + params.outliers;
      t.points.resize(rows, dims);
      t.labels.emplace();
      Vector dir(dims);
      for (Index i = 0; i < rows; ++i) {
        double norm = 0.0;
        do {
          for (Index j = 0; j < dims; ++j) dir(j) = normal(gen);
          norm = dir.norm();
        } while (norm == 0.0);
        dir /= norm;
        double r;
        if (i < inliers) {
          r = params.radius *
              std::pow(uniform(gen), 1.0 / static_cast<double>(dims));
          t.labels->push_back("inlier");
        } else {
          r = params.outlier_radius;
          t.labels->push_back("outlier");
        }
        t.points.row(i) = r * dir.transpose();
      }
      break;
    }
    case SpecialKind::kUniformCube: {
      const Index rows = params.rows > 0 ? params.rows : 10000;
      const Index dims = params.dims > 0 ? params.dims : 20;
      t.points.resize(rows, dims);
      for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < dims; ++j) t.points(i, j) = uniform(gen);
      }
      t.labels = Labels(static_cast<std::size_t>(rows), "0");
      break;
    }
  }
  t.names = default_names(t.cols());
  return t;
}

}  // namespace hdsdr
