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
#include <string>
#include <vector>

#include "hdsdr/types.hpp"

namespace hdsdr {

struct ClusterSpec {
  Vector center;
  Vector stdev;  // size 1 (isotropic) or n
  Index count = 0;
};

struct MixtureSpec {
  Index dims = 0;
  std::vector<ClusterSpec> clusters;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Gaussian samples per cluster, rows grouped by cluster, labels "0", "1", ...
DataTable gen_mixture(const MixtureSpec& spec);

/// The five-cluster benchmark layouts (N = 5000, n = 20 by default):
///   type1  equal spreads, centers mutually equidistant
///   type2  equidistant centers, unequal spreads
///   type3  skewed center spacing
///   type4  two pairs of nearby clusters plus one isolated cluster
///   type5  type1 with Gaussian noise at 10 dB SNR
enum class Preset { kType1, kType2, kType3, kType4, kType5 };

Preset parse_preset(const std::string& name);
std::string preset_name(Preset preset);

/// Pairwise center distance of the equidistant layouts, in cluster standard
/// deviations.
inline constexpr double kPresetSeparation = 7.0;

MixtureSpec preset_spec(Preset preset, std::uint64_t seed,
                        Index per_cluster = 1000, Index dims = 20,
                        double separation = kPresetSeparation);
DataTable gen_preset(Preset preset, std::uint64_t seed,
                     Index per_cluster = 1000, Index dims = 20,
                     double separation = kPresetSeparation);

/// Adds i.i.d. N(0, sigma^2) noise with sigma^2 = Ps / 10^(snr_db / 10),
/// Ps being the mean squared deviation of all entries from their column
/// means.
DataTable add_noise_snr(const DataTable& table, double snr_db,
                        std::uint64_t seed);

/// Signal power used by add_noise_snr.
double signal_power(const Eigen::Ref<const Points>& points);

enum class SpecialKind { kLognormal2d, kHypersphereOutliers, kUniformCube };

SpecialKind parse_special(const std::string& name);

struct SpecialParams {
  Index rows = 0;          // 0 selects the kind's default
  Index dims = 0;          // 0 selects the kind's default
  double radius = 1.0;     // hypersphere radius
  Index outliers = 10;
  double outlier_radius = 5.0;
};

/// lognormal2d: 10K x 2, mu = 0, sigma = 1.
/// hypersphere_outliers: 5K points uniform in a 20D ball of `radius` plus
///   outliers on the sphere of `outlier_radius` (label "outlier").
/// uniform_cube: 10K x 20 uniform in [0, 1]^n.
DataTable gen_special(SpecialKind kind, const SpecialParams& params,
                      std::uint64_t seed);

}  // namespace hdsdr
