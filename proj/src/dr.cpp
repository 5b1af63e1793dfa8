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

#include "hdsdr/dr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hdsdr/knn.hpp"

namespace hdsdr {

namespace {

constexpr double kEigenRelTol = 1e-9;
constexpr int kMaxRpRetries = 10;

struct MdsSolution {
  Vector values;   // top s eigenvalues, descending
  Matrix vectors;  // matching unit eigenvectors (m x s)
};

// Spectral factorization of the double-centered squared-distance matrix.
MdsSolution mds_eigen(const Eigen::Ref<const Matrix>& squared, Index s) {
  const Index m = squared.rows();
  const Vector row_mean = squared.rowwise().mean();
  const Eigen::RowVectorXd col_mean = squared.colwise().mean();
  const double grand = squared.mean();
  Matrix b(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      b(i, j) = -0.5 * (squared(i, j) - row_mean(i) - col_mean(j) + grand);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(b);
  if (eig.info() != Eigen::Success) {
    throw Error("eigendecomposition failed in classical MDS");
  }
  const Vector& values = eig.eigenvalues();  // ascending
  const double lambda_max = values(m - 1);
  Index usable = 0;
  if (lambda_max > 0) {
    for (Index r = m - 1; r >= 0 && values(r) > kEigenRelTol * lambda_max;
         --r) {
      ++usable;
    }
  }
  if (usable < s) {
    throw Error("insufficient intrinsic dimension: " + std::to_string(usable) +
                " positive eigenvalues for s=" + std::to_string(s));
  }
  MdsSolution sol;
  sol.values.resize(s);
  sol.vectors.resize(m, s);
  for (Index c = 0; c < s; ++c) {
    sol.values(c) = values(m - 1 - c);
    sol.vectors.col(c) = eig.eigenvectors().col(m - 1 - c);
  }
  fix_signs(sol.vectors);
  return sol;
}

Points mds_coordinates(const MdsSolution& sol) {
  Points y(sol.vectors.rows(), sol.vectors.cols());
  for (Index c = 0; c < sol.values.size(); ++c) {
    y.col(c) = sol.vectors.col(c) * std::sqrt(sol.values(c));
  }
  return y;
}

void check_distance_matrix(const Eigen::Ref<const Matrix>& dist) {
  if (dist.rows() != dist.cols()) throw Error("distance matrix must be square");
  if (dist.rows() < 1) throw Error("distance matrix is empty");
  if (!dist.allFinite()) throw Error("distance matrix has non-finite entries");
  const double scale = std::max(1.0, dist.cwiseAbs().maxCoeff());
  for (Index i = 0; i < dist.rows(); ++i) {
    if (dist(i, i) != 0.0) throw Error("distance matrix diagonal must be zero");
    for (Index j = 0; j < i; ++j) {
      if (dist(i, j) < 0.0 || dist(j, i) < 0.0) {
        throw Error("distance matrix has negative entries");
      }
      if (std::abs(dist(i, j) - dist(j, i)) > 1e-12 * scale) {
        throw Error("distance matrix is not symmetric");
      }
    }
  }
}

std::string seed_string(std::uint64_t seed) { return std::to_string(seed); }

}  // namespace

void fix_signs(Eigen::Ref<Matrix> vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0) vectors.col(c) *= -1.0;
  }
}

RpMatrix rp_matrix(Index n, Index s, std::uint64_t seed) {
  if (s < 1) throw Error("target dimension must be >= 1");
  if (s > n) {
    throw Error("target dimension s=" + std::to_string(s) +
                " exceeds input dimension n=" + std::to_string(n));
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt <= kMaxRpRetries; ++attempt) {
    Matrix a(n, s);
    for (Index c = 0; c < s; ++c) {
      for (Index r = 0; r < n; ++r) a(r, c) = normal(gen);
    }
    bool deficient = false;
    for (Index c = 0; c < s && !deficient; ++c) {
      const double before = a.col(c).norm();
      for (Index p = 0; p < c; ++p) {
        a.col(c) -= a.col(p).dot(a.col(c)) * a.col(p);
      }
      const double after = a.col(c).norm();
      if (!(after > 1e-10 * before) || before == 0.0) {
        deficient = true;
      } else {
        a.col(c) /= after;
      }
    }
    if (!deficient) return {std::move(a), seed};
  }
  throw Error("random projection matrix is rank deficient after " +
              std::to_string(kMaxRpRetries) + " retries");
}

Embedding random_projection(const DataTable& table, Index s,
                            std::uint64_t seed) {
  table.validate();
  const RpMatrix rp = rp_matrix(table.cols(), s, seed);
  Embedding e;
  e.coords = table.points * rp.basis;
  e.method = "rp";
  e.params = {{"s", std::to_string(s)}, {"seed", seed_string(seed)}};
  e.source_checksum = checksum(table);
  return e;
}

Matrix pairwise_distances(const Eigen::Ref<const Points>& points) {
  const Index m = points.rows();
  const Index n = points.cols();
  Matrix d(m, m);
#pragma omp parallel for schedule(dynamic, 16)
  for (Index i = 0; i < m; ++i) {
    d(i, i) = 0.0;
    for (Index j = 0; j < i; ++j) {
      const double v = std::sqrt(
          squared_distance(points.row(i).data(), points.row(j).data(), n));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Points classical_mds(const Eigen::Ref<const Matrix>& dist, Index s) {
  if (s < 1) throw Error("target dimension must be >= 1");
  check_distance_matrix(dist);
  const Matrix squared = dist.cwiseProduct(dist);
  return mds_coordinates(mds_eigen(squared, s));
}

Index landmark_count(Index rows, double ratio, Index s) {
  const auto scaled =
      static_cast<Index>(std::llround(ratio * static_cast<double>(rows)));
  return std::max(s + 1, scaled);
}

std::vector<Index> select_landmarks(const Eigen::Ref<const Points>& points,
                                    const LandmarkOptions& options) {
  const Index rows = points.rows();
  if (!(options.ratio > 0.0 && options.ratio <= 1.0)) {
    throw Error("landmark ratio must be in (0, 1]");
  }
  const Index m = landmark_count(rows, options.ratio, options.s);
  if (m > rows) {
    throw Error("landmark count " + std::to_string(m) + " exceeds N=" +
                std::to_string(rows));
  }
  std::mt19937_64 gen(options.seed);
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(m));
  if (options.selection == LandmarkSelection::kRandom) {
    std::vector<Index> pool(static_cast<std::size_t>(rows));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index k = 0; k < m; ++k) {
      std::uniform_int_distribution<Index> pick(k, rows - 1);
      std::swap(pool[static_cast<std::size_t>(k)],
                pool[static_cast<std::size_t>(pick(gen))]);
    }
    chosen.assign(pool.begin(), pool.begin() + m);
  } else {
    const Index n = points.cols();
    std::uniform_int_distribution<Index> pick(0, rows - 1);
    Index next = pick(gen);
    std::vector<double> nearest(static_cast<std::size_t>(rows),
                                std::numeric_limits<double>::infinity());
    for (Index k = 0; k < m; ++k) {
      chosen.push_back(next);
      Index far = -1;
      double far_d2 = -1.0;
      for (Index i = 0; i < rows; ++i) {
        auto& best = nearest[static_cast<std::size_t>(i)];
        best = std::min(best, squared_distance(points.row(i).data(),
                                               points.row(next).data(), n));
        if (best > far_d2) {
          far_d2 = best;
          far = i;
        }
      }
      next = far;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Embedding landmark_mds(const DataTable& table, const LandmarkOptions& options) {
  table.validate();
  if (options.s < 1) throw Error("target dimension must be >= 1");
  const Points& x = table.points;
  const Index rows = x.rows();
  const Index n = x.cols();
  const std::vector<Index> landmarks = select_landmarks(x, options);
  const Index m = static_cast<Index>(landmarks.size());

  Matrix squared(m, m);
  for (Index a = 0; a < m; ++a) {
    squared(a, a) = 0.0;
    for (Index b = 0; b < a; ++b) {
      const double v = squared_distance(x.row(landmarks[a]).data(),
                                        x.row(landmarks[b]).data(), n);
      squared(a, b) = v;
      squared(b, a) = v;
    }
  }
  const MdsSolution sol = mds_eigen(squared, options.s);
  const Points landmark_coords = mds_coordinates(sol);

  // Pseudo-inverse rows v_j^T / sqrt(lambda_j).
  Matrix pinv(options.s, m);
  for (Index c = 0; c < options.s; ++c) {
    pinv.row(c) = sol.vectors.col(c).transpose() / std::sqrt(sol.values(c));
  }
  const Vector mean_sq = squared.colwise().mean().transpose();

  std::vector<Index> slot(static_cast<std::size_t>(rows), -1);
  for (Index a = 0; a < m; ++a) slot[static_cast<std::size_t>(landmarks[a])] = a;

  Embedding e;
  e.coords.resize(rows, options.s);
#pragma omp parallel
  {
    Vector delta(m);
#pragma omp for schedule(static)
    for (Index i = 0; i < rows; ++i) {
      const Index a = slot[static_cast<std::size_t>(i)];
      if (a >= 0) {
        e.coords.row(i) = landmark_coords.row(a);
        continue;
      }
      for (Index b = 0; b < m; ++b) {
        delta(b) = squared_distance(x.row(i).data(),
                                    x.row(landmarks[b]).data(), n);
      }
      e.coords.row(i) = (-0.5 * pinv * (delta - mean_sq)).transpose();
    }
  }
  e.method = "lmds";
  e.params = {{"s", std::to_string(options.s)},
              {"ratio", std::to_string(options.ratio)},
              {"landmarks", std::to_string(m)},
              {"selection", options.selection == LandmarkSelection::kRandom
                                ? "random"
                                : "maxmin"},
              {"seed", seed_string(options.seed)}};
  e.source_checksum = checksum(table);
  return e;
}

PcaModel pca_fit(const DataTable& table) {
  table.validate();
  if (table.rows() < 2) throw Error("PCA needs N >= 2 rows");
  const Index n = table.cols();
  PcaModel model;
  model.mean = table.points.colwise().mean().transpose();
  const Matrix centered = table.points.rowwise() - model.mean.transpose();
  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const double total = sigma.squaredNorm();
  if (!(total > 0.0)) throw Error("PCA input has zero total variance");
  model.components = svd.matrixV();
  fix_signs(model.components);
  model.explained_variance_ratio = Vector::Zero(n);
  for (Index c = 0; c < sigma.size(); ++c) {
    model.explained_variance_ratio(c) = sigma(c) * sigma(c) / total;
  }
  return model;
}

Embedding pca_transform(const PcaModel& model, const DataTable& table,
                        Index s) {
  table.validate();
  const Index n = model.mean.size();
  if (table.cols() != n) throw Error("PCA model dimension mismatch");
  if (s < 1 || s > n) {
    throw Error("PCA target dimension must be in [1, " + std::to_string(n) +
                "]");
  }
  Embedding e;
  e.coords = (table.points.rowwise() - model.mean.transpose()) *
             model.components.leftCols(s);
  e.method = "pca";
  e.params = {{"s", std::to_string(s)}};
  e.source_checksum = checksum(table);
  return e;
}

Index components_for_variance(const PcaModel& model, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error("variance fraction must be in (0, 1]");
  }
  const Index n = model.explained_variance_ratio.size();
  double cumulative = 0.0;
  for (Index c = 0; c < n; ++c) {
    cumulative += model.explained_variance_ratio(c);
    if (cumulative >= fraction - 1e-12) return c + 1;
  }
  return n;
}

DataTable reduce_variance(const DataTable& table, double fraction) {
  const PcaModel model = pca_fit(table);
  const Index keep = fraction == 1.0 ? table.cols()
                                     : components_for_variance(model, fraction);
  DataTable out;
  out.points = pca_transform(model, table, keep).coords;
  out.labels = table.labels;
  for (Index c = 0; c < keep; ++c) out.names.push_back("pc" + std::to_string(c + 1));
  return out;
}

}  // namespace hdsdr
