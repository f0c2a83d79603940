/*
 * Copyright 2026 The BayLIME Toolkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "baylime/compute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace baylime::compute {
namespace {

Eigen::Index block_count(Eigen::Index n) { return (n + kRowBlock - 1) / kRowBlock; }

double row_distance(const Eigen::MatrixXd& x, Eigen::Index i,
                    const Eigen::VectorXd& ref, DistanceKind kind) {
  const Eigen::Index m = x.cols();
  if (kind == DistanceKind::kEuclidean) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = x(i, j) - ref[j];
      s += d * d;
    }
    return std::sqrt(s);
  }
  Eigen::Index mismatches = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (x(i, j) != ref[j]) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(m);
}

}  // namespace

double point_distance(const Eigen::VectorXd& row, const Eigen::VectorXd& ref,
                      DistanceKind kind) {
  return row_distance(row.transpose(), 0, ref, kind);
}

double exponential_weight(double distance, double width) {
  const double r = distance / width;
  return std::max(std::exp(-r * r), std::numeric_limits<double>::min());
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  const Eigen::Index blocks = block_count(n);
  std::vector<Eigen::MatrixXd> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index begin = b * kRowBlock;
    const Eigen::Index len = std::min(kRowBlock, n - begin);
    const auto xb = x.middleRows(begin, len);
    const auto wb = w.segment(begin, len);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < len; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const double wx = wb[i] * xb(i, j);
        for (Eigen::Index l = 0; l <= j; ++l) g(j, l) += wx * xb(i, l);
      }
    }
    partial[static_cast<std::size_t>(b)] = std::move(g);
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (const auto& p : partial) g += p;
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

Eigen::VectorXd weighted_cross(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  const Eigen::Index blocks = block_count(n);
  std::vector<Eigen::VectorXd> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index begin = b * kRowBlock;
    const Eigen::Index len = std::min(kRowBlock, n - begin);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = begin; i < begin + len; ++i) {
      const double wy = w[i] * y[i];
      for (Eigen::Index j = 0; j < m; ++j) c[j] += wy * x(i, j);
    }
    partial[static_cast<std::size_t>(b)] = std::move(c);
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
  for (const auto& p : partial) c += p;
  return c;
}

Eigen::VectorXd row_distances(const Eigen::MatrixXd& x, const Eigen::VectorXd& ref,
                              DistanceKind kind) {
  const Eigen::Index n = x.rows();
  Eigen::VectorXd d(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    d[i] = row_distance(x, i, ref, kind);
  }
  return d;
}

Eigen::VectorXd exponential_weights(const Eigen::VectorXd& distances, double width) {
  const Eigen::Index n = distances.size();
  Eigen::VectorXd w(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) w[i] = exponential_weight(distances[i], width);
  return w;
}

namespace reference {

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w) {
  const Eigen::Index m = x.cols();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index l = 0; l < m; ++l) g(j, l) += w[i] * x(i, j) * x(i, l);
    }
  }
  return g;
}

Eigen::VectorXd weighted_cross(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& y) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) c[j] += w[i] * x(i, j) * y[i];
  }
  return c;
}

Eigen::VectorXd row_distances(const Eigen::MatrixXd& x, const Eigen::VectorXd& ref,
                              DistanceKind kind) {
  Eigen::VectorXd d(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    d[i] = point_distance(x.row(i).transpose(), ref, kind);
  }
  return d;
}

Eigen::VectorXd exponential_weights(const Eigen::VectorXd& distances, double width) {
  Eigen::VectorXd w(distances.size());
  for (Eigen::Index i = 0; i < distances.size(); ++i) {
    w[i] = exponential_weight(distances[i], width);
  }
  return w;
}

}  // namespace reference
}  // namespace baylime::compute
