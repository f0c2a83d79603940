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

#include "baylime/kernel.hpp"

#include <cmath>

#include "baylime/errors.hpp"

namespace baylime {

double default_kernel_width(std::size_t m) {
  return 0.75 * std::sqrt(static_cast<double>(m));
}

double KernelConfig::resolved_width(std::size_t m) const {
  return width ? *width : default_kernel_width(m);
}

void KernelConfig::validate() const {
  if (width && !(*width > 0.0 && std::isfinite(*width))) {
    throw ConfigError("kernel width must be a positive finite number");
  }
  if (width_bounds) {
    const auto [lo, up] = *width_bounds;
    if (!(lo > 0.0) || !(lo <= up) || !std::isfinite(up)) {
      throw ConfigError("kernel width bounds must satisfy 0 < lo <= up");
    }
  }
}

double distance(const Eigen::VectorXd& row, const Eigen::VectorXd& instance_repr,
                DistanceKind kind) {
  if (row.size() != instance_repr.size() || row.size() == 0) {
    throw ShapeError("distance needs two vectors of the same nonzero length");
  }
  return compute::point_distance(row, instance_repr, kind);
}

double kernel_weight(double d, double width) {
  if (!(d >= 0.0) || !(width > 0.0)) {
    throw InvalidInputError("kernel_weight needs d >= 0 and width > 0");
  }
  return compute::exponential_weight(d, width);
}

PerturbationSet apply_weights(const PerturbationSet& set, const KernelConfig& config,
                              const Eigen::VectorXd& instance_repr) {
  config.validate();
  if (instance_repr.size() != set.m()) {
    throw ShapeError("instance representation does not match the design width");
  }
  const double width = config.resolved_width(static_cast<std::size_t>(set.m()));
  const Eigen::VectorXd d =
      compute::row_distances(set.rows(), instance_repr, config.distance);
  return set.with_weights(compute::exponential_weights(d, width));
}

}  // namespace baylime
