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

#ifndef BAYLIME_KERNEL_HPP_
#define BAYLIME_KERNEL_HPP_

#include <optional>

#include <Eigen/Dense>

#include "baylime/compute.hpp"
#include "baylime/types.hpp"

namespace baylime {

using compute::DistanceKind;

struct WidthBounds {
  double lo = 0.0;
  double up = 0.0;
};

struct KernelConfig {
  // Unset means default_kernel_width(m).
  std::optional<double> width;
  DistanceKind distance = DistanceKind::kEuclidean;
  std::optional<WidthBounds> width_bounds;

  double resolved_width(std::size_t m) const;
  void validate() const;
};

// 0.75 * sqrt(m), the customary tabular default.
double default_kernel_width(std::size_t m);

// Euclidean distance, or the fraction of mismatching coordinates.
double distance(const Eigen::VectorXd& row, const Eigen::VectorXd& instance_repr,
                DistanceKind kind);

// exp(-d^2 / l^2). Results that would underflow to zero are floored at the
// smallest positive normal double so every weight stays strictly positive.
double kernel_weight(double d, double width);

// Copy of set with weights set from each row's distance to instance_repr.
PerturbationSet apply_weights(const PerturbationSet& set, const KernelConfig& config,
                              const Eigen::VectorXd& instance_repr);

}  // namespace baylime

#endif  // BAYLIME_KERNEL_HPP_
