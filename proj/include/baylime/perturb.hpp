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

#ifndef BAYLIME_PERTURB_HPP_
#define BAYLIME_PERTURB_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "baylime/blackbox.hpp"
#include "baylime/types.hpp"

namespace baylime {

struct NumericScale {
  double mean = 0.0;
  double std = 1.0;
};

// How to sample around an instance. Maps are keyed by feature index; a
// numerical feature without an entry uses {mean 0, std 1}, a binary-mask
// feature without an off value uses 0.
struct PerturbConfig {
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::map<std::size_t, std::vector<double>> categorical_frequencies;
  std::map<std::size_t, NumericScale> numeric_scale;
  std::map<std::size_t, double> off_values;
  // Numerical draws are centred on the instance's own value. When false they
  // are centred on the dataset mean (the classic tabular LIME sampler) and the
  // instance sits at (x - mean) / std in the interpretable space.
  bool sample_around_instance = true;

  NumericScale scale_of(std::size_t feature) const;
  // Throws ConfigError on any violated invariant.
  void validate(const Instance& instance) const;
};

struct FeatureColumn {
  Eigen::VectorXd interpretable;
  Eigen::VectorXd original;
};

struct Perturbation {
  Eigen::MatrixXd interpretable;  // n x m, the regression design
  Eigen::MatrixXd original;       // n x m, what the black box sees
};

// Standard-normal draws z; original value = centre + z * std.
FeatureColumn perturb_numerical(const PerturbConfig& config,
                                const Instance& instance, std::size_t feature);
// Fair coin; 1 keeps the instance value, 0 switches to the off value.
FeatureColumn perturb_binary(const PerturbConfig& config, const Instance& instance,
                             std::size_t feature);
// Category drawn from the frequency table; interpretable value is 1 when it
// matches the instance's category.
FeatureColumn perturb_categorical(const PerturbConfig& config,
                                  const Instance& instance, std::size_t feature);

// The instance itself in the interpretable space.
Eigen::VectorXd interpretable_instance(const PerturbConfig& config,
                                       const Instance& instance);

// All columns, one RNG stream per feature, generated in parallel.
Perturbation sample_perturbations(const PerturbConfig& config,
                                  const Instance& instance);

// Samples, probes the black box with the original-space rows and returns the
// interpretable design with labels and unit weights.
PerturbationSet build_perturbation_set(const PerturbConfig& config,
                                       const Instance& instance,
                                       PredictorHandle& predictor,
                                       std::optional<int> target_class = std::nullopt);

}  // namespace baylime

#endif  // BAYLIME_PERTURB_HPP_
