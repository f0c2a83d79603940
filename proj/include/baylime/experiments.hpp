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

#ifndef BAYLIME_EXPERIMENTS_HPP_
#define BAYLIME_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baylime/explainer.hpp"
#include "baylime/metrics.hpp"

namespace baylime {

// A named surrogate configuration taking part in a sweep.
struct ExplainerSpec {
  std::string label;
  SurrogateSpec surrogate;
};

struct ConsistencyRow {
  std::size_t n = 0;
  std::string explainer;
  // Empty when the measure is undefined (all-zero importances, or m < 2 for W).
  std::optional<double> inconsistency;
  std::optional<double> kendalls_w;
};

// For every n in n_grid and every explainer, k repeated explanations with
// seeds seed_base .. seed_base + k - 1. All cells share those seeds. Rows
// come back in grid order, explainers varying fastest.
std::vector<ConsistencyRow> consistency_sweep(const Instance& instance,
                                              const PredictorFactory& factory,
                                              const ExplainConfig& base,
                                              std::span<const ExplainerSpec> explainers,
                                              std::span<const std::size_t> n_grid,
                                              std::size_t k, std::uint64_t seed_base);

struct RobustnessRow {
  std::string explainer;
  RobustnessResult result;
};

// robustness() per explainer with identical width pairs and seeds.
std::vector<RobustnessRow> robustness_sweep(const Instance& instance,
                                            const PredictorFactory& factory,
                                            const ExplainConfig& base,
                                            std::span<const ExplainerSpec> explainers,
                                            const RobustnessOptions& options);

}  // namespace baylime

#endif  // BAYLIME_EXPERIMENTS_HPP_
