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

#include "baylime/experiments.hpp"

#include "baylime/errors.hpp"

namespace baylime {

std::vector<ConsistencyRow> consistency_sweep(const Instance& instance,
                                              const PredictorFactory& factory,
                                              const ExplainConfig& base,
                                              std::span<const ExplainerSpec> explainers,
                                              std::span<const std::size_t> n_grid,
                                              std::size_t k, std::uint64_t seed_base) {
  if (explainers.empty()) throw ConfigError("sweep needs at least one explainer");
  if (n_grid.empty()) throw ConfigError("sweep needs a non-empty n grid");
  std::vector<ConsistencyRow> rows;
  for (std::size_t n : n_grid) {
    for (const auto& spec : explainers) {
      ExplainConfig config = base;
      config.perturb.n = n;
      config.surrogate = spec.surrogate;
      const ExplanationEnsemble ensemble =
          explain_repeated(instance, factory, config, k, seed_base);
      ConsistencyRow row;
      row.n = n;
      row.explainer = spec.label;
      try {
        row.inconsistency = inconsistency(ensemble);
      } catch (const UndefinedMeasureError&) {
        row.inconsistency.reset();
      }
      if (instance.size() >= 2) row.kendalls_w = kendalls_w(ensemble);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<RobustnessRow> robustness_sweep(const Instance& instance,
                                            const PredictorFactory& factory,
                                            const ExplainConfig& base,
                                            std::span<const ExplainerSpec> explainers,
                                            const RobustnessOptions& options) {
  if (explainers.empty()) throw ConfigError("sweep needs at least one explainer");
  std::vector<RobustnessRow> rows;
  for (const auto& spec : explainers) {
    ExplainConfig config = base;
    config.surrogate = spec.surrogate;
    rows.push_back({spec.label, robustness(instance, factory, config, options)});
  }
  return rows;
}

}  // namespace baylime
