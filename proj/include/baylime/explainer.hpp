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

#ifndef BAYLIME_EXPLAINER_HPP_
#define BAYLIME_EXPLAINER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "baylime/blackbox.hpp"
#include "baylime/kernel.hpp"
#include "baylime/perturb.hpp"
#include "baylime/regression.hpp"
#include "baylime/types.hpp"

namespace baylime {

// Weighted ridge regression, the classic LIME surrogate.
struct LimeRidge {
  double r = 1.0;
};

// Weighted Bayesian linear regression.
struct BayLime {
  PriorSpec prior;
  EvidenceOptions evidence;
};

using SurrogateSpec = std::variant<LimeRidge, BayLime>;

struct ExplainConfig {
  PerturbConfig perturb;
  KernelConfig kernel;
  SurrogateSpec surrogate = LimeRidge{};
  std::optional<int> target_class;
  // Fit an unpenalized intercept by centring X and Y on their weighted means
  // before the surrogate sees them.
  bool fit_intercept = true;

  void validate(const Instance& instance) const;
};

// Perturb, probe, weight, fit and rank.
Explanation explain(const Instance& instance, PredictorHandle& predictor,
                    const ExplainConfig& config);

// The weight/fit/rank half of explain() on an already probed set. Its weights
// are replaced by the kernel's; the seed and n are taken from the set.
Explanation explain_samples(const Instance& instance, const PerturbationSet& samples,
                            const ExplainConfig& config);

// k explanations with perturbation seeds seed_base .. seed_base + k - 1. Runs
// are spread over OpenMP threads; each run gets its own handle from the
// factory, which therefore has to be callable concurrently.
ExplanationEnsemble explain_repeated(const Instance& instance,
                                     const PredictorFactory& factory,
                                     const ExplainConfig& config, std::size_t k,
                                     std::uint64_t seed_base);

// Prior from explanations of similar instances: mu0 is the mean of their raw
// coefficient vectors and lambda their count. Gives a partial prior, or a
// full one when alpha is supplied. lambda_override replaces the count (for
// example with the perturbation count behind a single previous explanation).
PriorSpec elicit_prior(std::span<const Explanation> previous,
                       std::optional<double> alpha = std::nullopt,
                       std::optional<double> lambda_override = std::nullopt);

}  // namespace baylime

#endif  // BAYLIME_EXPLAINER_HPP_
