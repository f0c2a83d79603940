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

#include "baylime/explainer.hpp"

#include <cmath>
#include <string>

#include "baylime/compute.hpp"
#include "baylime/errors.hpp"

namespace baylime {
namespace {

struct Centred {
  PerturbationSet set;
  Eigen::RowVectorXd x_mean;
  double y_mean;
};

Centred centre(const PerturbationSet& set) {
  const Eigen::VectorXd& w = set.weights();
  const double total = w.sum();
  Eigen::RowVectorXd x_mean = (w.transpose() * set.rows()) / total;
  // Shifting by the first label keeps a constant Y exactly zero after centring.
  const double shift = set.labels()[0];
  const double y_mean =
      shift + w.dot((set.labels().array() - shift).matrix()) / total;
  Eigen::MatrixXd rows = set.rows().rowwise() - x_mean;
  Eigen::VectorXd labels = set.labels().array() - y_mean;
  return {PerturbationSet(std::move(rows), std::move(labels), w, set.seed()),
          std::move(x_mean), y_mean};
}

}  // namespace

void ExplainConfig::validate(const Instance& instance) const {
  perturb.validate(instance);
  kernel.validate();
  if (const auto* ridge = std::get_if<LimeRidge>(&surrogate)) {
    if (!(ridge->r >= 0.0) || !std::isfinite(ridge->r)) {
      throw ConfigError("ridge regularization r must be >= 0");
    }
  } else {
    std::get<BayLime>(surrogate).prior.validate(instance.size());
  }
}

Explanation explain_samples(const Instance& instance, const PerturbationSet& samples,
                            const ExplainConfig& config) {
  if (static_cast<std::size_t>(samples.m()) != instance.size()) {
    throw ShapeError("samples have " + std::to_string(samples.m()) +
                     " columns for an instance with " +
                     std::to_string(instance.size()) + " features");
  }
  const std::size_t m = instance.size();
  const PerturbationSet weighted = apply_weights(
      samples, config.kernel, interpretable_instance(config.perturb, instance));

  std::optional<Centred> centred;
  if (config.fit_intercept) centred = centre(weighted);
  const PerturbationSet& design = centred ? centred->set : weighted;

  Eigen::VectorXd beta;
  std::optional<SurrogateFit> posterior;
  if (const auto* ridge = std::get_if<LimeRidge>(&config.surrogate)) {
    beta = ridge_fit(design, ridge->r);
  } else {
    const auto& bay = std::get<BayLime>(config.surrogate);
    posterior = bayes_fit(design, bay.prior, bay.evidence);
    beta = posterior->mu_n;
  }

  Explanation e = make_explanation(beta);
  e.posterior = std::move(posterior);
  e.intercept = centred ? centred->y_mean - centred->x_mean.dot(beta) : 0.0;
  e.kernel_width = config.kernel.resolved_width(m);
  e.n_samples = static_cast<std::size_t>(samples.n());
  e.seed = samples.seed();
  if (static_cast<std::size_t>(samples.n()) < m) {
    e.warnings.push_back("n < m: the design is under-determined");
  }
  return e;
}

Explanation explain(const Instance& instance, PredictorHandle& predictor,
                    const ExplainConfig& config) {
  config.validate(instance);
  const PerturbationSet samples = build_perturbation_set(
      config.perturb, instance, predictor, config.target_class);
  return explain_samples(instance, samples, config);
}

ExplanationEnsemble explain_repeated(const Instance& instance,
                                     const PredictorFactory& factory,
                                     const ExplainConfig& config, std::size_t k,
                                     std::uint64_t seed_base) {
  if (k < 2) throw InvalidInputError("repeated explanation needs k >= 2");
  config.validate(instance);
  std::vector<Explanation> runs(k);
  compute::parallel_for(k, [&](std::size_t i) {
    ExplainConfig run_config = config;
    run_config.perturb.seed = seed_base + i;
    PredictorHandle handle = factory();
    runs[i] = explain(instance, handle, run_config);
  });
  return ExplanationEnsemble(std::move(runs));
}

PriorSpec elicit_prior(std::span<const Explanation> previous,
                       std::optional<double> alpha,
                       std::optional<double> lambda_override) {
  if (previous.empty()) {
    throw InvalidInputError("prior elicitation needs at least one explanation");
  }
  const Eigen::Index m = previous.front().coefficients.size();
  Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(m);
  for (const auto& e : previous) {
    if (e.coefficients.size() != m) {
      throw ShapeError("previous explanations disagree on feature count");
    }
    mu0 += e.coefficients;
  }
  mu0 /= static_cast<double>(previous.size());
  const double lambda =
      lambda_override ? *lambda_override : static_cast<double>(previous.size());
  PriorSpec prior = alpha ? PriorSpec::full(std::move(mu0), lambda, *alpha)
                          : PriorSpec::partial(std::move(mu0), lambda);
  prior.validate(static_cast<std::size_t>(m));
  return prior;
}

}  // namespace baylime
