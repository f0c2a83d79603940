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

#ifndef BAYLIME_REGRESSION_HPP_
#define BAYLIME_REGRESSION_HPP_

#include <optional>

#include <Eigen/Dense>

#include "baylime/types.hpp"

namespace baylime {

enum class PriorMode { kNonInformative, kPartial, kFull };

const char* to_string(PriorMode mode);

// Isotropic Gaussian prior N(mu0, lambda^-1 I) on the coefficients and noise
// precision alpha. Which fields are present depends on the mode:
//   non_informative: none (mu0 = 0, lambda and alpha fitted)
//   partial:         mu0 and lambda (alpha fitted)
//   full:            mu0, lambda and alpha
struct PriorSpec {
  PriorMode mode = PriorMode::kNonInformative;
  std::optional<Eigen::VectorXd> mu0;
  std::optional<double> lambda;
  std::optional<double> alpha;

  static PriorSpec non_informative();
  static PriorSpec partial(Eigen::VectorXd mu0, double lambda);
  static PriorSpec full(Eigen::VectorXd mu0, double lambda, double alpha);

  // Throws ConfigError when the fields do not match the mode or m.
  void validate(std::size_t m) const;
};

// Fixed-point evidence maximization settings. Fitted alpha and lambda are
// clamped to [floor, ceiling].
struct EvidenceOptions {
  double tolerance = 1e-6;
  int max_iterations = 300;
  double floor = 1e-10;
  double ceiling = 1e10;
};

// (X'WX + rI)^-1 X'WY through a Cholesky factorization. r = 0 needs X'WX to
// be nonsingular, otherwise SingularityError.
Eigen::VectorXd ridge_fit(const PerturbationSet& set, double r);

// Posterior with every hyperparameter given:
//   S_n^-1 = lambda I + alpha X'WX
//   mu_n   = S_n (lambda mu0 + alpha X'WY)
SurrogateFit bayes_fit_full(const PerturbationSet& set, const Eigen::VectorXd& mu0,
                            double lambda, double alpha);

// alpha fitted by evidence maximization with lambda held fixed.
SurrogateFit bayes_fit_partial(const PerturbationSet& set, const Eigen::VectorXd& mu0,
                               double lambda, const EvidenceOptions& options = {});

// mu0 = 0, alpha and lambda fitted by alternating evidence updates.
SurrogateFit bayes_fit_noninformative(const PerturbationSet& set,
                                      const EvidenceOptions& options = {});

// Dispatches on prior.mode.
SurrogateFit bayes_fit(const PerturbationSet& set, const PriorSpec& prior,
                       const EvidenceOptions& options = {});

// mu_n written as prior_weight * mu0 + data_weight * beta_MLE, with
//   prior_weight = (lambda I + alpha X'WX)^-1 lambda
//   data_weight  = (lambda I + alpha X'WX)^-1 alpha X'WX
// The two matrices sum to the identity.
struct PosteriorSplit {
  Eigen::MatrixXd prior_weight;
  Eigen::MatrixXd data_weight;
};

// Throws DecompositionUnavailableError if fit.beta_mle is absent.
PosteriorSplit decompose(const SurrogateFit& fit, const Eigen::VectorXd& mu0,
                         double lambda, double alpha, const PerturbationSet& set);

}  // namespace baylime

#endif  // BAYLIME_REGRESSION_HPP_
