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

#include "baylime/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "baylime/compute.hpp"
#include "baylime/errors.hpp"

namespace baylime {
namespace {

// Relative threshold below which an eigenvalue of X'WX counts as zero.
constexpr double kRankTolerance = 1e-12;

struct Moments {
  Eigen::MatrixXd gram;   // X'WX
  Eigen::VectorXd cross;  // X'WY
  Eigen::VectorXd eigenvalues;
  int rank = 0;
};

Moments moments_of(const PerturbationSet& set) {
  Moments mo;
  mo.gram = compute::weighted_gram(set.rows(), set.weights());
  mo.cross = compute::weighted_cross(set.rows(), set.weights(), set.labels());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mo.gram, Eigen::EigenvaluesOnly);
  mo.eigenvalues = eig.eigenvalues().cwiseMax(0.0);
  const double top = mo.eigenvalues.size() ? mo.eigenvalues.maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < mo.eigenvalues.size(); ++i) {
    if (top > 0.0 && mo.eigenvalues[i] > kRankTolerance * top) ++mo.rank;
  }
  return mo;
}

std::optional<Eigen::VectorXd> mle_of(const Moments& mo) {
  if (mo.rank < mo.gram.rows()) return std::nullopt;
  Eigen::LLT<Eigen::MatrixXd> llt(mo.gram);
  if (llt.info() != Eigen::Success) return std::nullopt;
  return llt.solve(mo.cross);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be a positive finite number");
  }
}

void require_length(const Eigen::VectorXd& mu0, const PerturbationSet& set) {
  if (mu0.size() != set.m()) {
    throw ShapeError("prior mean has " + std::to_string(mu0.size()) +
                     " entries for " + std::to_string(set.m()) + " features");
  }
  if (!mu0.allFinite()) throw InvalidInputError("prior mean must be finite");
}

Eigen::VectorXd posterior_mean(const Moments& mo, const Eigen::VectorXd& mu0,
                               double lambda, double alpha) {
  Eigen::MatrixXd precision = alpha * mo.gram;
  precision.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw FitError("posterior precision is not positive definite");
  }
  return llt.solve(lambda * mu0 + alpha * mo.cross);
}

SurrogateFit assemble(const Moments& mo, const Eigen::VectorXd& mu0, double lambda,
                      double alpha) {
  SurrogateFit fit;
  fit.precision = alpha * mo.gram;
  fit.precision.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(fit.precision);
  if (llt.info() != Eigen::Success) {
    throw FitError("posterior precision is not positive definite");
  }
  fit.mu_n = llt.solve(lambda * mu0 + alpha * mo.cross);
  fit.alpha_used = alpha;
  fit.lambda_used = lambda;
  fit.beta_mle = mle_of(mo);
  fit.n_effective_prior = lambda;
  fit.n_effective_data = alpha * mo.gram.trace();
  return fit;
}

double weighted_rss(const PerturbationSet& set, const Eigen::VectorXd& mu) {
  const Eigen::VectorXd r = set.labels() - set.rows() * mu;
  return (set.weights().array() * r.array().square()).sum();
}

bool settled(double now, double before, double tol) {
  return std::abs(now - before) <= tol * std::abs(before);
}

// Shared evidence loop. With fit_lambda false, lambda stays at its start value.
SurrogateFit evidence_fit(const PerturbationSet& set, const Eigen::VectorXd& mu0,
                          double lambda, bool fit_lambda,
                          const EvidenceOptions& opt) {
  const Moments mo = moments_of(set);
  const double n = static_cast<double>(set.n());
  const auto clamp = [&](double v) { return std::clamp(v, opt.floor, opt.ceiling); };

  const double mean_sq = (set.weights().array() * set.labels().array().square()).sum() /
                         set.weights().sum();
  double alpha = clamp(mean_sq > 0.0 ? 1.0 / mean_sq : 1.0);

  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Eigen::VectorXd mu = posterior_mean(mo, mu0, lambda, alpha);
    const Eigen::ArrayXd s = alpha * mo.eigenvalues.array();
    const double gamma = (s / (lambda + s)).sum();

    double next_lambda = lambda;
    if (fit_lambda) {
      const double norm2 = mu.squaredNorm();
      next_lambda = norm2 > 0.0 ? clamp(gamma / norm2) : opt.ceiling;
    }
    const double rss = weighted_rss(set, mu);
    const double next_alpha =
        rss > 0.0 ? clamp(std::max(n - gamma, 0.0) / rss) : opt.ceiling;

    const bool done = settled(next_alpha, alpha, opt.tolerance) &&
                      settled(next_lambda, lambda, opt.tolerance);
    alpha = next_alpha;
    lambda = next_lambda;
    if (done) {
      SurrogateFit fit = assemble(mo, mu0, lambda, alpha);
      fit.iterations = it;
      return fit;
    }
  }
  throw ConvergenceError("evidence maximization did not converge in " +
                             std::to_string(opt.max_iterations) + " iterations",
                         alpha, lambda, opt.max_iterations);
}

}  // namespace

const char* to_string(PriorMode mode) {
  switch (mode) {
    case PriorMode::kNonInformative:
      return "non_informative";
    case PriorMode::kPartial:
      return "partial";
    case PriorMode::kFull:
      return "full";
  }
  return "unknown";
}

PriorSpec PriorSpec::non_informative() { return PriorSpec{}; }

PriorSpec PriorSpec::partial(Eigen::VectorXd mu0, double lambda) {
  return PriorSpec{PriorMode::kPartial, std::move(mu0), lambda, std::nullopt};
}

PriorSpec PriorSpec::full(Eigen::VectorXd mu0, double lambda, double alpha) {
  return PriorSpec{PriorMode::kFull, std::move(mu0), lambda, alpha};
}

void PriorSpec::validate(std::size_t m) const {
  const auto check_mu0 = [&] {
    if (!mu0) throw ConfigError(std::string(to_string(mode)) + " prior needs mu0");
    if (static_cast<std::size_t>(mu0->size()) != m) {
      throw ConfigError("prior mean has " + std::to_string(mu0->size()) +
                        " entries for " + std::to_string(m) + " features");
    }
    if (!mu0->allFinite()) throw ConfigError("prior mean must be finite");
  };
  switch (mode) {
    case PriorMode::kNonInformative:
      if (mu0 || lambda || alpha) {
        throw ConfigError("non-informative prior takes no mu0, lambda or alpha");
      }
      return;
    case PriorMode::kPartial:
      check_mu0();
      if (!lambda) throw ConfigError("partial prior needs lambda");
      if (alpha) throw ConfigError("partial prior fits alpha; do not set it");
      require_positive(*lambda, "lambda");
      return;
    case PriorMode::kFull:
      check_mu0();
      if (!lambda || !alpha) throw ConfigError("full prior needs lambda and alpha");
      require_positive(*lambda, "lambda");
      require_positive(*alpha, "alpha");
      return;
  }
}

Eigen::VectorXd ridge_fit(const PerturbationSet& set, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw ConfigError("ridge regularization must be >= 0");
  }
  const Moments mo = moments_of(set);
  if (r == 0.0 && mo.rank < mo.gram.rows()) {
    throw SingularityError("X'WX is rank deficient (rank " + std::to_string(mo.rank) +
                               " of " + std::to_string(mo.gram.rows()) +
                               ") and r = 0",
                           mo.rank, static_cast<int>(mo.gram.rows()));
  }
  Eigen::MatrixXd a = mo.gram;
  a.diagonal().array() += r;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw SingularityError("X'WX + rI is not positive definite", mo.rank,
                           static_cast<int>(mo.gram.rows()));
  }
  return llt.solve(mo.cross);
}

SurrogateFit bayes_fit_full(const PerturbationSet& set, const Eigen::VectorXd& mu0,
                            double lambda, double alpha) {
  require_positive(lambda, "lambda");
  require_positive(alpha, "alpha");
  require_length(mu0, set);
  return assemble(moments_of(set), mu0, lambda, alpha);
}

SurrogateFit bayes_fit_partial(const PerturbationSet& set, const Eigen::VectorXd& mu0,
                               double lambda, const EvidenceOptions& options) {
  require_positive(lambda, "lambda");
  require_length(mu0, set);
  return evidence_fit(set, mu0, lambda, /*fit_lambda=*/false, options);
}

SurrogateFit bayes_fit_noninformative(const PerturbationSet& set,
                                      const EvidenceOptions& options) {
  if (set.n() < 2) throw InvalidInputError("evidence fitting needs n >= 2");
  return evidence_fit(set, Eigen::VectorXd::Zero(set.m()), 1.0, /*fit_lambda=*/true,
                      options);
}

SurrogateFit bayes_fit(const PerturbationSet& set, const PriorSpec& prior,
                       const EvidenceOptions& options) {
  prior.validate(static_cast<std::size_t>(set.m()));
  switch (prior.mode) {
    case PriorMode::kNonInformative:
      return bayes_fit_noninformative(set, options);
    case PriorMode::kPartial:
      return bayes_fit_partial(set, *prior.mu0, *prior.lambda, options);
    case PriorMode::kFull:
      return bayes_fit_full(set, *prior.mu0, *prior.lambda, *prior.alpha);
  }
  throw ConfigError("unknown prior mode");
}

PosteriorSplit decompose(const SurrogateFit& fit, const Eigen::VectorXd& mu0,
                         double lambda, double alpha, const PerturbationSet& set) {
  if (!fit.beta_mle) {
    throw DecompositionUnavailableError(
        "beta_MLE does not exist: X'WX is singular");
  }
  require_positive(lambda, "lambda");
  require_positive(alpha, "alpha");
  require_length(mu0, set);
  const Eigen::Index m = set.m();
  const Eigen::MatrixXd data = alpha * compute::weighted_gram(set.rows(), set.weights());
  Eigen::MatrixXd precision = data;
  precision.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw FitError("posterior precision is not positive definite");
  }
  PosteriorSplit split;
  split.prior_weight = llt.solve(lambda * Eigen::MatrixXd::Identity(m, m));
  split.data_weight = llt.solve(data);
  return split;
}

}  // namespace baylime
