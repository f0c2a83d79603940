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

#ifndef BAYLIME_TYPES_HPP_
#define BAYLIME_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace baylime {

enum class FeatureKind { kNumerical, kCategorical, kBinaryMask };

const char* to_string(FeatureKind kind);

// The point being explained. Categorical values are category indices.
class Instance {
 public:
  Instance(std::vector<double> values, std::vector<FeatureKind> kinds,
           std::vector<std::string> names);

  // All-numerical instance with names x0, x1, ...
  static Instance numerical(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<FeatureKind>& kinds() const { return kinds_; }
  const std::vector<std::string>& names() const { return names_; }
  double value(std::size_t i) const { return values_[i]; }
  FeatureKind kind(std::size_t i) const { return kinds_[i]; }

 private:
  std::vector<double> values_;
  std::vector<FeatureKind> kinds_;
  std::vector<std::string> names_;
};

// n perturbed rows in the interpretable representation, their black-box
// labels and proximity weights (the diagonal of W).
class PerturbationSet {
 public:
  PerturbationSet(Eigen::MatrixXd rows, Eigen::VectorXd labels,
                  Eigen::VectorXd weights, std::uint64_t seed);
  // Unit weights.
  PerturbationSet(Eigen::MatrixXd rows, Eigen::VectorXd labels,
                  std::uint64_t seed);

  Eigen::Index n() const { return rows_.rows(); }
  Eigen::Index m() const { return rows_.cols(); }
  const Eigen::MatrixXd& rows() const { return rows_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  std::uint64_t seed() const { return seed_; }

  PerturbationSet with_weights(Eigen::VectorXd weights) const;

 private:
  Eigen::MatrixXd rows_;
  Eigen::VectorXd labels_;
  Eigen::VectorXd weights_;
  std::uint64_t seed_;
};

// Posterior of the Bayesian surrogate. precision is S_n^{-1}.
struct SurrogateFit {
  Eigen::VectorXd mu_n;
  Eigen::MatrixXd precision;
  double alpha_used = 0.0;
  double lambda_used = 0.0;
  std::optional<Eigen::VectorXd> beta_mle;
  double n_effective_prior = 0.0;  // lambda
  double n_effective_data = 0.0;   // trace(alpha X'WX)
  int iterations = 0;              // evidence-maximization sweeps, 0 if none
};

struct Explanation {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd importances;  // |beta / ||beta|||
  std::vector<int> ranks;       // 1 = most important
  std::optional<SurrogateFit> posterior;
  double intercept = 0.0;
  double kernel_width = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  std::size_t m() const { return static_cast<std::size_t>(coefficients.size()); }
};

// Builds importances and ranks from raw coefficients. Throws
// InvalidInputError on non-finite input.
Explanation make_explanation(Eigen::VectorXd coefficients);

// beta / ||beta||, elementwise absolute value. All zeros for a zero vector.
Eigen::VectorXd normalized_importances(const Eigen::VectorXd& coefficients);

// Rank 1 goes to the largest |beta_i|; equal magnitudes are ordered by
// feature index. A zero vector ranks every feature 1.
std::vector<int> rank_features(std::span<const double> coefficients);
std::vector<int> rank_features(const Eigen::VectorXd& coefficients);

// k >= 2 explanations of one instance that differ only in their seed.
class ExplanationEnsemble {
 public:
  explicit ExplanationEnsemble(std::vector<Explanation> runs);

  std::size_t k() const { return runs_.size(); }
  std::size_t m() const { return runs_.front().m(); }
  const std::vector<Explanation>& runs() const { return runs_; }

  // Samples of |beta_hat_i| and of rank_i across runs.
  std::vector<double> importance_samples(std::size_t feature) const;
  std::vector<double> rank_samples(std::size_t feature) const;

 private:
  std::vector<Explanation> runs_;
};

}  // namespace baylime

#endif  // BAYLIME_TYPES_HPP_
