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

#include "baylime/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "baylime/errors.hpp"

namespace baylime {

const char* to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kNumerical:
      return "numerical";
    case FeatureKind::kCategorical:
      return "categorical";
    case FeatureKind::kBinaryMask:
      return "binary_mask";
  }
  return "unknown";
}

Instance::Instance(std::vector<double> values, std::vector<FeatureKind> kinds,
                   std::vector<std::string> names)
    : values_(std::move(values)),
      kinds_(std::move(kinds)),
      names_(std::move(names)) {
  if (values_.empty()) {
    throw InvalidInputError("instance must have at least one feature");
  }
  if (kinds_.size() != values_.size() || names_.size() != values_.size()) {
    throw InvalidInputError("instance values, kinds and names differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidInputError("instance feature " + std::to_string(i) +
                              " is not finite");
    }
  }
}

Instance Instance::numerical(std::vector<double> values) {
  std::vector<FeatureKind> kinds(values.size(), FeatureKind::kNumerical);
  std::vector<std::string> names;
  names.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    names.push_back("x" + std::to_string(i));
  }
  return Instance(std::move(values), std::move(kinds), std::move(names));
}

PerturbationSet::PerturbationSet(Eigen::MatrixXd rows, Eigen::VectorXd labels,
                                 Eigen::VectorXd weights, std::uint64_t seed)
    : rows_(std::move(rows)),
      labels_(std::move(labels)),
      weights_(std::move(weights)),
      seed_(seed) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw InvalidInputError("perturbation set needs n >= 1 rows and m >= 1 columns");
  }
  if (labels_.size() != rows_.rows() || weights_.size() != rows_.rows()) {
    throw ShapeError("perturbation set rows, labels and weights disagree");
  }
  if (!rows_.allFinite() || !labels_.allFinite()) {
    throw InvalidInputError("perturbation set contains non-finite values");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0) {
      throw InvalidInputError("weight " + std::to_string(i) +
                              " is not finite and strictly positive");
    }
  }
}

PerturbationSet::PerturbationSet(Eigen::MatrixXd rows, Eigen::VectorXd labels,
                                 std::uint64_t seed)
    : PerturbationSet(rows, labels, Eigen::VectorXd::Ones(rows.rows()), seed) {}

PerturbationSet PerturbationSet::with_weights(Eigen::VectorXd weights) const {
  return PerturbationSet(rows_, labels_, std::move(weights), seed_);
}

std::vector<int> rank_features(std::span<const double> coefficients) {
  const std::size_t m = coefficients.size();
  bool all_zero = true;
  for (double c : coefficients) {
    if (!std::isfinite(c)) {
      throw InvalidInputError("cannot rank non-finite coefficients");
    }
    all_zero = all_zero && c == 0.0;
  }
  std::vector<int> ranks(m, 1);
  if (all_zero) return ranks;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(coefficients[a]) > std::abs(coefficients[b]);
  });
  for (std::size_t r = 0; r < m; ++r) {
    ranks[order[r]] = static_cast<int>(r) + 1;
  }
  return ranks;
}

std::vector<int> rank_features(const Eigen::VectorXd& coefficients) {
  return rank_features(
      std::span<const double>(coefficients.data(), coefficients.size()));
}

Eigen::VectorXd normalized_importances(const Eigen::VectorXd& coefficients) {
  const double norm = coefficients.norm();
  if (norm == 0.0) return Eigen::VectorXd::Zero(coefficients.size());
  return (coefficients / norm).cwiseAbs();
}

Explanation make_explanation(Eigen::VectorXd coefficients) {
  if (coefficients.size() < 1) {
    throw InvalidInputError("explanation needs at least one coefficient");
  }
  Explanation e;
  e.ranks = rank_features(coefficients);  // validates finiteness
  e.importances = normalized_importances(coefficients);
  e.coefficients = std::move(coefficients);
  return e;
}

ExplanationEnsemble::ExplanationEnsemble(std::vector<Explanation> runs)
    : runs_(std::move(runs)) {
  if (runs_.size() < 2) {
    throw InvalidInputError("an ensemble needs at least two explanations");
  }
  const std::size_t m = runs_.front().m();
  for (const auto& run : runs_) {
    if (run.m() != m || run.ranks.size() != m ||
        static_cast<std::size_t>(run.importances.size()) != m) {
      throw ShapeError("ensemble explanations disagree on feature count");
    }
  }
}

std::vector<double> ExplanationEnsemble::importance_samples(
    std::size_t feature) const {
  std::vector<double> out;
  out.reserve(runs_.size());
  for (const auto& run : runs_) out.push_back(run.importances[feature]);
  return out;
}

std::vector<double> ExplanationEnsemble::rank_samples(std::size_t feature) const {
  std::vector<double> out;
  out.reserve(runs_.size());
  for (const auto& run : runs_) out.push_back(run.ranks[feature]);
  return out;
}

}  // namespace baylime
