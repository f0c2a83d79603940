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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "baylime/errors.hpp"
#include "baylime/types.hpp"
#include "support.hpp"

namespace baylime {
namespace {

using testing::Gen;
using testing::vec;

TEST(Instance, RejectsEmptyAndMismatchedFields) {
  EXPECT_THROW(Instance({}, {}, {}), InvalidInputError);
  EXPECT_THROW(Instance({1.0, 2.0}, {FeatureKind::kNumerical}, {"a", "b"}), InvalidInputError);
  EXPECT_THROW(Instance::numerical({1.0, std::nan("")}), InvalidInputError);
}

TEST(Instance, NumericalNamesFeatures) {
  const Instance x = Instance::numerical({1.0, 2.0, 3.0});
  EXPECT_EQ(x.size(), 3u);
  EXPECT_EQ(x.names()[2], "x2");
  EXPECT_EQ(x.kind(1), FeatureKind::kNumerical);
}

TEST(PerturbationSet, ChecksShapesAndWeights) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 2);
  EXPECT_THROW(PerturbationSet(x, vec({1, 2}), 0), ShapeError);
  EXPECT_THROW(PerturbationSet(x, vec({1, 2, 3}), vec({1, 0, 1}), 0), InvalidInputError);
  EXPECT_THROW(PerturbationSet(x, vec({1, 2, 3}), vec({1, -1, 1}), 0), InvalidInputError);
  EXPECT_THROW(PerturbationSet(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), 0),
               InvalidInputError);
  const PerturbationSet s(x, vec({1, 2, 3}), 9);
  EXPECT_EQ(s.weights(), Eigen::VectorXd::Ones(3));
  EXPECT_EQ(s.seed(), 9u);
  EXPECT_EQ(s.with_weights(vec({0.5, 0.5, 0.5})).weights()[1], 0.5);
}

TEST(RankFeatures, Examples) {
  EXPECT_EQ(rank_features(vec({0.2, -0.15, 0.011, 0.009})), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(rank_features(vec({0.5, -0.5})), (std::vector<int>{1, 2}));
  EXPECT_EQ(rank_features(vec({0.036, -0.599, 0.799, 0.044})),
            (std::vector<int>{4, 2, 1, 3}));
}

TEST(RankFeatures, ZeroVectorRanksAllFirst) {
  EXPECT_EQ(rank_features(vec({0.0, 0.0, 0.0})), (std::vector<int>{1, 1, 1}));
  const Explanation e = make_explanation(vec({0.0, 0.0}));
  EXPECT_EQ(e.importances, Eigen::VectorXd::Zero(2));
}

TEST(RankFeatures, RejectsNonFinite) {
  EXPECT_THROW(rank_features(vec({1.0, std::numeric_limits<double>::infinity()})),
               InvalidInputError);
  EXPECT_THROW(rank_features(vec({std::nan("")})), InvalidInputError);
}

// Property: scaling by any nonzero scalar keeps the ranking; normalizing first
// changes nothing; ranks are a permutation of 1..m when magnitudes differ.
TEST(RankFeatures, ScaleInvarianceProperty) {
  Gen gen(101);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = gen.integer(1, 12);
    Eigen::VectorXd beta = gen.vector(m);
    if (trial % 5 == 0) beta[gen.integer(0, m - 1)] = beta[0];  // exact tie
    double c = gen.log_uniform(-3, 3) * (gen.integer(0, 1) ? 1.0 : -1.0);
    const auto ranks = rank_features(beta);
    EXPECT_EQ(rank_features(Eigen::VectorXd(c * beta)), ranks);
    EXPECT_EQ(rank_features(normalized_importances(beta)), ranks);
    std::vector<int> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < m; ++i) EXPECT_EQ(sorted[i], i + 1);
    // Oracle: rank = 1 + number of features strictly ahead.
    for (int i = 0; i < m; ++i) {
      int ahead = 0;
      for (int j = 0; j < m; ++j) {
        const double a = std::abs(beta[j]), b = std::abs(beta[i]);
        ahead += a > b || (a == b && j < i);
      }
      EXPECT_EQ(ranks[i], ahead + 1);
    }
  }
}

TEST(Explanation, ImportancesAreUnitVector) {
  Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Explanation e = make_explanation(gen.vector(gen.integer(1, 10)));
    EXPECT_NEAR(e.importances.squaredNorm(), 1.0, 1e-9);
    EXPECT_GE(e.importances.minCoeff(), 0.0);
  }
}

TEST(ExplanationEnsemble, Invariants) {
  const Explanation a = make_explanation(vec({1.0, 2.0}));
  const Explanation b = make_explanation(vec({2.0, 1.0}));
  const Explanation c = make_explanation(vec({1.0, 2.0, 3.0}));
  EXPECT_THROW(ExplanationEnsemble({a}), InvalidInputError);
  EXPECT_THROW(ExplanationEnsemble({a, c}), ShapeError);
  const ExplanationEnsemble ens({a, b});
  EXPECT_EQ(ens.k(), 2u);
  EXPECT_EQ(ens.rank_samples(0), (std::vector<double>{2, 1}));
  EXPECT_NEAR(ens.importance_samples(1)[0], 2.0 / std::sqrt(5.0), 1e-15);
}

}  // namespace
}  // namespace baylime
