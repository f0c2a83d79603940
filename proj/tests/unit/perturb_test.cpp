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

#include "baylime/errors.hpp"
#include "baylime/perturb.hpp"
#include "support.hpp"

namespace baylime {
namespace {

Instance mixed_instance() {
  return Instance({0.5, 7.0, 1.0},
                  {FeatureKind::kNumerical, FeatureKind::kBinaryMask, FeatureKind::kCategorical},
                  {"num", "mask", "cat"});
}

PerturbConfig mixed_config(std::size_t n, std::uint64_t seed) {
  PerturbConfig c;
  c.n = n;
  c.seed = seed;
  c.numeric_scale[0] = {10.0, 2.0};
  c.categorical_frequencies[2] = {0.3, 0.5, 0.2};
  c.off_values[1] = -1.0;
  return c;
}

double mean(const Eigen::VectorXd& v) { return v.mean(); }
double variance(const Eigen::VectorXd& v) {
  return (v.array() - v.mean()).square().sum() / static_cast<double>(v.size());
}

TEST(PerturbNumerical, StandardNormalDraws) {
  PerturbConfig c;
  c.n = 100000;
  c.seed = 12;
  const FeatureColumn col = perturb_numerical(c, Instance::numerical({0.0}), 0);
  EXPECT_NEAR(mean(col.interpretable), 0.0, 0.02);
  EXPECT_NEAR(variance(col.interpretable), 1.0, 0.02);
  EXPECT_NEAR(col.interpretable.squaredNorm() / 1e5, 1.0, 0.02);
}

TEST(PerturbNumerical, AffineMapToOriginalSpace) {
  PerturbConfig c;
  c.n = 50;
  c.numeric_scale[0] = {10.0, 2.0};
  c.sample_around_instance = false;
  const FeatureColumn col = perturb_numerical(c, Instance::numerical({3.0}), 0);
  for (Eigen::Index i = 0; i < 50; ++i) {
    EXPECT_DOUBLE_EQ(col.original[i], 10.0 + 2.0 * col.interpretable[i]);
  }
  // A draw of 1.5 therefore lands on 13.
  EXPECT_DOUBLE_EQ(10.0 + 2.0 * 1.5, 13.0);
}

TEST(PerturbNumerical, CentresOnInstanceByDefault) {
  PerturbConfig c;
  c.n = 20;
  c.numeric_scale[0] = {10.0, 2.0};
  const FeatureColumn col = perturb_numerical(c, Instance::numerical({3.0}), 0);
  for (Eigen::Index i = 0; i < 20; ++i) {
    EXPECT_DOUBLE_EQ(col.original[i], 3.0 + 2.0 * col.interpretable[i]);
  }
}

TEST(PerturbNumerical, ZeroStdIsConfigError) {
  PerturbConfig c;
  c.numeric_scale[0] = {0.0, 0.0};
  EXPECT_THROW(perturb_numerical(c, Instance::numerical({1.0}), 0), ConfigError);
  EXPECT_THROW(c.validate(Instance::numerical({1.0})), ConfigError);
}

TEST(PerturbBinary, FairCoinAndMasking) {
  PerturbConfig c;
  c.n = 100000;
  const Instance x({7.0}, {FeatureKind::kBinaryMask}, {"b"});
  const FeatureColumn col = perturb_binary(c, x, 0);
  EXPECT_NEAR(mean(col.interpretable), 0.5, 0.01);
  for (Eigen::Index i = 0; i < 1000; ++i) {
    EXPECT_EQ(col.original[i], col.interpretable[i] == 1.0 ? 7.0 : 0.0);
  }
}

TEST(PerturbCategorical, MatchIndicator) {
  const Instance x({0.0}, {FeatureKind::kCategorical}, {"c"});
  PerturbConfig c;
  c.n = 100000;
  c.categorical_frequencies[0] = {1.0};
  EXPECT_EQ(perturb_categorical(c, x, 0).interpretable, Eigen::VectorXd::Ones(100000));
  c.categorical_frequencies[0] = {0.5, 0.5};
  EXPECT_NEAR(mean(perturb_categorical(c, x, 0).interpretable), 0.5, 0.01);
  c.categorical_frequencies[0] = {0.2, 0.8};
  const FeatureColumn col = perturb_categorical(c, x, 0);
  EXPECT_NEAR(mean(col.interpretable), 0.2, 0.01);
  for (Eigen::Index i = 0; i < 1000; ++i) {
    EXPECT_EQ(col.interpretable[i], col.original[i] == 0.0 ? 1.0 : 0.0);
  }
}

TEST(PerturbCategorical, TableErrors) {
  const Instance x({0.0}, {FeatureKind::kCategorical}, {"c"});
  PerturbConfig c;
  EXPECT_THROW(perturb_categorical(c, x, 0), ConfigError);
  c.categorical_frequencies[0] = {};
  EXPECT_THROW(perturb_categorical(c, x, 0), ConfigError);
  c.categorical_frequencies[0] = {0.5, 0.4};
  EXPECT_THROW(c.validate(x), ConfigError);
  const Instance out_of_table({3.0}, {FeatureKind::kCategorical}, {"c"});
  c.categorical_frequencies[0] = {0.5, 0.5};
  EXPECT_THROW(c.validate(out_of_table), ConfigError);
}

TEST(BuildPerturbationSet, ConstantAndLinearBlackBoxes) {
  PerturbConfig c;
  c.n = 200;
  const Instance zero = Instance::numerical({0.0});
  PredictorHandle constant(make_constant_predictor(0.6826));
  const PerturbationSet s1 = build_perturbation_set(c, zero, constant);
  EXPECT_EQ(s1.labels(), Eigen::VectorXd::Constant(200, 0.6826));
  EXPECT_EQ(s1.weights(), Eigen::VectorXd::Ones(200));
  PredictorHandle twice(make_linear_predictor({2.0}));
  const PerturbationSet s2 = build_perturbation_set(c, zero, twice);
  EXPECT_EQ(s2.labels(), Eigen::VectorXd(2.0 * s2.rows().col(0)));
}

TEST(BuildPerturbationSet, DeterministicAndShaped) {
  const Instance x = mixed_instance();
  PredictorHandle h1(make_linear_predictor({1.0, 1.0, 1.0}));
  PredictorHandle h2(make_linear_predictor({1.0, 1.0, 1.0}));
  const PerturbationSet a = build_perturbation_set(mixed_config(300, 5), x, h1);
  const PerturbationSet b = build_perturbation_set(mixed_config(300, 5), x, h2);
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.labels(), b.labels());
  const Perturbation p = sample_perturbations(mixed_config(300, 5), x);
  EXPECT_EQ(p.interpretable.rows(), p.original.rows());
  EXPECT_EQ(p.interpretable.cols(), p.original.cols());
  const Perturbation other = sample_perturbations(mixed_config(300, 6), x);
  EXPECT_NE(p.interpretable, other.interpretable);
}

TEST(BuildPerturbationSet, AddingFeatureKeepsOtherColumns) {
  PerturbConfig c;
  c.n = 64;
  c.seed = 99;
  const Perturbation two = sample_perturbations(c, Instance::numerical({1.0, 2.0}));
  const Perturbation three = sample_perturbations(c, Instance::numerical({1.0, 2.0, 3.0}));
  EXPECT_EQ(two.interpretable, three.interpretable.leftCols(2));
}

TEST(InterpretableInstance, Representation) {
  const PerturbConfig c = mixed_config(1, 0);
  EXPECT_EQ(interpretable_instance(c, mixed_instance()), testing::vec({0, 1, 1}));
  PerturbConfig around_mean = c;
  around_mean.sample_around_instance = false;
  EXPECT_EQ(interpretable_instance(around_mean, mixed_instance()),
            testing::vec({(0.5 - 10.0) / 2.0, 1, 1}));
}

}  // namespace
}  // namespace baylime
