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

#include <algorithm>
#include <cmath>

#include "baylime/errors.hpp"
#include "baylime/explainer.hpp"
#include "baylime/metrics.hpp"
#include "support.hpp"

namespace baylime {
namespace {

using Eigen::VectorXd;
using testing::vec;

PredictorFactory linear_factory(std::vector<double> c, double b = 0.0) {
  return [c, b] { return PredictorHandle(make_linear_predictor(c, b)); };
}

PredictorFactory quadratic_factory() {
  return [] {
    return PredictorHandle(make_quadratic_predictor({1.0, -0.8, 0.5}, {0.6, 0.5, 0.4}, 0.1));
  };
}

ExplainConfig config_with(SurrogateSpec surrogate, std::size_t n = 500, std::uint64_t seed = 1) {
  ExplainConfig c;
  c.perturb.n = n;
  c.perturb.seed = seed;
  c.surrogate = std::move(surrogate);
  return c;
}

TEST(Explain, RecoversLinearBlackBox) {
  const Instance x = Instance::numerical({0.4, -1.2});
  PredictorHandle h(make_linear_predictor({3.0, -1.0}, 0.5));
  const Explanation e = explain(x, h, config_with(LimeRidge{1e-6}));
  EXPECT_NEAR(e.coefficients[0], 3.0, 0.06);
  EXPECT_NEAR(e.coefficients[1], -1.0, 0.02);
  EXPECT_EQ(e.ranks, (std::vector<int>{1, 2}));
  // The surrogate's intercept is the black box at the instance.
  EXPECT_NEAR(e.intercept, 0.5 + 3.0 * 0.4 + 1.2, 1e-6);
  EXPECT_EQ(e.n_samples, 500u);
  EXPECT_EQ(e.seed, 1u);
  EXPECT_DOUBLE_EQ(e.kernel_width, 0.75 * std::sqrt(2.0));
  EXPECT_FALSE(e.posterior);
  EXPECT_TRUE(e.warnings.empty());
}

TEST(Explain, PriorDominance) {
  const Instance x = Instance::numerical({0.0, 0.0});
  PredictorHandle h(make_linear_predictor({0.2, 3.0}));
  const Explanation e =
      explain(x, h, config_with(BayLime{PriorSpec::full(vec({1, 0}), 1e9, 1.0), {}}));
  EXPECT_NEAR(e.importances[0], 1.0, 1e-6);
  EXPECT_NEAR(e.importances[1], 0.0, 1e-5);
  ASSERT_TRUE(e.posterior);
  EXPECT_EQ(e.posterior->lambda_used, 1e9);
}

TEST(Explain, Deterministic) {
  const Instance x = Instance::numerical({0.3, 0.2, -0.1});
  for (const SurrogateSpec& s :
       {SurrogateSpec(LimeRidge{}), SurrogateSpec(BayLime{PriorSpec::non_informative(), {}})}) {
    PredictorHandle h1 = quadratic_factory()();
    PredictorHandle h2 = quadratic_factory()();
    const Explanation a = explain(x, h1, config_with(s));
    const Explanation b = explain(x, h2, config_with(s));
    EXPECT_EQ(a.coefficients, b.coefficients);
    EXPECT_EQ(a.ranks, b.ranks);
    EXPECT_EQ(a.intercept, b.intercept);
  }
}

TEST(Explain, RidgeAndCentredFullPriorAgree) {
  const Instance x = Instance::numerical({0.3, 0.2, -0.1});
  for (double r : {1e-3, 0.5, 20.0}) {
    PredictorHandle h1 = quadratic_factory()();
    PredictorHandle h2 = quadratic_factory()();
    const double alpha = 3.0;
    const Explanation ridge = explain(x, h1, config_with(LimeRidge{r}, 300, 4));
    const Explanation bayes = explain(
        x, h2, config_with(BayLime{PriorSpec::full(VectorXd::Zero(3), r * alpha, alpha), {}},
                           300, 4));
    EXPECT_LT(testing::max_relative_gap(bayes.coefficients, ridge.coefficients), 1e-8);
  }
}

TEST(Explain, UnderdeterminedWarns) {
  const Instance x = Instance::numerical({0.1, 0.2, 0.3, 0.4});
  PredictorHandle h4(make_linear_predictor({1, 1, 1, 1}));
  const Explanation e =
      explain(x, h4, config_with(BayLime{PriorSpec::full(VectorXd::Zero(4), 1.0, 1.0), {}}, 3));
  ASSERT_EQ(e.warnings.size(), 1u);
  EXPECT_TRUE(e.coefficients.allFinite());
}

TEST(Explain, WithoutIntercept) {
  const Instance x = Instance::numerical({0.0});
  PredictorHandle h(make_linear_predictor({2.0}));
  ExplainConfig c = config_with(LimeRidge{0.0});
  c.fit_intercept = false;
  const Explanation e = explain(x, h, c);
  EXPECT_NEAR(e.coefficients[0], 2.0, 1e-12);
  EXPECT_EQ(e.intercept, 0.0);
}

TEST(Explain, ConfigErrors) {
  const Instance x = Instance::numerical({0.0, 1.0});
  PredictorHandle h(make_linear_predictor({1.0, 1.0}));
  EXPECT_THROW(explain(x, h, config_with(LimeRidge{-1.0})), ConfigError);
  EXPECT_THROW(explain(x, h, config_with(BayLime{PriorSpec::partial(vec({1}), 1.0), {}})),
               ConfigError);
  ExplainConfig bad_width = config_with(LimeRidge{});
  bad_width.kernel.width = 0.0;
  EXPECT_THROW(explain(x, h, bad_width), ConfigError);
  EXPECT_EQ(h.calls(), 0u);
}

TEST(ExplainRepeated, SeedsAndRandomness) {
  const Instance x = Instance::numerical({0.3, 0.2, -0.1});
  const ExplainConfig c = config_with(LimeRidge{}, 100);
  const ExplanationEnsemble ens = explain_repeated(x, quadratic_factory(), c, 3, 40);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ens.runs()[i].seed, 40 + i);
  EXPECT_NE(ens.runs()[0].coefficients, ens.runs()[1].coefficients);
  EXPECT_THROW(explain_repeated(x, quadratic_factory(), c, 1, 0), InvalidInputError);

  // Matches sequential single runs.
  ExplainConfig single = c;
  single.perturb.seed = 41;
  PredictorHandle h = quadratic_factory()();
  EXPECT_EQ(explain(x, h, single).coefficients, ens.runs()[1].coefficients);
}

TEST(ExplainRepeated, EqualSeedsAreConsistent) {
  const Instance x = Instance::numerical({0.3, 0.2, -0.1});
  PredictorHandle h1 = quadratic_factory()();
  PredictorHandle h2 = quadratic_factory()();
  const ExplainConfig c = config_with(LimeRidge{}, 60, 9);
  const ExplanationEnsemble same({explain(x, h1, c), explain(x, h2, c)});
  EXPECT_EQ(inconsistency(same), 0.0);
}

TEST(ElicitPrior, Examples) {
  const Explanation one = make_explanation(vec({2, -1}));
  const PriorSpec p1 = elicit_prior(std::vector<Explanation>{one});
  EXPECT_EQ(p1.mode, PriorMode::kPartial);
  EXPECT_EQ(*p1.mu0, vec({2, -1}));
  EXPECT_EQ(*p1.lambda, 1.0);
  EXPECT_FALSE(p1.alpha);

  const std::vector<Explanation> three{make_explanation(vec({1, 0})),
                                       make_explanation(vec({3, 0})),
                                       make_explanation(vec({2, 0}))};
  const PriorSpec p3 = elicit_prior(three);
  EXPECT_EQ(*p3.mu0, vec({2, 0}));
  EXPECT_EQ(*p3.lambda, 3.0);

  const PriorSpec full = elicit_prior(three, 4.0, 1000.0);
  EXPECT_EQ(full.mode, PriorMode::kFull);
  EXPECT_EQ(*full.alpha, 4.0);
  EXPECT_EQ(*full.lambda, 1000.0);

  EXPECT_THROW(elicit_prior(std::vector<Explanation>{}), InvalidInputError);
  EXPECT_THROW(elicit_prior(std::vector<Explanation>{one, make_explanation(vec({1}))}),
               ShapeError);
}

TEST(ElicitPrior, PermutationInvariant) {
  testing::Gen gen(31);
  for (int t = 0; t < 50; ++t) {
    std::vector<Explanation> list;
    const int count = gen.integer(1, 8);
    for (int i = 0; i < count; ++i) list.push_back(make_explanation(gen.vector(4)));
    const VectorXd before = *elicit_prior(list).mu0;
    std::shuffle(list.begin(), list.end(), gen.engine());
    EXPECT_LT((*elicit_prior(list).mu0 - before).cwiseAbs().maxCoeff(), 1e-14);
  }
}

}  // namespace
}  // namespace baylime
