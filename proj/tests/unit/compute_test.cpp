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
#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "baylime/compute.hpp"
#include "support.hpp"

namespace baylime::compute {
namespace {

using testing::Gen;

// The blocked kernels must give the same answer as the serial loops for any
// size straddling block boundaries, and the same bits for any thread count.
TEST(Compute, BlockedMatchesReference) {
  Gen gen(3);
  for (Eigen::Index n : {1, 255, 256, 257, 513, 2000}) {
    const Eigen::Index m = gen.integer(1, 9);
    const Eigen::MatrixXd x = gen.matrix(n, m);
    const Eigen::VectorXd w = gen.weights(n);
    const Eigen::VectorXd y = gen.vector(n);
    const Eigen::VectorXd ref = gen.vector(m);
    EXPECT_LT((weighted_gram(x, w) - reference::weighted_gram(x, w)).cwiseAbs().maxCoeff(),
              1e-10 * n);
    EXPECT_LT((weighted_cross(x, w, y) - reference::weighted_cross(x, w, y)).cwiseAbs().maxCoeff(),
              1e-10 * n);
    for (auto kind : {DistanceKind::kEuclidean, DistanceKind::kHammingFraction}) {
      EXPECT_EQ(row_distances(x, ref, kind), reference::row_distances(x, ref, kind));
    }
    const Eigen::VectorXd d = reference::row_distances(x, ref, DistanceKind::kEuclidean);
    EXPECT_EQ(exponential_weights(d, 0.7), reference::exponential_weights(d, 0.7));
  }
}

TEST(Compute, GramIsSymmetric) {
  Gen gen(4);
  const Eigen::MatrixXd x = gen.matrix(700, 6);
  const Eigen::MatrixXd g = weighted_gram(x, gen.weights(700));
  EXPECT_EQ(g, g.transpose());
}

TEST(Compute, BitIdenticalAcrossThreadCounts) {
  Gen gen(8);
  const Eigen::MatrixXd x = gen.matrix(3000, 7);
  const Eigen::VectorXd w = gen.weights(3000);
  const Eigen::VectorXd y = gen.vector(3000);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Eigen::MatrixXd g1 = weighted_gram(x, w);
  const Eigen::VectorXd c1 = weighted_cross(x, w, y);
  omp_set_num_threads(4);
  const Eigen::MatrixXd g4 = weighted_gram(x, w);
  const Eigen::VectorXd c4 = weighted_cross(x, w, y);
  omp_set_num_threads(saved);
  EXPECT_EQ(g1, g4);
  EXPECT_EQ(c1, c4);
}

TEST(Compute, DistanceExamples) {
  EXPECT_DOUBLE_EQ(point_distance(testing::vec({3, 4}), testing::vec({0, 0}),
                            DistanceKind::kEuclidean),
                   5.0);
  EXPECT_DOUBLE_EQ(point_distance(testing::vec({1, 0, 1, 0}), testing::vec({1, 1, 1, 1}),
                            DistanceKind::kHammingFraction),
                   0.5);
}

TEST(Compute, WeightIsFlooredPositive) {
  EXPECT_EQ(exponential_weight(1e6, 1e-3), std::numeric_limits<double>::min());
  EXPECT_EQ(exponential_weight(0.0, 1.0), 1.0);
}

TEST(Compute, ParallelForRethrowsLowestIndex) {
  std::vector<int> seen(50, 0);
  try {
    parallel_for(50, [&](std::size_t i) {
      seen[i] = 1;
      if (i == 7 || i == 31) throw std::runtime_error("fail " + std::to_string(i));
    });
    FAIL() << "expected a throw";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "fail 7");
  }
  for (int s : seen) EXPECT_EQ(s, 1);
}

}  // namespace
}  // namespace baylime::compute
