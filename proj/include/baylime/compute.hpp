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

#ifndef BAYLIME_COMPUTE_HPP_
#define BAYLIME_COMPUTE_HPP_

#include <cstddef>
#include <exception>
#include <vector>

#include <Eigen/Dense>

// Data-parallel inner loops shared by the kernel and regression modules.
//
// The default entry points split rows into fixed-size blocks, process the
// blocks with OpenMP and combine partial results in block order. The block
// size never depends on the thread count, so results are bit-identical for
// any OMP_NUM_THREADS. The reference:: versions are the plain serial loops
// the tests and benchmarks compare against.
namespace baylime::compute {

inline constexpr Eigen::Index kRowBlock = 256;

enum class DistanceKind { kEuclidean, kHammingFraction };

// X' diag(w) X.
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w);
// X' diag(w) y.
Eigen::VectorXd weighted_cross(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& y);
// Distance of every row of x to ref.
Eigen::VectorXd row_distances(const Eigen::MatrixXd& x, const Eigen::VectorXd& ref,
                              DistanceKind kind);
// exp(-d^2 / width^2), floored at the smallest positive normal double.
Eigen::VectorXd exponential_weights(const Eigen::VectorXd& distances, double width);

namespace reference {
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w);
Eigen::VectorXd weighted_cross(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& y);
Eigen::VectorXd row_distances(const Eigen::MatrixXd& x, const Eigen::VectorXd& ref,
                              DistanceKind kind);
Eigen::VectorXd exponential_weights(const Eigen::VectorXd& distances, double width);
}  // namespace reference

double point_distance(const Eigen::VectorXd& row, const Eigen::VectorXd& ref,
                      DistanceKind kind);
double exponential_weight(double distance, double width);

// Runs body(i) for i in [0, count) across OpenMP threads. If any call throws,
// the exception of the lowest failing index is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace baylime::compute

#endif  // BAYLIME_COMPUTE_HPP_
