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

#ifndef BAYLIME_TESTS_UNIT_SUPPORT_HPP_
#define BAYLIME_TESTS_UNIT_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "baylime/types.hpp"

namespace baylime::testing {

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>()(engine_); }
  // Weight in (0, 1].
  double weight() { return 1.0 - uniform(0.0, 1.0); }
  double log_uniform(double lo_exp, double hi_exp) {
    return std::pow(10.0, uniform(lo_exp, hi_exp));
  }

  Eigen::MatrixXd matrix(Eigen::Index n, Eigen::Index m) {
    Eigen::MatrixXd x(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) x(i, j) = normal();
    return x;
  }
  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }
  Eigen::VectorXd weights(Eigen::Index n) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = weight();
    return w;
  }

  // Noisy linear data with m in [1, max_m] and n in [m + 1, max_n].
  PerturbationSet regression_set(int max_m, int max_n) {
    const int m = integer(1, max_m);
    const int n = integer(m + 1, max_n);
    const Eigen::MatrixXd x = matrix(n, m);
    const Eigen::VectorXd beta = vector(m);
    Eigen::VectorXd y = x * beta;
    for (int i = 0; i < n; ++i) y[i] += 0.3 * normal();
    return PerturbationSet(x, y, weights(n), 0);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Gaussian elimination with partial pivoting in long double. Independent of
// the Cholesky path the library takes.
inline Eigen::VectorXd solve_oracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.rows());
  std::vector<std::vector<long double>> t(m, std::vector<long double>(m + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) t[i][j] = a(i, j);
    t[i][m] = b[i];
  }
  for (int c = 0; c < m; ++c) {
    int p = c;
    for (int r = c + 1; r < m; ++r)
      if (std::fabs(t[r][c]) > std::fabs(t[p][c])) p = r;
    std::swap(t[c], t[p]);
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      const long double f = t[r][c] / t[c][c];
      for (int k = c; k <= m; ++k) t[r][k] -= f * t[c][k];
    }
  }
  Eigen::VectorXd x(m);
  for (int i = 0; i < m; ++i) x[i] = static_cast<double>(t[i][m] / t[i][i]);
  return x;
}

// X'WX and X'WY by plain loops in long double.
inline std::pair<Eigen::MatrixXd, Eigen::VectorXd> normal_equations(const PerturbationSet& s) {
  const auto n = s.n(), m = s.m();
  Eigen::MatrixXd g(m, m);
  Eigen::VectorXd c(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    long double acc_c = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      acc_c += static_cast<long double>(s.weights()[i]) * s.rows()(i, a) * s.labels()[i];
    c[a] = static_cast<double>(acc_c);
    for (Eigen::Index b = 0; b < m; ++b) {
      long double acc = 0;
      for (Eigen::Index i = 0; i < n; ++i)
        acc += static_cast<long double>(s.weights()[i]) * s.rows()(i, a) * s.rows()(i, b);
      g(a, b) = static_cast<double>(acc);
    }
  }
  return {g, c};
}

inline double max_relative_gap(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  const double scale = std::max(1e-300, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace baylime::testing

#endif  // BAYLIME_TESTS_UNIT_SUPPORT_HPP_
