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

#ifndef BAYLIME_METRICS_HPP_
#define BAYLIME_METRICS_HPP_

#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <vector>

#include "baylime/blackbox.hpp"
#include "baylime/errors.hpp"
#include "baylime/explainer.hpp"
#include "baylime/kernel.hpp"
#include "baylime/types.hpp"

namespace baylime {

// Importance-weighted index of dispersion of feature ranks over repeated runs:
//   sum_i  E[g_i] / sum_j E[g_j]  *  Var(rank_i) / E[rank_i]
// with g_i the normalized importance |beta_hat_i| and population variance.
// Throws UndefinedMeasureError when every importance of every run is zero.
double inconsistency(const ExplanationEnsemble& ensemble);

// Kendall's coefficient of concordance with tie correction,
//   W = 12 S / (k^2 (m^3 - m) - k sum T),
// computed on mid-ranks. An ensemble in which every ranking is one full tie
// counts as complete agreement. Needs m >= 2.
double kendalls_w(const ExplanationEnsemble& ensemble);
double kendalls_w(std::span<const std::vector<int>> rankings);

// Lower of the two middle order statistics for even sizes.
double lower_median(std::vector<double> values);

struct RobustnessSample {
  double l1 = 0.0;
  double l2 = 0.0;
  double ratio = 0.0;  // ||h(l1) - h(l2)|| / |l1 - l2|
};

struct RobustnessOptions {
  std::size_t pairs = 100;
  WidthBounds bounds{};
  std::uint64_t seed = 0;  // drives width sampling only
};

struct RobustnessResult {
  std::vector<RobustnessSample> samples;
  double median = 0.0;
};

// A pair failed. samples() holds every pair before the first failing one;
// cause() is the original error.
class RobustnessError : public Error {
 public:
  RobustnessError(const std::string& what, std::vector<RobustnessSample> partial,
                  std::exception_ptr cause)
      : Error(what), partial_(std::move(partial)), cause_(std::move(cause)) {}
  const std::vector<RobustnessSample>& samples() const { return partial_; }
  std::exception_ptr cause() const { return cause_; }

 private:
  std::vector<RobustnessSample> partial_;
  std::exception_ptr cause_;
};

// Draws widths l1 != l2 uniformly from the bounds. Pair j perturbs with seed
// config.perturb.seed + j and probes once; both widths are fitted on that same
// set, so only the kernel differs within a pair. h is the normalized
// importance vector. Pairs run in parallel.
RobustnessResult robustness(const Instance& instance, const PredictorFactory& factory,
                            const ExplainConfig& config,
                            const RobustnessOptions& options);

// The width pairs robustness() will use, in order.
std::vector<std::pair<double, double>> sample_width_pairs(const RobustnessOptions& options);

struct MetricReport {
  std::optional<double> inconsistency;
  std::optional<double> kendalls_w;
  std::vector<RobustnessSample> robustness_samples;
  std::optional<double> robustness_R;
};

}  // namespace baylime

#endif  // BAYLIME_METRICS_HPP_
