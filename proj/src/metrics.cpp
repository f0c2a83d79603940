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

#include "baylime/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "baylime/compute.hpp"
#include "baylime/rng.hpp"

namespace baylime {
namespace {

// Mid-ranks of one ranking plus its tie term sum(t^3 - t).
std::pair<std::vector<double>, double> mid_ranks(const std::vector<int>& ranks) {
  const std::size_t m = ranks.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
  std::vector<double> mid(m);
  double ties = 0.0;
  for (std::size_t start = 0; start < m;) {
    std::size_t end = start + 1;
    while (end < m && ranks[order[end]] == ranks[order[start]]) ++end;
    const double t = static_cast<double>(end - start);
    const double value = static_cast<double>(start + 1) + (t - 1.0) / 2.0;
    for (std::size_t i = start; i < end; ++i) mid[order[i]] = value;
    ties += t * t * t - t;
    start = end;
  }
  return {std::move(mid), ties};
}

}  // namespace

double inconsistency(const ExplanationEnsemble& ensemble) {
  const std::size_t m = ensemble.m();
  const double k = static_cast<double>(ensemble.k());
  std::vector<double> mean_importance(m);
  std::vector<double> dispersion(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto g = ensemble.importance_samples(i);
    mean_importance[i] = std::accumulate(g.begin(), g.end(), 0.0) / k;
    total += mean_importance[i];

    const auto f = ensemble.rank_samples(i);
    const double mean = std::accumulate(f.begin(), f.end(), 0.0) / k;
    double var = 0.0;
    for (double r : f) var += (r - mean) * (r - mean);
    var /= k;
    dispersion[i] = var / mean;
  }
  if (!(total > 0.0)) {
    throw UndefinedMeasureError(
        "inconsistency is undefined: every importance in the ensemble is zero");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sum += mean_importance[i] / total * dispersion[i];
  }
  return sum;
}

double kendalls_w(std::span<const std::vector<int>> rankings) {
  if (rankings.size() < 2) {
    throw InvalidInputError("Kendall's W needs at least two rankings");
  }
  const std::size_t m = rankings.front().size();
  if (m < 2) throw UndefinedMeasureError("Kendall's W needs at least two features");
  const double k = static_cast<double>(rankings.size());
  const double md = static_cast<double>(m);

  std::vector<double> rank_sums(m, 0.0);
  double tie_sum = 0.0;
  for (const auto& ranking : rankings) {
    if (ranking.size() != m) throw ShapeError("rankings differ in length");
    auto [mid, ties] = mid_ranks(ranking);
    for (std::size_t i = 0; i < m; ++i) rank_sums[i] += mid[i];
    tie_sum += ties;
  }
  const double mean = k * (md + 1.0) / 2.0;
  double s = 0.0;
  for (double r : rank_sums) s += (r - mean) * (r - mean);
  const double denom = k * k * (md * md * md - md) - k * tie_sum;
  if (!(denom > 0.0)) return 1.0;  // every ranking is a single full tie
  return std::clamp(12.0 * s / denom, 0.0, 1.0);
}

double kendalls_w(const ExplanationEnsemble& ensemble) {
  std::vector<std::vector<int>> rankings;
  rankings.reserve(ensemble.k());
  for (const auto& run : ensemble.runs()) rankings.push_back(run.ranks);
  return kendalls_w(std::span<const std::vector<int>>(rankings));
}

double lower_median(std::vector<double> values) {
  if (values.empty()) throw InvalidInputError("median of an empty sample");
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  return values[mid];
}

std::vector<std::pair<double, double>> sample_width_pairs(
    const RobustnessOptions& options) {
  const auto [lo, up] = options.bounds;
  if (options.pairs < 1) throw ConfigError("robustness needs at least one pair");
  if (!(lo > 0.0) || !(lo < up) || !std::isfinite(up)) {
    throw ConfigError("robustness needs width bounds with 0 < lo < up");
  }
  const double min_gap = 1e-6 * (up - lo);
  Rng rng(options.seed);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(options.pairs);
  while (pairs.size() < options.pairs) {
    const double l1 = lo + (up - lo) * rng.uniform();
    const double l2 = lo + (up - lo) * rng.uniform();
    if (std::abs(l1 - l2) < min_gap) continue;
    pairs.emplace_back(l1, l2);
  }
  return pairs;
}

RobustnessResult robustness(const Instance& instance, const PredictorFactory& factory,
                            const ExplainConfig& config,
                            const RobustnessOptions& options) {
  config.validate(instance);
  const auto pairs = sample_width_pairs(options);
  std::vector<RobustnessSample> samples(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());

  const long long count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long jj = 0; jj < count; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    try {
      ExplainConfig pair_config = config;
      pair_config.perturb.seed = config.perturb.seed + j;
      PredictorHandle handle = factory();
      const PerturbationSet set = build_perturbation_set(
          pair_config.perturb, instance, handle, pair_config.target_class);

      const auto [l1, l2] = pairs[j];
      pair_config.kernel.width = l1;
      const Explanation e1 = explain_samples(instance, set, pair_config);
      pair_config.kernel.width = l2;
      const Explanation e2 = explain_samples(instance, set, pair_config);
      samples[j] = {l1, l2, (e1.importances - e2.importances).norm() / std::abs(l1 - l2)};
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }

  for (std::size_t j = 0; j < errors.size(); ++j) {
    if (!errors[j]) continue;
    std::string why = "unknown error";
    try {
      std::rethrow_exception(errors[j]);
    } catch (const std::exception& e) {
      why = e.what();
    } catch (...) {
    }
    std::vector<RobustnessSample> partial(samples.begin(),
                                          samples.begin() + static_cast<std::ptrdiff_t>(j));
    throw RobustnessError("robustness pair " + std::to_string(j) + " failed: " + why,
                          std::move(partial), errors[j]);
  }

  RobustnessResult result;
  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (const auto& s : samples) ratios.push_back(s.ratio);
  result.median = lower_median(std::move(ratios));
  result.samples = std::move(samples);
  return result;
}

}  // namespace baylime
