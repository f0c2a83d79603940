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

#include "baylime/perturb.hpp"

#include <cmath>
#include <string>

#include "baylime/compute.hpp"
#include "baylime/errors.hpp"
#include "baylime/rng.hpp"

namespace baylime {
namespace {

void require_kind(const Instance& instance, std::size_t feature, FeatureKind kind) {
  if (feature >= instance.size()) {
    throw ConfigError("feature index " + std::to_string(feature) + " out of range");
  }
  if (instance.kind(feature) != kind) {
    throw ConfigError("feature " + std::to_string(feature) + " is " +
                      to_string(instance.kind(feature)) + ", expected " +
                      to_string(kind));
  }
}

const std::vector<double>& table_of(const PerturbConfig& config,
                                    const Instance& instance, std::size_t feature) {
  auto it = config.categorical_frequencies.find(feature);
  if (it == config.categorical_frequencies.end() || it->second.empty()) {
    throw ConfigError("categorical feature " + std::to_string(feature) +
                      " has no frequency table");
  }
  const double category = instance.value(feature);
  if (category < 0 || category != std::floor(category) ||
      category >= static_cast<double>(it->second.size())) {
    throw ConfigError("categorical feature " + std::to_string(feature) +
                      " has a category index outside its table");
  }
  return it->second;
}

}  // namespace

NumericScale PerturbConfig::scale_of(std::size_t feature) const {
  auto it = numeric_scale.find(feature);
  return it == numeric_scale.end() ? NumericScale{} : it->second;
}

void PerturbConfig::validate(const Instance& instance) const {
  if (n < 1) throw ConfigError("perturbation count n must be >= 1");
  for (const auto& [feature, table] : categorical_frequencies) {
    if (table.empty()) {
      throw ConfigError("frequency table of feature " + std::to_string(feature) +
                        " is empty");
    }
    double sum = 0.0;
    for (double p : table) {
      if (!std::isfinite(p) || p < 0.0) {
        throw ConfigError("frequency table of feature " + std::to_string(feature) +
                          " has an invalid probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("frequency table of feature " + std::to_string(feature) +
                        " does not sum to 1");
    }
  }
  for (const auto& [feature, scale] : numeric_scale) {
    if (!(scale.std > 0.0) || !std::isfinite(scale.std) || !std::isfinite(scale.mean)) {
      throw ConfigError("numerical feature " + std::to_string(feature) +
                        " needs a finite mean and a positive std");
    }
  }
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (instance.kind(j) == FeatureKind::kCategorical) table_of(*this, instance, j);
  }
}

FeatureColumn perturb_numerical(const PerturbConfig& config,
                                const Instance& instance, std::size_t feature) {
  require_kind(instance, feature, FeatureKind::kNumerical);
  const NumericScale scale = config.scale_of(feature);
  if (!(scale.std > 0.0)) {
    throw ConfigError("numerical feature " + std::to_string(feature) +
                      " has zero standard deviation");
  }
  const double centre =
      config.sample_around_instance ? instance.value(feature) : scale.mean;
  const auto n = static_cast<Eigen::Index>(config.n);
  FeatureColumn col{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  Rng rng = Rng::for_stream(config.seed, feature);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = rng.normal();
    col.interpretable[i] = z;
    col.original[i] = centre + z * scale.std;
  }
  return col;
}

FeatureColumn perturb_binary(const PerturbConfig& config, const Instance& instance,
                             std::size_t feature) {
  require_kind(instance, feature, FeatureKind::kBinaryMask);
  auto it = config.off_values.find(feature);
  const double off = it == config.off_values.end() ? 0.0 : it->second;
  const auto n = static_cast<Eigen::Index>(config.n);
  FeatureColumn col{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  Rng rng = Rng::for_stream(config.seed, feature);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool on = rng.coin();
    col.interpretable[i] = on ? 1.0 : 0.0;
    col.original[i] = on ? instance.value(feature) : off;
  }
  return col;
}

FeatureColumn perturb_categorical(const PerturbConfig& config,
                                  const Instance& instance, std::size_t feature) {
  require_kind(instance, feature, FeatureKind::kCategorical);
  const auto& table = table_of(config, instance, feature);
  const auto own = static_cast<std::size_t>(instance.value(feature));
  const auto n = static_cast<Eigen::Index>(config.n);
  FeatureColumn col{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  Rng rng = Rng::for_stream(config.seed, feature);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t c = rng.categorical(table);
    col.interpretable[i] = c == own ? 1.0 : 0.0;
    col.original[i] = static_cast<double>(c);
  }
  return col;
}

Eigen::VectorXd interpretable_instance(const PerturbConfig& config,
                                       const Instance& instance) {
  Eigen::VectorXd repr(static_cast<Eigen::Index>(instance.size()));
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const auto idx = static_cast<Eigen::Index>(j);
    if (instance.kind(j) != FeatureKind::kNumerical) {
      repr[idx] = 1.0;
    } else if (config.sample_around_instance) {
      repr[idx] = 0.0;
    } else {
      const NumericScale s = config.scale_of(j);
      repr[idx] = (instance.value(j) - s.mean) / s.std;
    }
  }
  return repr;
}

Perturbation sample_perturbations(const PerturbConfig& config,
                                  const Instance& instance) {
  config.validate(instance);
  const auto n = static_cast<Eigen::Index>(config.n);
  const auto m = static_cast<Eigen::Index>(instance.size());
  Perturbation p{Eigen::MatrixXd(n, m), Eigen::MatrixXd(n, m)};
  compute::parallel_for(instance.size(), [&](std::size_t j) {
    FeatureColumn col;
    switch (instance.kind(j)) {
      case FeatureKind::kNumerical:
        col = perturb_numerical(config, instance, j);
        break;
      case FeatureKind::kBinaryMask:
        col = perturb_binary(config, instance, j);
        break;
      case FeatureKind::kCategorical:
        col = perturb_categorical(config, instance, j);
        break;
    }
    p.interpretable.col(static_cast<Eigen::Index>(j)) = col.interpretable;
    p.original.col(static_cast<Eigen::Index>(j)) = col.original;
  });
  return p;
}

PerturbationSet build_perturbation_set(const PerturbConfig& config,
                                       const Instance& instance,
                                       PredictorHandle& predictor,
                                       std::optional<int> target_class) {
  Perturbation p = sample_perturbations(config, instance);
  Eigen::VectorXd labels = predictor.probe(p.original, target_class);
  return PerturbationSet(std::move(p.interpretable), std::move(labels), config.seed);
}

}  // namespace baylime
