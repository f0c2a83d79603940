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

#ifndef BAYLIME_ERRORS_HPP_
#define BAYLIME_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace baylime {

// Root of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed in malformed data (non-finite values, bad shapes).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A configuration invariant is violated (zero std, empty table, bad bounds).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Explanations with different feature counts were combined.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// The black box could not be queried. Carries whatever the predictor sent.
class ProbeError : public Error {
 public:
  ProbeError(const std::string& what, std::string payload)
      : Error(what), payload_(std::move(payload)) {}
  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
};

// The black box answered, but with a non-finite prediction.
class ContractViolationError : public Error {
 public:
  ContractViolationError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Base for failures of the surrogate fit.
class FitError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public FitError {
 public:
  SingularityError(const std::string& what, int rank, int dim)
      : FitError(what), rank_(rank), dim_(dim) {}
  int rank() const { return rank_; }
  int dim() const { return dim_; }

 private:
  int rank_;
  int dim_;
};

class ConvergenceError : public FitError {
 public:
  ConvergenceError(const std::string& what, double last_alpha,
                   double last_lambda, int iterations)
      : FitError(what),
        last_alpha_(last_alpha),
        last_lambda_(last_lambda),
        iterations_(iterations) {}
  double last_alpha() const { return last_alpha_; }
  double last_lambda() const { return last_lambda_; }
  int iterations() const { return iterations_; }

 private:
  double last_alpha_;
  double last_lambda_;
  int iterations_;
};

// The prior/data split needs beta_MLE, which does not exist for singular X'WX.
class DecompositionUnavailableError : public FitError {
 public:
  using FitError::FitError;
};

// A metric has no defined value for the given ensemble.
class UndefinedMeasureError : public Error {
 public:
  using Error::Error;
};

}  // namespace baylime

#endif  // BAYLIME_ERRORS_HPP_
