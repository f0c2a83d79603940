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

#ifndef BAYLIME_BLACKBOX_HPP_
#define BAYLIME_BLACKBOX_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace baylime {

enum class PredictorKind { kInProcess, kSubprocess };

// A model that can only be queried. predict() returns one row per input row
// and one column per output (a single column for regressors, one per class
// for classifiers).
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual PredictorKind kind() const = 0;
  virtual Eigen::MatrixXd predict(const Eigen::MatrixXd& rows,
                                  std::chrono::milliseconds timeout) = 0;
};

// In-process predictor over a per-row scoring function.
class FunctionPredictor : public Predictor {
 public:
  using RowFn = std::function<double(std::span<const double>)>;
  explicit FunctionPredictor(RowFn fn) : fn_(std::move(fn)) {}

  PredictorKind kind() const override { return PredictorKind::kInProcess; }
  Eigen::MatrixXd predict(const Eigen::MatrixXd& rows,
                          std::chrono::milliseconds timeout) override;

 private:
  RowFn fn_;
};

// Long-lived child process speaking JSON Lines on stdin/stdout:
//   request  {"inputs": [[f64, ...], ...]}
//   response {"outputs": [f64, ...]}
// An output entry may also be an array (one value per class). The process is
// spawned with /bin/sh -c and lives until the predictor is destroyed.
class SubprocessPredictor : public Predictor {
 public:
  explicit SubprocessPredictor(std::string command);
  ~SubprocessPredictor() override;
  SubprocessPredictor(const SubprocessPredictor&) = delete;
  SubprocessPredictor& operator=(const SubprocessPredictor&) = delete;

  PredictorKind kind() const override { return PredictorKind::kSubprocess; }
  Eigen::MatrixXd predict(const Eigen::MatrixXd& rows,
                          std::chrono::milliseconds timeout) override;

  const std::string& command() const { return command_; }

 private:
  void send_line(const std::string& line, std::chrono::steady_clock::time_point deadline);
  std::string read_line(std::chrono::steady_clock::time_point deadline);
  void terminate();
  std::string exit_description();

  std::string command_;
  int fd_ = -1;
  int pid_ = -1;
  std::string buffer_;
  bool dead_ = false;
};

struct ProbeLimits {
  std::size_t batch_limit = 1024;
  double timeout_seconds = 60.0;
};

// Owns a predictor for one explanation run. probe() hides batching and checks
// the response contract.
class PredictorHandle {
 public:
  explicit PredictorHandle(std::unique_ptr<Predictor> predictor,
                           ProbeLimits limits = {});

  PredictorKind kind() const { return predictor_->kind(); }
  const ProbeLimits& limits() const { return limits_; }

  // Returns exactly rows.rows() finite predictions in input order, taken from
  // output column target_class (or the only column when absent).
  Eigen::VectorXd probe(const Eigen::MatrixXd& rows,
                        std::optional<int> target_class = std::nullopt);

  std::size_t calls() const { return calls_; }

 private:
  std::unique_ptr<Predictor> predictor_;
  ProbeLimits limits_;
  std::size_t calls_ = 0;
};

// Creates a fresh handle per run so parallel runs never share a predictor.
using PredictorFactory = std::function<PredictorHandle()>;

// Built-in black boxes.
//   linear:    f(v) = b + sum_j c_j v_j
//   quadratic: f(v) = b + sum_j c_j v_j + sum_j q_j v_j^2
//   constant:  f(v) = b
std::unique_ptr<Predictor> make_linear_predictor(std::vector<double> coef,
                                                 double intercept = 0.0);
std::unique_ptr<Predictor> make_quadratic_predictor(std::vector<double> linear,
                                                    std::vector<double> quadratic,
                                                    double intercept = 0.0);
std::unique_ptr<Predictor> make_constant_predictor(double value);

}  // namespace baylime

#endif  // BAYLIME_BLACKBOX_HPP_
