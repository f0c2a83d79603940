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

#include "baylime/blackbox.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <thread>

#include "baylime/errors.hpp"
#include "json.hpp"

extern char** environ;

namespace baylime {
namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return static_cast<int>(std::max<long long>(0, left.count()));
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

Eigen::MatrixXd FunctionPredictor::predict(const Eigen::MatrixXd& rows,
                                           std::chrono::milliseconds) {
  Eigen::MatrixXd out(rows.rows(), 1);
  std::vector<double> row(static_cast<std::size_t>(rows.cols()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) row[j] = rows(i, j);
    out(i, 0) = fn_(row);
  }
  return out;
}

SubprocessPredictor::SubprocessPredictor(std::string command)
    : command_(std::move(command)) {
  if (command_.empty()) throw ConfigError("predictor command is empty");
  int sv[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
    throw ProbeError("socketpair failed: " + errno_text(), "");
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);

  std::string sh = "/bin/sh";
  std::string dash_c = "-c";
  char* argv[] = {sh.data(), dash_c.data(), command_.data(), nullptr};
  pid_t pid = -1;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  close(sv[1]);
  if (rc != 0) {
    close(sv[0]);
    throw ProbeError("cannot spawn predictor: " + std::string(std::strerror(rc)),
                     command_);
  }
  fd_ = sv[0];
  pid_ = pid;
}

SubprocessPredictor::~SubprocessPredictor() { terminate(); }

void SubprocessPredictor::terminate() {
  if (fd_ >= 0) {
    shutdown(fd_, SHUT_WR);
  }
  if (pid_ > 0) {
    // Give the child a moment to exit on EOF before killing it.
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }
  if (fd_ >= 0) {
    close(fd_);
    fd_ = -1;
  }
  dead_ = true;
}

std::string SubprocessPredictor::exit_description() {
  if (pid_ <= 0) return "predictor process is gone";
  int status = 0;
  pid_t r = 0;
  for (int i = 0; i < 100 && r == 0; ++i) {
    r = waitpid(pid_, &status, WNOHANG);
    if (r == 0) std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  if (r != pid_) return "predictor closed its output";
  pid_ = -1;
  if (WIFEXITED(status)) {
    return "predictor exited with status " + std::to_string(WEXITSTATUS(status));
  }
  if (WIFSIGNALED(status)) {
    return "predictor killed by signal " + std::to_string(WTERMSIG(status));
  }
  return "predictor terminated";
}

void SubprocessPredictor::send_line(const std::string& line,
                                    Clock::time_point deadline) {
  std::size_t sent = 0;
  while (sent < line.size()) {
    pollfd p{fd_, POLLOUT, 0};
    const int ready = poll(&p, 1, remaining_ms(deadline));
    if (ready == 0) {
      terminate();
      throw ProbeError("predictor timed out while receiving input", "");
    }
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProbeError("poll failed: " + errno_text(), "");
    }
    const ssize_t w =
        send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      const std::string why = exit_description();
      terminate();
      throw ProbeError(why, buffer_);
    }
    sent += static_cast<std::size_t>(w);
  }
}

std::string SubprocessPredictor::read_line(Clock::time_point deadline) {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    pollfd p{fd_, POLLIN, 0};
    const int ready = poll(&p, 1, remaining_ms(deadline));
    if (ready == 0) {
      std::string partial = buffer_;
      terminate();
      throw ProbeError("predictor timed out", partial);
    }
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProbeError("poll failed: " + errno_text(), buffer_);
    }
    char chunk[4096];
    const ssize_t r = recv(fd_, chunk, sizeof(chunk), 0);
    if (r < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw ProbeError("read from predictor failed: " + errno_text(), buffer_);
    }
    if (r == 0) {
      std::string partial = buffer_;
      const std::string why = exit_description();
      terminate();
      throw ProbeError(why, partial);
    }
    buffer_.append(chunk, static_cast<std::size_t>(r));
  }
}

Eigen::MatrixXd SubprocessPredictor::predict(const Eigen::MatrixXd& rows,
                                             std::chrono::milliseconds timeout) {
  if (dead_) throw ProbeError("predictor process is no longer running", "");
  const auto deadline = Clock::now() + timeout;

  nlohmann::json inputs = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < rows.cols(); ++j) row.push_back(rows(i, j));
    inputs.push_back(std::move(row));
  }
  nlohmann::json request = {{"inputs", std::move(inputs)}};
  send_line(request.dump() + "\n", deadline);

  const std::string line = read_line(deadline);
  nlohmann::json response;
  try {
    response = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw ProbeError("malformed predictor response", line);
  }
  if (!response.is_object() || !response.contains("outputs") ||
      !response["outputs"].is_array()) {
    throw ProbeError("predictor response lacks an \"outputs\" array", line);
  }
  const auto& outputs = response["outputs"];
  if (outputs.size() != static_cast<std::size_t>(rows.rows())) {
    throw ProbeError("predictor returned " + std::to_string(outputs.size()) +
                         " outputs for " + std::to_string(rows.rows()) + " rows",
                     line);
  }
  if (outputs.empty()) return Eigen::MatrixXd(0, 1);

  const std::size_t width = outputs[0].is_array() ? outputs[0].size() : 1;
  if (width == 0) throw ProbeError("predictor returned an empty output row", line);
  Eigen::MatrixXd out(rows.rows(), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const auto& o = outputs[i];
    if (o.is_number() && width == 1) {
      out(static_cast<Eigen::Index>(i), 0) = o.get<double>();
      continue;
    }
    if (!o.is_array() || o.size() != width) {
      throw ProbeError("inconsistent output at row " + std::to_string(i), line);
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (!o[c].is_number()) {
        throw ProbeError("non-numeric output at row " + std::to_string(i), line);
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          o[c].get<double>();
    }
  }
  return out;
}

PredictorHandle::PredictorHandle(std::unique_ptr<Predictor> predictor,
                                 ProbeLimits limits)
    : predictor_(std::move(predictor)), limits_(limits) {
  if (!predictor_) throw ConfigError("predictor handle needs a predictor");
  if (limits_.batch_limit < 1) throw ConfigError("batch_limit must be >= 1");
  if (!(limits_.timeout_seconds > 0.0)) throw ConfigError("timeout must be > 0");
}

Eigen::VectorXd PredictorHandle::probe(const Eigen::MatrixXd& rows,
                                       std::optional<int> target_class) {
  if (rows.rows() < 1) throw InvalidInputError("probe needs at least one row");
  if (!rows.allFinite()) throw InvalidInputError("probe rows must be finite");

  const auto timeout = std::chrono::milliseconds(
      static_cast<long long>(std::ceil(limits_.timeout_seconds * 1000.0)));
  const Eigen::Index n = rows.rows();
  const auto batch = static_cast<Eigen::Index>(limits_.batch_limit);
  Eigen::VectorXd y(n);
  for (Eigen::Index begin = 0; begin < n; begin += batch) {
    const Eigen::Index len = std::min(batch, n - begin);
    ++calls_;
    const Eigen::MatrixXd out = predictor_->predict(rows.middleRows(begin, len), timeout);
    if (out.rows() != len) {
      throw ProbeError("predictor returned " + std::to_string(out.rows()) +
                           " rows for " + std::to_string(len),
                       "");
    }
    Eigen::Index column = 0;
    if (target_class) {
      if (*target_class < 0 || *target_class >= out.cols()) {
        throw ConfigError("target class " + std::to_string(*target_class) +
                          " out of range for " + std::to_string(out.cols()) +
                          " outputs");
      }
      column = *target_class;
    } else if (out.cols() != 1) {
      throw ConfigError("predictor has " + std::to_string(out.cols()) +
                        " outputs per row; choose a target class");
    }
    for (Eigen::Index i = 0; i < len; ++i) {
      const double v = out(i, column);
      if (!std::isfinite(v)) {
        throw ContractViolationError(
            "predictor returned a non-finite value for row " +
                std::to_string(begin + i),
            static_cast<std::size_t>(begin + i));
      }
      y[begin + i] = v;
    }
  }
  return y;
}

std::unique_ptr<Predictor> make_linear_predictor(std::vector<double> coef,
                                                 double intercept) {
  return make_quadratic_predictor(std::move(coef), {}, intercept);
}

std::unique_ptr<Predictor> make_quadratic_predictor(std::vector<double> linear,
                                                    std::vector<double> quadratic,
                                                    double intercept) {
  return std::make_unique<FunctionPredictor>(
      [linear = std::move(linear), quadratic = std::move(quadratic),
       intercept](std::span<const double> v) {
        double f = intercept;
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (j < linear.size()) f += linear[j] * v[j];
          if (j < quadratic.size()) f += quadratic[j] * v[j] * v[j];
        }
        return f;
      });
}

std::unique_ptr<Predictor> make_constant_predictor(double value) {
  return std::make_unique<FunctionPredictor>(
      [value](std::span<const double>) { return value; });
}

}  // namespace baylime
