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

#include "baylime/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "baylime/blackbox.hpp"
#include "baylime/cli/dataset.hpp"
#include "baylime/errors.hpp"
#include "baylime/experiments.hpp"
#include "baylime/explainer.hpp"
#include "baylime/metrics.hpp"
#include "json.hpp"

namespace baylime::cli {
namespace {

using nlohmann::json;

struct Options {
  // data
  std::string data;
  std::size_t instance = 0;
  std::vector<std::string> categorical;
  std::vector<std::string> binary;
  std::vector<std::string> drop;
  // black box
  std::string predictor;
  std::string predictor_cmd;
  std::vector<double> coef;
  std::vector<double> quad;
  double constant = 0.0;
  std::size_t batch_limit = 1024;
  double timeout = 60.0;
  std::optional<int> target_class;
  // sampling and kernel
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::optional<double> kernel_width;
  std::string distance = "euclidean";
  bool around_mean = false;
  bool no_intercept = false;
  // surrogate
  std::string mode = "lime";
  double r = 1.0;
  std::vector<double> mu0;
  std::string mu0_file;
  std::string prior_file;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::vector<std::size_t> prior_from;
  // sweeps
  std::vector<std::string> explainers;
  std::vector<std::size_t> n_grid{50, 100, 200, 400, 800, 1600};
  std::size_t k = 200;
  std::size_t pairs = 100;
  std::optional<double> l_lo;
  std::optional<double> l_up;
  std::uint64_t width_seed = 0;
  // output
  std::string out;
  std::string manifest;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open JSON file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
}

std::vector<double> json_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be a JSON array of numbers");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(what + " must contain only numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

void add_data_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "CSV file with a header row")->required();
  cmd->add_option("--instance", o.instance, "Row index of the instance to explain");
  cmd->add_option("--categorical", o.categorical, "Categorical column names")
      ->delimiter(',');
  cmd->add_option("--binary", o.binary, "Binary on/off column names")->delimiter(',');
  cmd->add_option("--drop", o.drop, "Columns to ignore")->delimiter(',');
  cmd->add_option("--predictor", o.predictor, "Built-in black box")
      ->check(CLI::IsMember({"linear", "quadratic", "constant"}));
  cmd->add_option("--predictor-cmd", o.predictor_cmd,
                  "Subprocess black box speaking JSON Lines "
                  "(default: $BAYLIME_PREDICTOR_CMD)");
  cmd->add_option("--coef", o.coef, "Linear coefficients of the built-in black box")
      ->delimiter(',');
  cmd->add_option("--quad", o.quad, "Quadratic coefficients (quadratic black box)")
      ->delimiter(',');
  cmd->add_option("--const", o.constant, "Intercept, or the constant output");
  cmd->add_option("--batch-limit", o.batch_limit, "Max rows per probe call")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--timeout", o.timeout, "Seconds per probe call")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--target-class", o.target_class, "Output column to explain");
  cmd->add_option("--n", o.n, "Perturbed samples per explanation")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Perturbation seed");
  cmd->add_option("--kernel-width", o.kernel_width, "Kernel width (default 0.75*sqrt(m))");
  cmd->add_option("--distance", o.distance, "Distance in the interpretable space")
      ->check(CLI::IsMember({"euclidean", "hamming"}));
  cmd->add_flag("--around-mean", o.around_mean,
                "Centre numerical draws on the column mean instead of the instance");
  cmd->add_flag("--no-intercept", o.no_intercept, "Fit the surrogate without intercept");
  cmd->add_option("--r", o.r, "Ridge regularization of the LIME surrogate");
  cmd->add_option("--mu0", o.mu0, "Prior mean")->delimiter(',');
  cmd->add_option("--mu0-file", o.mu0_file, "JSON prior mean (array or {\"mu0\":[...]})");
  cmd->add_option("--prior-file", o.prior_file,
                  "JSON prior {\"mu0\":[...], \"lambda\": x, \"alpha\": x}");
  cmd->add_option("--lambda", o.lambda, "Prior precision");
  cmd->add_option("--alpha", o.alpha, "Noise precision");
  cmd->add_option("--prior-from", o.prior_from,
                  "Rows of similar instances; their LIME explanations form the prior")
      ->delimiter(',');
  cmd->add_option("--out", o.out, "Output file (a manifest is written next to it)");
  cmd->add_option("--manifest", o.manifest, "Write the run manifest here");
}

struct Context {
  Dataset dataset;
  Instance instance;
  PredictorFactory factory;
  std::string predictor_description;
  ExplainConfig base;
  std::optional<Eigen::VectorXd> mu0;
  std::optional<double> lambda;
  std::optional<double> alpha;
};

PredictorFactory make_factory(const Options& o, std::size_t m, std::string& description) {
  ProbeLimits limits{o.batch_limit, o.timeout};
  std::string cmd = o.predictor_cmd;
  if (cmd.empty() && o.predictor.empty()) {
    if (const char* env = std::getenv("BAYLIME_PREDICTOR_CMD")) cmd = env;
  }
  if (!cmd.empty() && !o.predictor.empty()) {
    throw ConfigError("--predictor and --predictor-cmd are mutually exclusive");
  }
  if (!cmd.empty()) {
    description = "subprocess: " + cmd;
    return [cmd, limits] {
      return PredictorHandle(std::make_unique<SubprocessPredictor>(cmd), limits);
    };
  }
  if (o.predictor.empty()) {
    throw ConfigError(
        "no black box: pass --predictor, --predictor-cmd or set BAYLIME_PREDICTOR_CMD");
  }
  const auto sized = [m](std::vector<double> v, const char* flag) {
    if (v.empty()) return std::vector<double>(m, 1.0);
    if (v.size() != m) {
      throw ConfigError(std::string(flag) + " needs " + std::to_string(m) + " values");
    }
    return v;
  };
  description = o.predictor;
  if (o.predictor == "constant") {
    const double c = o.constant;
    return [c, limits] { return PredictorHandle(make_constant_predictor(c), limits); };
  }
  const auto coef = sized(o.coef, "--coef");
  const double b = o.constant;
  if (o.predictor == "linear") {
    return [coef, b, limits] {
      return PredictorHandle(make_linear_predictor(coef, b), limits);
    };
  }
  const auto quad = sized(o.quad, "--quad");
  return [coef, quad, b, limits] {
    return PredictorHandle(make_quadratic_predictor(coef, quad, b), limits);
  };
}

Context build_context(const Options& o) {
  Dataset ds = ingest_csv(o.data, CsvSchema{o.categorical, o.binary, o.drop});
  Instance inst = ds.instance(o.instance);
  const std::size_t m = inst.size();
  Context ctx{std::move(ds), inst, {}, {}, {}, {}, {}, {}};
  ctx.factory = make_factory(o, m, ctx.predictor_description);

  ctx.base.perturb = ctx.dataset.perturb_config(o.n, o.seed);
  ctx.base.perturb.sample_around_instance = !o.around_mean;
  ctx.base.kernel.width = o.kernel_width;
  ctx.base.kernel.distance = o.distance == "hamming" ? DistanceKind::kHammingFraction
                                                     : DistanceKind::kEuclidean;
  ctx.base.target_class = o.target_class;
  ctx.base.fit_intercept = !o.no_intercept;
  ctx.base.surrogate = LimeRidge{o.r};

  if (!o.prior_file.empty()) {
    const json j = read_json_file(o.prior_file);
    if (!j.is_object()) throw ConfigError("--prior-file must hold a JSON object");
    if (j.contains("mu0")) {
      const auto v = json_vector(j["mu0"], "mu0");
      ctx.mu0 = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    if (j.contains("lambda") && !j["lambda"].is_null()) ctx.lambda = j["lambda"].get<double>();
    if (j.contains("alpha") && !j["alpha"].is_null()) ctx.alpha = j["alpha"].get<double>();
  }
  if (!o.mu0_file.empty()) {
    json j = read_json_file(o.mu0_file);
    if (j.is_object()) {
      if (!j.contains("mu0")) throw ConfigError("--mu0-file object lacks \"mu0\"");
      if (j.contains("lambda") && !j["lambda"].is_null() && !ctx.lambda) {
        ctx.lambda = j["lambda"].get<double>();
      }
      if (j.contains("alpha") && !j["alpha"].is_null() && !ctx.alpha) {
        ctx.alpha = j["alpha"].get<double>();
      }
      j = j["mu0"];
    }
    const auto v = json_vector(j, "mu0");
    ctx.mu0 = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  if (!o.prior_from.empty()) {
    std::vector<Explanation> previous;
    for (std::size_t row : o.prior_from) {
      const Instance similar = ctx.dataset.instance(row);
      ExplainConfig config = ctx.base;
      config.surrogate = LimeRidge{o.r};
      PredictorHandle handle = ctx.factory();
      previous.push_back(explain(similar, handle, config));
    }
    const PriorSpec elicited = elicit_prior(previous);
    ctx.mu0 = elicited.mu0;
    if (!ctx.lambda) ctx.lambda = elicited.lambda;
  }
  if (!o.mu0.empty()) {
    ctx.mu0 = Eigen::Map<const Eigen::VectorXd>(o.mu0.data(),
                                                static_cast<Eigen::Index>(o.mu0.size()));
  }
  if (o.lambda) ctx.lambda = o.lambda;
  if (o.alpha) ctx.alpha = o.alpha;
  return ctx;
}

// Parses "mode[:key=value,...]" with keys r, lambda, alpha.
SurrogateSpec surrogate_for(const std::string& spec, const Context& ctx, double default_r) {
  const auto colon = spec.find(':');
  std::string mode = spec.substr(0, colon);
  double r = default_r;
  std::optional<double> lambda = ctx.lambda;
  std::optional<double> alpha = ctx.alpha;
  if (colon != std::string::npos) {
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("bad explainer option '" + item + "'");
      const std::string key = item.substr(0, eq);
      double value = 0.0;
      const std::string text = item.substr(eq + 1);
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("bad number in explainer option '" + item + "'");
      }
      if (key == "r") {
        r = value;
      } else if (key == "lambda") {
        lambda = value;
      } else if (key == "alpha") {
        alpha = value;
      } else {
        throw ConfigError("unknown explainer option '" + key + "'");
      }
    }
  }
  const std::size_t m = ctx.instance.size();
  if (mode == "lime") return LimeRidge{r};
  if (mode == "non_informative" || mode == "noninformative") {
    return BayLime{PriorSpec::non_informative(), {}};
  }
  if (mode == "partial" || mode == "full") {
    if (!ctx.mu0) {
      throw ConfigError(mode + " prior needs a prior mean (--mu0, --mu0-file, "
                               "--prior-file or --prior-from)");
    }
    if (!lambda) throw ConfigError(mode + " prior needs --lambda");
    PriorSpec prior;
    if (mode == "partial") {
      if (colon == std::string::npos || spec.find("alpha=") == std::string::npos) {
        alpha.reset();  // a global --alpha belongs to full explainers
      }
      if (alpha) throw ConfigError("partial prior fits alpha; do not set it");
      prior = PriorSpec::partial(*ctx.mu0, *lambda);
    } else {
      if (!alpha) throw ConfigError("full prior needs --alpha");
      prior = PriorSpec::full(*ctx.mu0, *lambda, *alpha);
    }
    prior.validate(m);
    return BayLime{std::move(prior), {}};
  }
  throw ConfigError("unknown explainer mode '" + mode + "'");
}

std::vector<ExplainerSpec> explainers_for(const Options& o, const Context& ctx) {
  std::vector<std::string> specs = o.explainers;
  if (specs.empty()) {
    specs = {"lime", "non_informative"};
    if (ctx.mu0 && ctx.lambda) specs.push_back("partial");
    if (ctx.mu0 && ctx.lambda && ctx.alpha) specs.push_back("full");
  }
  std::vector<ExplainerSpec> out;
  for (const auto& s : specs) out.push_back({s, surrogate_for(s, ctx, o.r)});
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json parameters_json(const Options& o, const Context& ctx) {
  json p;
  p["data"] = o.data;
  p["instance"] = o.instance;
  p["categorical"] = o.categorical;
  p["binary"] = o.binary;
  p["drop"] = o.drop;
  p["predictor"] = ctx.predictor_description;
  p["batch_limit"] = o.batch_limit;
  p["timeout"] = o.timeout;
  p["n"] = o.n;
  p["seed"] = o.seed;
  p["kernel_width"] = ctx.base.kernel.resolved_width(ctx.instance.size());
  p["distance"] = o.distance;
  p["sample_around_instance"] = !o.around_mean;
  p["fit_intercept"] = !o.no_intercept;
  p["r"] = o.r;
  p["mu0"] = ctx.mu0 ? vector_json(*ctx.mu0) : json(nullptr);
  p["lambda"] = ctx.lambda ? json(*ctx.lambda) : json(nullptr);
  p["alpha"] = ctx.alpha ? json(*ctx.alpha) : json(nullptr);
  return p;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << content;
}

// Prints the result and writes it plus its manifest where requested.
void emit(const std::string& content, const Options& o, const std::string& command,
          const std::vector<std::string>& args, json parameters, std::ostream& out) {
  json manifest;
  manifest["tool"] = "baylime";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["argv"] = args;
  manifest["parameters"] = std::move(parameters);
  manifest["timestamp"] = utc_timestamp();
  if (!o.out.empty()) {
    write_file(o.out, content);
    manifest["output"] = o.out;
    write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
  } else {
    out << content;
  }
  if (!o.manifest.empty()) write_file(o.manifest, manifest.dump(2) + "\n");
}

int cmd_explain(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Context ctx = build_context(o);
  std::string mode = o.mode;
  if (mode == "noninformative") mode = "non_informative";
  ExplainConfig config = ctx.base;
  config.surrogate = surrogate_for(mode, ctx, o.r);

  PredictorHandle handle = ctx.factory();
  const Explanation e = explain(ctx.instance, handle, config);

  json j;
  j["instance"] = o.instance;
  j["features"] = ctx.instance.names();
  j["mode"] = mode;
  j["coefficients"] = vector_json(e.coefficients);
  j["importances"] = vector_json(e.importances);
  j["ranks"] = e.ranks;
  j["intercept"] = e.intercept;
  j["r"] = mode == "lime" ? json(o.r) : json(nullptr);
  j["alpha"] = e.posterior ? json(e.posterior->alpha_used) : json(nullptr);
  j["lambda"] = e.posterior ? json(e.posterior->lambda_used) : json(nullptr);
  j["kernel_width"] = e.kernel_width;
  j["n_samples"] = e.n_samples;
  j["seed"] = e.seed;
  j["probe_calls"] = handle.calls();
  j["warnings"] = e.warnings;

  json params = parameters_json(o, ctx);
  params["mode"] = mode;
  emit(j.dump(2) + "\n", o, "explain", args, std::move(params), out);
  return kExitOk;
}

int cmd_consistency(const Options& o, const std::vector<std::string>& args,
                    std::ostream& out) {
  Context ctx = build_context(o);
  const auto explainers = explainers_for(o, ctx);
  const auto rows = consistency_sweep(ctx.instance, ctx.factory, ctx.base, explainers,
                                      o.n_grid, o.k, o.seed);
  std::ostringstream csv;
  csv << "n,explainer,inconsistency,kendalls_w\r\n";
  for (const auto& row : rows) {
    csv << row.n << ',' << csv_escape(row.explainer) << ','
        << (row.inconsistency ? format_double(*row.inconsistency) : "NaN") << ','
        << (row.kendalls_w ? format_double(*row.kendalls_w) : "NaN") << "\r\n";
  }
  json params = parameters_json(o, ctx);
  params["k"] = o.k;
  params["n_grid"] = o.n_grid;
  params["seed_base"] = o.seed;
  json labels = json::array();
  for (const auto& e : explainers) labels.push_back(e.label);
  params["explainers"] = labels;
  emit(csv.str(), o, "consistency", args, std::move(params), out);
  return kExitOk;
}

int cmd_robustness(const Options& o, const std::vector<std::string>& args,
                   std::ostream& out) {
  Context ctx = build_context(o);
  const auto explainers = explainers_for(o, ctx);
  const double l0 = default_kernel_width(ctx.instance.size());
  RobustnessOptions ro;
  ro.pairs = o.pairs;
  ro.bounds = {o.l_lo.value_or(0.5 * l0), o.l_up.value_or(2.0 * l0)};
  ro.seed = o.width_seed;
  const auto rows = robustness_sweep(ctx.instance, ctx.factory, ctx.base, explainers, ro);

  std::ostringstream csv;
  csv << "explainer,kind,l1,l2,ratio\r\n";
  for (const auto& row : rows) {
    for (const auto& s : row.result.samples) {
      csv << csv_escape(row.explainer) << ",sample," << format_double(s.l1) << ','
          << format_double(s.l2) << ',' << format_double(s.ratio) << "\r\n";
    }
  }
  for (const auto& row : rows) {
    csv << csv_escape(row.explainer) << ",median,,," << format_double(row.result.median)
        << "\r\n";
  }
  json params = parameters_json(o, ctx);
  params["pairs"] = ro.pairs;
  params["l_lo"] = ro.bounds.lo;
  params["l_up"] = ro.bounds.up;
  params["width_seed"] = ro.seed;
  json labels = json::array();
  for (const auto& e : explainers) labels.push_back(e.label);
  params["explainers"] = labels;
  emit(csv.str(), o, "robustness", args, std::move(params), out);
  return kExitOk;
}

int cmd_rerun(const std::string& manifest_path, const std::string& out_override,
              std::ostream& out, std::ostream& err) {
  const json manifest = read_json_file(manifest_path);
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    throw ConfigError("manifest lacks an argv array");
  }
  std::vector<std::string> args = manifest["argv"].get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "rerun") throw ConfigError("manifest loops on rerun");
  // Drop any manifest target so a rerun never overwrites the manifest it reads.
  std::vector<std::string> cleaned;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--manifest" || (!out_override.empty() && args[i] == "--out")) {
      ++i;
      continue;
    }
    if (args[i].rfind("--manifest=", 0) == 0 ||
        (!out_override.empty() && args[i].rfind("--out=", 0) == 0)) {
      continue;
    }
    cleaned.push_back(args[i]);
  }
  if (!out_override.empty()) {
    cleaned.push_back("--out");
    cleaned.push_back(out_override);
  }
  return run(cleaned, out, err);
}

int exit_code_for(std::exception_ptr error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const RobustnessError& e) {
    err << "error: " << e.what() << "\n";
    if (!e.samples().empty()) {
      err << "partial results: " << e.samples().size() << " pairs completed\n";
    }
    std::ostringstream sink;
    return e.cause() ? exit_code_for(e.cause(), sink) : 1;
  } catch (const ProbeError& e) {
    err << "probe error: " << e.what() << "\n";
    if (!e.payload().empty()) err << "payload: " << e.payload() << "\n";
    return kExitProbe;
  } catch (const ContractViolationError& e) {
    err << "probe error: " << e.what() << "\n";
    return kExitProbe;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << "\n";
    return kExitFit;
  } catch (const UndefinedMeasureError& e) {
    err << "fit error: " << e.what() << "\n";
    return kExitFit;
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local surrogate explanations with Bayesian priors", "baylime"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options o;
  auto* explain_cmd = app.add_subcommand("explain", "Explain one instance (JSON)");
  add_data_options(explain_cmd, o);
  explain_cmd
      ->add_option("--mode", o.mode, "Surrogate: lime, non_informative, partial or full")
      ->check(CLI::IsMember({"lime", "non_informative", "noninformative", "partial", "full"}));

  auto* consistency_cmd =
      app.add_subcommand("consistency", "Inconsistency and Kendall's W over an n grid (CSV)");
  add_data_options(consistency_cmd, o);
  consistency_cmd->add_option("--n-grid", o.n_grid, "Perturbation sizes")->delimiter(',');
  consistency_cmd->add_option("--k", o.k, "Repeated explanations per cell")
      ->check(CLI::Range(2, 1 << 30));
  consistency_cmd->add_option("--explainer", o.explainers,
                              "mode[:r=..,lambda=..,alpha=..], repeatable");

  auto* robustness_cmd =
      app.add_subcommand("robustness", "Sensitivity to the kernel width (CSV)");
  add_data_options(robustness_cmd, o);
  robustness_cmd->add_option("--pairs", o.pairs, "Width pairs")->check(CLI::PositiveNumber);
  robustness_cmd->add_option("--l-lo", o.l_lo, "Lower width bound");
  robustness_cmd->add_option("--l-up", o.l_up, "Upper width bound");
  robustness_cmd->add_option("--width-seed", o.width_seed, "Seed of the width sampler");
  robustness_cmd->add_option("--explainer", o.explainers,
                             "mode[:r=..,lambda=..,alpha=..], repeatable");

  std::string rerun_manifest;
  std::string rerun_out;
  auto* rerun_cmd = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
  rerun_cmd->add_option("manifest", rerun_manifest, "Manifest JSON")->required();
  rerun_cmd->add_option("--out", rerun_out, "Write to this file instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*explain_cmd) return cmd_explain(o, args, out);
    if (*consistency_cmd) return cmd_consistency(o, args, out);
    if (*robustness_cmd) return cmd_robustness(o, args, out);
    if (*rerun_cmd) return cmd_rerun(rerun_manifest, rerun_out, out, err);
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
  return kExitConfig;
}

}  // namespace baylime::cli
