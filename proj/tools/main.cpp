// Copyright 2026 The Surro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// surro: design-of-experiments, surrogate training and uncertainty
// propagation for thermoformed crash structures.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "surro/error.hpp"
#include "surro/parallel.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("surro");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("SURRO_LOG")) {
    const auto parsed = spdlog::level::from_str(level);
    // from_str maps unknown names to "off"; keep the default instead.
    if (parsed != spdlog::level::off || std::string(level) == "off") spdlog::set_level(parsed);
  }
}

void add_model_options(CLI::App* cmd, surro::cli::ModelOptions& m) {
  cmd->add_option("--model", m.kind, "Model kind: gpr, ols, ridge or lasso")->capture_default_str();
  cmd->add_option("--kernel", m.kernel, "GP kernel: rbf, exp, matern32 or matern52")->capture_default_str();
  cmd->add_flag("--ard,!--no-ard", m.ard, "One length-scale per input (default on)");
  cmd->add_option("--restarts", m.restarts, "Random GP optimizer restarts besides the canonical start")
      ->capture_default_str();
  cmd->add_option("--lambda", m.lambda, "Fixed ridge/lasso penalty; grid search when omitted");
  cmd->add_option("--lambda-grid", m.lambda_grid, "Comma-separated penalty grid")->delimiter(',');
  cmd->add_option("--grid-folds", m.grid_folds, "Folds for the penalty grid search")->capture_default_str();
}

void add_cleaning_options(CLI::App* cmd, surro::cli::CleaningOptions& c) {
  cmd->add_option("--outlier-column", c.outlier_column, "Drop rows above a quantile of this column");
  cmd->add_option("--outlier-quantile", c.outlier_quantile, "Quantile used with --outlier-column")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  namespace cli = surro::cli;

  CLI::App app{"Surrogate modelling for thermoformed crash structures", "surro"};
  app.set_version_flag("--version", SURRO_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  cli::GlobalOptions global;
  app.add_option("--seed", global.seed, "Master random seed")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker thread cap (0: all cores)")->capture_default_str();
  app.add_option("--out", global.out, "Output directory")->capture_default_str();

  cli::DoeOptions doe;
  auto* doe_cmd = app.add_subcommand("doe", "Latin hypercube design over the standard process ranges");
  doe_cmd->add_option("--n", doe.n, "Number of design points")->capture_default_str();

  cli::ExtractOptions extract;
  auto* extract_cmd = app.add_subcommand("extract-metrics", "Crash metrics from simulation time histories");
  extract_cmd->add_option("--manifest", extract.manifest, "JSON manifest of runs")
      ->required()
      ->check(CLI::ExistingFile);

  cli::TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Fit per-output surrogates and report holdout metrics");
  train_cmd->add_option("--data", train.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  add_model_options(train_cmd, train.model);
  add_cleaning_options(train_cmd, train.cleaning);
  train_cmd->add_option("--test-fraction", train.test_fraction, "Holdout fraction")->capture_default_str();

  cli::PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Posterior mean, std and 95% intervals at new points");
  predict_cmd->add_option("--model", predict.model, "Model JSON from train")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--points", predict.points, "CSV of design inputs")->required()->check(CLI::ExistingFile);
  predict_cmd->add_flag("--include-noise", predict.include_noise, "Add the fitted noise variance");

  cli::CvOptions cv;
  auto* cv_cmd = app.add_subcommand("cv", "Repeated k-fold cross-validation");
  cv_cmd->add_option("--data", cv.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  add_model_options(cv_cmd, cv.model);
  add_cleaning_options(cv_cmd, cv.cleaning);
  cv_cmd->add_option("--k", cv.k, "Folds")->capture_default_str();
  cv_cmd->add_option("--repeats", cv.repeats, "Repeats")->capture_default_str();

  cli::PropagateOptions prop;
  auto* prop_cmd = app.add_subcommand("propagate", "Monte Carlo propagation of input scatter");
  prop_cmd->add_option("--model", prop.model, "Model JSON from train")->required()->check(CLI::ExistingFile);
  prop_cmd->add_option("--spec", prop.spec, "Input distribution JSON")->check(CLI::ExistingFile);
  prop_cmd->add_option("--case", prop.scenario, "Built-in input scenario 1, 2 or 3");
  prop_cmd->add_option("--stack", prop.fiber_stack, "Fiber stack for --case: A or B")->capture_default_str();
  prop_cmd->add_option("--samples", prop.samples, "Monte Carlo samples")->capture_default_str();
  prop_cmd->add_option("--batch-size", prop.batch_size, "Samples per streamed batch")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (global.threads > 0) surro::set_max_threads(global.threads);
    std::filesystem::create_directories(global.out);
    if (*doe_cmd) cli::cmd_doe(global, doe);
    if (*extract_cmd) cli::cmd_extract_metrics(global, extract);
    if (*train_cmd) cli::cmd_train(global, train);
    if (*predict_cmd) cli::cmd_predict(global, predict);
    if (*cv_cmd) cli::cmd_cv(global, cv);
    if (*prop_cmd) cli::cmd_propagate(global, prop);
  } catch (const cli::UsageError& e) {
    std::cerr << "surro: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "surro: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
