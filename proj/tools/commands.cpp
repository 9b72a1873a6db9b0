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

#include "commands.hpp"

#include <chrono>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "surro/crash_metrics.hpp"
#include "surro/csv.hpp"
#include "surro/dataset.hpp"
#include "surro/doe.hpp"
#include "surro/error.hpp"
#include "surro/evaluation.hpp"
#include "surro/mc.hpp"
#include "surro/random.hpp"

namespace surro::cli {
namespace {

using json = nlohmann::json;

// Independent random streams per pipeline stage.
enum Stage : std::uint64_t { kDoeStage = 1, kSplitStage = 2, kFitStage = 3, kCvStage = 4, kPropagateStage = 5 };

std::uint64_t stage_seed(const GlobalOptions& global, Stage stage) { return derive_seed(global.seed, stage); }

// Leading comment lines for every artifact. Thread count and output
// directory are left out since they never change results.
std::vector<std::string> echo(std::string_view command, const GlobalOptions& global, json config) {
  config["seed"] = global.seed;
  return {fmt::format("surro {} {}", SURRO_VERSION, command), "config " + config.dump()};
}

json model_config(const ModelOptions& m) {
  json j = {{"kind", m.kind}, {"kernel", m.kernel}, {"ard", m.ard}, {"restarts", m.restarts},
            {"grid_folds", m.grid_folds}};
  if (m.lambda) j["lambda"] = *m.lambda;
  if (!m.lambda_grid.empty()) j["lambda_grid"] = m.lambda_grid;
  return j;
}

Dataset load_clean(const std::filesystem::path& path, const CleaningOptions& cleaning) {
  auto loaded = load_dataset(path, Schema::crash());
  if (cleaning.outlier_column.empty()) return std::move(loaded.data);
  auto filtered = filter_outliers(loaded.data, cleaning.outlier_column, cleaning.outlier_quantile);
  spdlog::info("removed {} rows above the {} quantile of {}", filtered.removed, cleaning.outlier_quantile,
               cleaning.outlier_column);
  return std::move(filtered.data);
}

void add_cleaning(json& config, const CleaningOptions& cleaning) {
  if (cleaning.outlier_column.empty()) return;
  config["outlier_column"] = cleaning.outlier_column;
  config["outlier_quantile"] = cleaning.outlier_quantile;
}

std::string path_string(const std::filesystem::path& p) { return p.generic_string(); }

}  // namespace

SurrogateSpec ModelOptions::to_spec() const {
  SurrogateSpec spec;
  try {
    spec.kind = parse_model_kind(kind);
    spec.family = parse_kernel_family(kernel);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  spec.ard = ard;
  if (restarts < 0) throw UsageError("--restarts must be nonnegative");
  spec.restarts = restarts;
  if (lambda && !(*lambda >= 0)) throw UsageError("--lambda must be nonnegative");
  spec.lambda = lambda;
  if (!lambda_grid.empty()) spec.lambda_grid = lambda_grid;
  if (grid_folds < 2) throw UsageError("--grid-folds must be at least 2");
  spec.grid_folds = grid_folds;
  return spec;
}

void cmd_doe(const GlobalOptions& global, const DoeOptions& options) {
  if (options.n < 1) throw UsageError("--n must be at least 1");
  const auto doe = lhs_sample(DesignSpace::standard(), options.n, stage_seed(global, kDoeStage));
  const auto path = global.out / "doe.csv";
  write_doe_csv(path, doe, echo("doe", global, {{"n", options.n}, {"space", "standard"}}));
  fmt::print("wrote {} design points to {}\n", options.n, path.string());
}

void cmd_extract_metrics(const GlobalOptions& global, const ExtractOptions& options) {
  const auto runs = extract_batch(options.manifest);
  const auto path = global.out / "metrics.csv";
  write_metrics_csv(path, runs, echo("extract-metrics", global, {{"manifest", path_string(options.manifest)}}));
  fmt::print("{:<16} {:>12} {:>8} {:>10} {:>10}\n", "run", "F_p", "CLE", "SEA", "dY_node");
  for (const auto& r : runs) {
    fmt::print("{:<16} {:>12.4f} {:>8.4f} {:>10.4f} {:>10.4f}\n", r.run_id, r.metrics.F_p, r.metrics.CLE,
               r.metrics.SEA, r.metrics.dY_node);
  }
  fmt::print("wrote {} rows to {}\n", runs.size(), path.string());
}

void cmd_train(const GlobalOptions& global, const TrainOptions& options) {
  if (!(options.test_fraction > 0 && options.test_fraction < 1)) {
    throw UsageError("--test-fraction must lie in (0, 1)");
  }
  const SurrogateSpec spec = options.model.to_spec();
  const Dataset data = load_clean(options.data, options.cleaning);
  const Split split = train_test_split(data, options.test_fraction, stage_seed(global, kSplitStage));
  const auto model = TrainedModel::train(spec, split.train, stage_seed(global, kFitStage));
  const auto report = evaluate_holdout(model, split.train, split.test);

  json config = {{"data", path_string(options.data)}, {"model", model_config(options.model)},
                 {"test_fraction", options.test_fraction}};
  add_cleaning(config, options.cleaning);
  const auto comments = echo("train", global, config);
  config["seed"] = global.seed;
  model.save(global.out / "model.json", config);
  write_report_csv(global.out / "report.csv", report, comments);

  fmt::print("{} model, {} training / {} test rows\n", to_string(spec.kind), split.train.rows(), split.test.rows());
  for (std::size_t o = 0; o < model.grid_searches().size(); ++o) {
    fmt::print("  {}: lambda = {} (grid search)\n", model.output_names()[o], model.grid_searches()[o].best_lambda);
  }
  fmt::print("{:<10} {:>9} {:>9} {:>12} {:>12} {:>8} {:>8}\n", "output", "R2 train", "R2 test", "MAE", "RMSE",
             "MAPE%", "max%");
  for (const auto& r : report) {
    fmt::print("{:<10} {:>9.4f} {:>9.4f} {:>12.5g} {:>12.5g} {:>8.2f} {:>8.2f}\n", r.output, r.r2_train, r.r2_test,
               r.mae, r.rmse, r.mape, r.max_ape);
  }
  fmt::print("wrote {} and {}\n", (global.out / "model.json").string(), (global.out / "report.csv").string());
}

void cmd_predict(const GlobalOptions& global, const PredictOptions& options) {
  const auto model = TrainedModel::load(options.model);
  const auto points = load_dataset(options.points, Schema::design_only(), 1);

  const auto start = std::chrono::steady_clock::now();
  const auto prediction = model.predict(points.data.inputs, options.include_noise);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  if (prediction.clamped > 0) spdlog::warn("{} negative posterior variances clamped to zero", prediction.clamped);

  const auto path = global.out / "predictions.csv";
  auto out = csv::open_output(path);
  const json config = {{"model", path_string(options.model)},
                       {"points", path_string(options.points)},
                       {"include_noise", options.include_noise}};
  for (const auto& c : echo("predict", global, config)) out << "# " << c << '\n';
  std::vector<std::string> header = points.data.input_names;
  for (const auto& name : model.output_names()) {
    for (const char* suffix : {"_mean", "_std", "_lo95", "_hi95"}) header.push_back(name + suffix);
  }
  out << csv::join(header) << '\n';
  const auto& X = points.data.inputs;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    std::vector<std::string> fields;
    for (Eigen::Index c = 0; c < X.cols(); ++c) fields.push_back(csv::format_double(X(i, c)));
    for (Eigen::Index o = 0; o < prediction.mean.cols(); ++o) {
      const double mean = prediction.mean(i, o);
      const double sd = prediction.stddev(i, o);
      for (double v : {mean, sd, mean - 1.96 * sd, mean + 1.96 * sd}) fields.push_back(csv::format_double(v));
    }
    out << csv::join(fields) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
  fmt::print("predicted {} points in {:.3f} ms\n", X.rows(), elapsed.count());
  fmt::print("wrote {}\n", path.string());
}

void cmd_cv(const GlobalOptions& global, const CvOptions& options) {
  if (options.k < 2) throw UsageError("--k must be at least 2");
  if (options.repeats < 1) throw UsageError("--repeats must be at least 1");
  const SurrogateSpec spec = options.model.to_spec();
  const Dataset data = load_clean(options.data, options.cleaning);
  const auto result = repeated_kfold(spec, data, options.k, options.repeats, stage_seed(global, kCvStage));

  json config = {{"data", path_string(options.data)},
                 {"model", model_config(options.model)},
                 {"k", options.k},
                 {"repeats", options.repeats}};
  add_cleaning(config, options.cleaning);
  write_cv_csv(global.out / "cv_repeats.csv", global.out / "cv_summary.csv", result, echo("cv", global, config));

  fmt::print("{}-fold cross-validation x {} repeats, {} fits{}\n", result.k, result.repeats, result.fits,
             result.pooled ? " (pooled leave-one-out scores)" : "");
  fmt::print("{:<10} {:>18} {:>22} {:>22} {:>16}\n", "output", "R2", "MAE", "RMSE", "MAPE%");
  for (std::size_t o = 0; o < result.outputs.size(); ++o) {
    const auto& m = result.mean[o];
    const auto& s = result.stddev[o];
    fmt::print("{:<10} {:>8.4f} +- {:<6.4f} {:>10.4g} +- {:<8.3g} {:>10.4g} +- {:<8.3g} {:>6.2f} +- {:<6.2f}\n",
               result.outputs[o], m.r2, s.r2, m.mae, s.mae, m.rmse, s.rmse, m.mape, s.mape);
  }
  fmt::print("wrote {} and {}\n", (global.out / "cv_repeats.csv").string(),
             (global.out / "cv_summary.csv").string());
}

void cmd_propagate(const GlobalOptions& global, const PropagateOptions& options) {
  if (options.samples < 1) throw UsageError("--samples must be at least 1");
  if (options.batch_size < 1) throw UsageError("--batch-size must be at least 1");
  DistributionSpec spec;
  json config = {{"model", path_string(options.model)},
                 {"samples", options.samples},
                 {"batch_size", options.batch_size}};
  if (!options.spec.empty()) {
    if (options.scenario != 0) throw UsageError("give either --spec or --case, not both");
    spec = DistributionSpec::load(options.spec);
    config["spec"] = path_string(options.spec);
  } else {
    if (options.scenario < 1 || options.scenario > 3) throw UsageError("--case must be 1, 2 or 3 without --spec");
    if (options.fiber_stack != "A" && options.fiber_stack != "B") throw UsageError("--stack must be A or B");
    spec = DistributionSpec::scenario(options.scenario, options.fiber_stack[0]);
    config["case"] = options.scenario;
    config["stack"] = options.fiber_stack;
  }
  config["laws"] = spec.to_json();

  const auto model = TrainedModel::load(options.model);
  PropagationOptions po;
  po.samples = options.samples;
  po.batch_size = options.batch_size;
  po.seed = stage_seed(global, kPropagateStage);
  const auto result = propagate(model, spec, po);

  const auto comments = echo("propagate", global, config);
  write_propagation_summary(global.out / "mc_summary.csv", result, comments);
  fmt::print("{:<10} {:>14} {:>14} {:>10} {:>10} {:>10}\n", "output", "mean", "std", "std % mean", "skew",
             "ex.kurt");
  for (const auto& d : result.outputs) {
    write_histogram(global.out / ("mc_hist_" + d.output + ".csv"), d.histogram, comments);
    fmt::print("{:<10} {:>14.6g} {:>14.6g} {:>10.5f} {:>10.4f} {:>10.4f}\n", d.output, d.mean, d.stddev,
               d.stddev_pct, d.moments.skewness(), d.moments.excess_kurtosis());
  }
  fmt::print("propagated {} samples; wrote {}\n", result.samples, (global.out / "mc_summary.csv").string());
}

}  // namespace surro::cli
