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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "surro/dataset.hpp"
#include "surro/metrics.hpp"
#include "surro/surrogate.hpp"

namespace surro {

/// One row of a holdout report.
struct OutputReport {
  std::string output;
  double r2_train = 0.0;
  double r2_test = 0.0;
  double mae = 0.0;   // test set, raw units
  double rmse = 0.0;  // test set, raw units
  double mape = 0.0;
  double max_ape = 0.0;
};

using MetricReport = std::vector<OutputReport>;

MetricReport evaluate_holdout(const TrainedModel& model, const Dataset& train, const Dataset& test);

void write_report_csv(const std::filesystem::path& path, const MetricReport& report,
                      const std::vector<std::string>& comments = {});

struct CvScores {
  double r2 = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  double mape = 0.0;
};

struct CvResult {
  int k = 0;
  int repeats = 0;
  std::size_t fits = 0;  // models trained (each covers every output)
  std::vector<std::string> outputs;
  std::vector<std::size_t> fold_sizes;  // of the first repeat
  /// True when held-out folds hold a single row (leave-one-out); the
  /// per-repeat scores then come from that repeat's pooled predictions.
  bool pooled = false;
  /// per_repeat[r][o]
  std::vector<std::vector<CvScores>> per_repeat;
  /// Mean and sample standard deviation over repeats, per output.
  std::vector<CvScores> mean;
  std::vector<CvScores> stddev;
};

/// Repeated k-fold cross-validation. Each repeat reshuffles with a seed
/// derived from seed, trains on k-1 folds (standardizing on those rows
/// only) and scores the held fold in raw units; fold scores are averaged per
/// repeat. Folds run in parallel; results do not depend on scheduling.
CvResult repeated_kfold(const SurrogateSpec& spec, const Dataset& data, int k, int repeats, std::uint64_t seed);

/// Per-repeat scores (repeat,output,r2,mae,rmse,mape) to repeats_path and
/// per-output mean and std over repeats to summary_path.
void write_cv_csv(const std::filesystem::path& repeats_path, const std::filesystem::path& summary_path,
                  const CvResult& result, const std::vector<std::string>& comments = {});

}  // namespace surro
