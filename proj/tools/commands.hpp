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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surro/surrogate.hpp"

namespace surro::cli {

/// Raised for invalid flag combinations found after parsing; maps to exit
/// code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: machine parallelism
  std::filesystem::path out = ".";
};

struct ModelOptions {
  std::string kind = "gpr";
  std::string kernel = "matern32";
  bool ard = true;
  int restarts = 10;
  std::optional<double> lambda;
  std::vector<double> lambda_grid;
  int grid_folds = 5;

  SurrogateSpec to_spec() const;
};

struct CleaningOptions {
  std::string outlier_column;
  double outlier_quantile = 0.99;
};

struct DoeOptions {
  int n = 400;
};

struct ExtractOptions {
  std::filesystem::path manifest;
};

struct TrainOptions {
  std::filesystem::path data;
  ModelOptions model;
  CleaningOptions cleaning;
  double test_fraction = 0.2;
};

struct PredictOptions {
  std::filesystem::path model;
  std::filesystem::path points;
  bool include_noise = false;
};

struct CvOptions {
  std::filesystem::path data;
  ModelOptions model;
  CleaningOptions cleaning;
  int k = 5;
  int repeats = 10;
};

struct PropagateOptions {
  std::filesystem::path model;
  std::filesystem::path spec;
  int scenario = 0;  // built-in input scenario 1-3 when no spec file is given
  std::string fiber_stack = "A";
  std::size_t samples = 100000;
  std::size_t batch_size = 16384;
};

void cmd_doe(const GlobalOptions& global, const DoeOptions& options);
void cmd_extract_metrics(const GlobalOptions& global, const ExtractOptions& options);
void cmd_train(const GlobalOptions& global, const TrainOptions& options);
void cmd_predict(const GlobalOptions& global, const PredictOptions& options);
void cmd_cv(const GlobalOptions& global, const CvOptions& options);
void cmd_propagate(const GlobalOptions& global, const PropagateOptions& options);

}  // namespace surro::cli
