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
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "surro/dataset.hpp"
#include "surro/gp.hpp"
#include "surro/kernels.hpp"
#include "surro/linear.hpp"

namespace surro {

inline constexpr std::string_view kGpModelVersion = "surro-gp/1";
inline constexpr std::string_view kLinearModelVersion = "surro-linear/1";

enum class ModelKind { kGpr, kOls, kRidge, kLasso };

std::string_view to_string(ModelKind kind);
/// Accepts gpr, ols (or lr), ridge, lasso.
ModelKind parse_model_kind(std::string_view name);

/// How to build one surrogate; shared by training, holdout evaluation and
/// cross-validation.
struct SurrogateSpec {
  ModelKind kind = ModelKind::kGpr;
  KernelFamily family = KernelFamily::kMatern32;
  bool ard = true;
  int restarts = 10;
  LbfgsOptions optimizer{200, 1e-6, 8};
  /// Fixed regularisation strength; when empty, ridge and lasso pick lambda
  /// by grid search.
  std::optional<double> lambda;
  std::vector<double> lambda_grid = default_lambda_grid();
  int grid_folds = 5;

  nlohmann::json to_json() const;
};

/// Standardizer statistics plus one fitted model per output. Inputs and
/// targets are Z-scored with statistics from the training data only;
/// predictions are returned in raw units.
class TrainedModel {
 public:
  using OutputModel = std::variant<FittedGP, LinearModel>;

  struct Prediction {
    Eigen::MatrixXd mean;    // rows x outputs
    Eigen::MatrixXd stddev;  // zero for linear models
    std::size_t clamped = 0;
  };

  static TrainedModel train(const SurrogateSpec& spec, const Dataset& data, std::uint64_t seed);

  Prediction predict(const Eigen::MatrixXd& inputs, bool include_noise = false) const;
  /// Posterior mean only; each row's result is independent of the others.
  Eigen::MatrixXd predict_mean(const Eigen::MatrixXd& inputs) const;

  ModelKind kind() const { return kind_; }
  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& output_names() const { return output_names_; }
  const Standardizer& input_standardizer() const { return x_scaler_; }
  const Standardizer& output_standardizer() const { return y_scaler_; }
  const std::vector<OutputModel>& models() const { return models_; }
  /// Grid-search tables for ridge/lasso outputs trained without a fixed lambda.
  const std::vector<GridSearchResult>& grid_searches() const { return grid_; }

  /// Model file document. config is echoed verbatim under "config".
  nlohmann::json to_json(const nlohmann::json& config = nlohmann::json::object()) const;
  /// Rebuilds every GP factorisation and checks it. Throws DataError on a
  /// malformed document.
  static TrainedModel from_json(const nlohmann::json& doc);

  void save(const std::filesystem::path& path, const nlohmann::json& config = nlohmann::json::object()) const;
  static TrainedModel load(const std::filesystem::path& path);

 private:
  ModelKind kind_ = ModelKind::kGpr;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  Standardizer x_scaler_;
  Standardizer y_scaler_;
  std::vector<OutputModel> models_;
  std::vector<GridSearchResult> grid_;
};

}  // namespace surro
