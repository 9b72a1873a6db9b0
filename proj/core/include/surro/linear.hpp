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
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace surro {

enum class Penalty { kNone, kL1, kL2 };

std::string_view to_string(Penalty penalty);

/// y = intercept + X * coefficients. The intercept is never penalised.
struct LinearModel {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  Penalty penalty = Penalty::kNone;
  double lambda = 0.0;
  /// Coordinate-descent sweeps used (L1 only).
  int sweeps = 0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
};

struct LassoOptions {
  double tolerance = 1e-8;  // on the largest coefficient change in a sweep
  int max_sweeps = 10000;
};

/// Objectives, with centred data and n rows:
///   kNone: (1/2n) RSS                        (normal equations, needs n > d)
///   kL2:   (1/2n) RSS + (lambda/2) |beta|_2^2 (normal equations)
///   kL1:   (1/2n) RSS + lambda |beta|_1       (cyclic coordinate descent)
/// At lambda = 0 every penalty reduces to the same normal-equation solve.
/// Throws NumericalError when the unpenalised system is singular.
LinearModel fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, Penalty penalty, double lambda,
                       const LassoOptions& options = {});

/// Largest violation of the LASSO subgradient optimality conditions.
double lasso_kkt_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LinearModel& model);

/// 11 log-spaced values from 1e-4 to 1e1.
std::vector<double> default_lambda_grid();

struct GridScore {
  double lambda = 0.0;
  double mean_r2 = 0.0;
  std::vector<double> fold_r2;
};

struct GridSearchResult {
  double best_lambda = 0.0;
  std::vector<GridScore> scores;
};

/// k-fold search for the lambda with the highest mean validation R^2; exact
/// ties go to the larger lambda.
GridSearchResult grid_search_lambda(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, Penalty penalty,
                                    const std::vector<double>& grid, int k, std::uint64_t seed);

}  // namespace surro
