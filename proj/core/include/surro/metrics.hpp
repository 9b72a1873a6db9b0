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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace surro {

/// Regression accuracy of one output on one evaluation set.
struct Metrics {
  double r2 = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  /// Mean of the per-point percent errors, in percent.
  double mape = 0.0;
  double max_ape = 0.0;
  /// Points with a zero true value, left out of the percent errors.
  std::size_t mape_excluded = 0;
  /// 100 * |pred - true| / |true| per point (NaN where excluded).
  std::vector<double> percent_errors;
};

/// 100 * |pred - true| / |true|. Throws InvalidArgument when true is zero.
double percent_error(double truth, double predicted);

/// Rounds to two decimals, the precision used in printed reports.
double round2(double value);

/// 1 - SS_res / SS_tot with SS_tot taken about the mean of y_true. Throws
/// InvalidArgument when y_true has zero variance.
double r_squared(std::span<const double> y_true, std::span<const double> y_pred);

/// R^2, MAE, RMSE and percent errors. Requires equal lengths >= 2.
Metrics compute_metrics(std::span<const double> y_true, std::span<const double> y_pred);

}  // namespace surro
