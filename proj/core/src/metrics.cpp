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

#include "surro/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "surro/error.hpp"

namespace surro {

double percent_error(double truth, double predicted) {
  if (truth == 0.0) throw InvalidArgument("percent error undefined for a zero true value");
  return 100.0 * std::abs(predicted - truth) / std::abs(truth);
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

double r_squared(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) throw InvalidArgument("r_squared: length mismatch");
  if (y_true.size() < 2) throw InvalidArgument("r_squared needs at least 2 points");
  double mean = 0.0;
  for (double v : y_true) mean += v;
  mean /= static_cast<double>(y_true.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
    ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
  }
  if (!(ss_tot > 0)) throw InvalidArgument("r_squared undefined for zero-variance targets");
  return 1.0 - ss_res / ss_tot;
}

Metrics compute_metrics(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) throw InvalidArgument("compute_metrics: length mismatch");
  if (y_true.size() < 2) throw InvalidArgument("compute_metrics needs at least 2 points");
  Metrics m;
  m.r2 = r_squared(y_true, y_pred);
  double abs_sum = 0.0, sq_sum = 0.0, pe_sum = 0.0;
  std::size_t pe_count = 0;
  m.percent_errors.resize(y_true.size());
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_pred[i] - y_true[i];
    abs_sum += std::abs(e);
    sq_sum += e * e;
    if (y_true[i] == 0.0) {
      m.percent_errors[i] = std::numeric_limits<double>::quiet_NaN();
      ++m.mape_excluded;
      continue;
    }
    m.percent_errors[i] = percent_error(y_true[i], y_pred[i]);
    pe_sum += m.percent_errors[i];
    m.max_ape = std::max(m.max_ape, m.percent_errors[i]);
    ++pe_count;
  }
  const auto n = static_cast<double>(y_true.size());
  m.mae = abs_sum / n;
  m.rmse = std::sqrt(sq_sum / n);
  m.mape = pe_count > 0 ? pe_sum / static_cast<double>(pe_count) : std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace surro
