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
#include <limits>

namespace surro {

/// Single-pass central moments up to fourth order. Two accumulators can be
/// merged exactly (Pebay's pairwise update), so partial sums from separate
/// chunks combine into the statistics of the concatenated stream.
class RunningMoments {
 public:
  void push(double x);
  void merge(const RunningMoments& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Sample variance (divides by n - 1); 0 for fewer than two values.
  double variance() const;
  double stddev() const;
  /// g1 = sqrt(n) M3 / M2^(3/2); 0 when the spread is zero.
  double skewness() const;
  /// n M4 / M2^2 - 3; 0 when the spread is zero.
  double excess_kurtosis() const;
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

}  // namespace surro
