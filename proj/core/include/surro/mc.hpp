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

#include <array>
#include <cstdint>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "surro/moments.hpp"
#include "surro/surrogate.hpp"

namespace surro {

/// Probability law of one input variable.
struct InputLaw {
  enum class Kind { kConstant, kNormal };
  Kind kind = Kind::kConstant;
  double mu = 0.0;
  double sigma = 0.0;

  static InputLaw constant(double value) { return {Kind::kConstant, value, 0.0}; }
  static InputLaw normal(double mu, double sigma) { return {Kind::kNormal, mu, sigma}; }
  /// sigma given as a percentage of |mu|.
  static InputLaw normal_pct(double mu, double sigma_pct) { return normal(mu, std::abs(mu) * sigma_pct / 100.0); }
};

inline constexpr double kDefaultFiberSigmaDeg = 2.0;

/// One law per design input, in kInputColumns order.
struct DistributionSpec {
  std::array<InputLaw, 10> laws;

  /// Parses
  ///   {"n_ls": {"constant": 4},
  ///    "t_l": {"normal": {"mu": 0.1, "sigma_pct": 1.0}},
  ///    ...,
  ///    "phi_fib": {"normal": {"mu": [0, 45, -45, 90], "sigma": 2}}}
  /// A normal law takes "sigma" or "sigma_pct". Fiber angles may instead be
  /// given one by one as phi1..phi4; phi_fib's sigma defaults to 2 degrees.
  static DistributionSpec from_json(const nlohmann::json& j);
  static DistributionSpec load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// Monte Carlo input scenarios: case_number 1-3 (low, mid, high end of the
  /// design ranges) with fiber stack 'A' (0, 45, -45, 90) or 'B'
  /// (30, -30, 60, -60).
  static DistributionSpec scenario(int case_number, char config);

  /// Throws InvalidArgument for a non-positive or non-finite sigma.
  void validate() const;
};

/// Rows [first_row, first_row + count) of the sample matrix. Each entry is
/// a pure function of (seed, row, column), so any batching of rows yields
/// the same draws.
Eigen::MatrixXd sample_inputs(const DistributionSpec& spec, std::uint64_t first_row, std::size_t count,
                              std::uint64_t seed);
inline Eigen::MatrixXd sample_inputs(const DistributionSpec& spec, std::size_t count, std::uint64_t seed) {
  return sample_inputs(spec, 0, count, seed);
}

struct Histogram {
  std::vector<double> edges;  // size = counts.size() + 1
  std::vector<std::uint64_t> counts;
};

/// Freedman-Diaconis bin width 2 IQR / n^(1/3).
double freedman_diaconis_width(double iqr, std::uint64_t n);

struct OutputDistribution {
  std::string output;
  RunningMoments moments;
  /// Normal fit by the method of moments.
  double mean = 0.0;
  double stddev = 0.0;
  double stddev_pct = 0.0;  // 100 * stddev / |mean|
  Histogram histogram;
};

struct PropagationOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t batch_size = 16384;
  /// Leading samples kept to estimate the interquartile range for binning.
  std::size_t pilot = 65536;
};

struct PropagationResult {
  std::size_t samples = 0;
  std::vector<OutputDistribution> outputs;
};

/// Streams sampled inputs through the model's posterior mean in batches and
/// accumulates per-output moments and a histogram. Memory is bounded by the
/// batch and pilot sizes. Results are bit-identical for every batch size
/// and thread count.
PropagationResult propagate(const TrainedModel& model, const DistributionSpec& spec,
                            const PropagationOptions& options);

/// mc_summary.csv: output,mean,std,std_pct_of_mean,skewness,excess_kurtosis,samples,min,max
void write_propagation_summary(const std::filesystem::path& path, const PropagationResult& result,
                               const std::vector<std::string>& comments = {});
/// bin_lo,bin_hi,count
void write_histogram(const std::filesystem::path& path, const Histogram& histogram,
                     const std::vector<std::string>& comments = {});

}  // namespace surro
