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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace surro {

inline constexpr std::array<std::string_view, 10> kInputColumns = {
    "n_ls", "t_l", "v_p", "T_i", "T_pd", "T_air", "phi1", "phi2", "phi3", "phi4"};
inline constexpr std::array<std::string_view, 4> kOutputColumns = {"F_p", "CLE", "SEA", "dY_node"};

/// One thermoforming/crash design: layer count, layer thickness (mm), punch
/// velocity (m/s), initial layer temperature, punch/die temperature and air
/// temperature (deg C), and four fiber orientations (deg).
struct DesignPoint {
  double n_ls = 0;
  double t_l = 0;
  double v_p = 0;
  double T_i = 0;
  double T_pd = 0;
  double T_air = 0;
  std::array<double, 4> phi_fib{};

  /// Flattens in kInputColumns order.
  std::array<double, 10> flatten() const;
  static DesignPoint unflatten(std::span<const double> values);
};

/// Crash responses: peak load (kN), crush load efficiency, specific energy
/// absorption (J/kg), and intrusion (mm).
struct CrashResponse {
  double F_p = 0;
  double CLE = 0;
  double SEA = 0;
  double dY_node = 0;

  std::array<double, 4> flatten() const { return {F_p, CLE, SEA, dY_node}; }
  /// Throws DataError unless F_p > 0, 0 <= CLE <= 1, SEA >= 0.
  void validate() const;
};

struct Schema {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  /// The ten design inputs followed by the four crash outputs.
  static Schema crash();
  /// Design inputs only (DOE files, new points for prediction).
  static Schema design_only();
};

/// Tabular inputs/outputs with equal row counts. Immutable by convention
/// after construction.
struct Dataset {
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd outputs;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;

  Eigen::Index rows() const { return inputs.rows(); }
  Dataset select_rows(std::span<const Eigen::Index> indices) const;
  /// Column by name from either inputs or outputs. Throws InvalidArgument.
  Eigen::VectorXd column(std::string_view name) const;
};

struct LoadResult {
  Dataset data;
  std::size_t dropped = 0;
};

/// Reads a CSV whose header equals schema.inputs followed by schema.outputs.
/// Lines starting with '#' and blank lines are ignored. Rows with a wrong
/// field count, unparseable or non-finite values are dropped and counted.
LoadResult load_dataset(const std::filesystem::path& path, const Schema& schema,
                        std::size_t min_rows = 2);

/// Writes the dataset as CSV. Each entry of comments becomes a leading
/// "# ..." line.
void write_dataset(const std::filesystem::path& path, const Dataset& data,
                   const std::vector<std::string>& comments = {});

/// Linear-interpolated empirical quantile (the "type 7" definition).
double empirical_quantile(std::span<const double> values, double q);

struct FilterResult {
  Dataset data;
  std::size_t removed = 0;
};

/// Removes rows whose value in column exceeds its empirical upper_quantile.
FilterResult filter_outliers(const Dataset& data, std::string_view column, double upper_quantile);

struct Split {
  Dataset train;
  Dataset test;
  std::vector<Eigen::Index> train_indices;
  std::vector<Eigen::Index> test_indices;
};

/// Random disjoint partition with ceil(n * (1 - test_fraction)) training
/// rows. Deterministic in seed.
Split train_test_split(const Dataset& data, double test_fraction, std::uint64_t seed);

/// Shuffles [0, n) and deals it into k folds whose sizes differ by at most
/// one. Folds are returned in ascending index order.
std::vector<std::vector<Eigen::Index>> make_folds(Eigen::Index n, int k, std::uint64_t seed);

enum class ZeroVariance {
  kError,      // zero-variance columns are rejected
  kUnitScale,  // centred only; used for constant regression targets
};

/// Per-column Z-scoring with sample standard deviation (ddof = 1).
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(Eigen::RowVectorXd mean, Eigen::RowVectorXd scale);

  static Standardizer fit(const Eigen::MatrixXd& m, std::span<const std::string> names = {},
                          ZeroVariance policy = ZeroVariance::kError);

  Eigen::MatrixXd transform(const Eigen::MatrixXd& m) const;
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& z) const;

  const Eigen::RowVectorXd& mean() const { return mean_; }
  const Eigen::RowVectorXd& scale() const { return scale_; }
  Eigen::Index dim() const { return mean_.size(); }

 private:
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd scale_;
};

}  // namespace surro
