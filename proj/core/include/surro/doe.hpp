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
#include <string>
#include <vector>

#include <Eigen/Core>

namespace surro {

struct ContinuousRange {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

/// Design space for thermoformed enclosures: an even-integer layer count,
/// five continuous process variables, and a categorical choice among
/// fiber-orientation stacks.
struct DesignSpace {
  std::vector<int> layer_counts;
  std::array<ContinuousRange, 5> continuous;
  std::vector<std::array<double, 4>> fiber_configs;

  /// Layers 4-16 (even), t_l 0.1-0.6 mm, v_p 4-6.5 m/s, T_i 200-400 C,
  /// T_pd 20-220 C, T_air 10-30 C, stacks (0, 45, -45, 90) and
  /// (30, -30, 60, -60).
  static DesignSpace standard();
  void validate() const;
};

/// Latin hypercube design with n rows in kInputColumns order. Every
/// continuous column has exactly one sample in each of its n equal-width
/// strata, placed uniformly within the stratum. The layer count and fiber
/// stack use their own stratified column mapped onto the discrete choices by
/// proportional allocation. Deterministic in seed.
Eigen::MatrixXd lhs_sample(const DesignSpace& space, int n, std::uint64_t seed);

/// Writes a DOE matrix with the design-input CSV header.
void write_doe_csv(const std::filesystem::path& path, const Eigen::MatrixXd& doe,
                   const std::vector<std::string>& comments = {});

/// Side length (mm) of the square corner cutouts that relieve a sheet of
/// area sheet_area draped over a punch of outer surface punch_area (both
/// mm^2): c = sqrt((punch_area - sheet_area) / 4).
double cutout_length(double punch_area, double sheet_area);

}  // namespace surro
