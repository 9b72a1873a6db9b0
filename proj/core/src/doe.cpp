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

#include "surro/doe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "surro/dataset.hpp"
#include "surro/error.hpp"
#include "surro/random.hpp"

namespace surro {
namespace {

// One uniform per stratum, each stratum index used once. The offset keeps
// samples a hair inside their stratum so that recomputing the stratum from
// the scaled value cannot land on a neighbour through rounding.
std::vector<double> stratified_column(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(std::span(perm), rng);
  std::vector<double> u(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const double within = 1e-9 + (1.0 - 2e-9) * rng.uniform();
    u[i] = (perm[i] + within) / n;
  }
  return u;
}

}  // namespace

DesignSpace DesignSpace::standard() {
  DesignSpace s;
  s.layer_counts = {4, 6, 8, 10, 12, 14, 16};
  s.continuous = {ContinuousRange{"t_l", 0.1, 0.6}, ContinuousRange{"v_p", 4.0, 6.5},
                  ContinuousRange{"T_i", 200.0, 400.0}, ContinuousRange{"T_pd", 20.0, 220.0},
                  ContinuousRange{"T_air", 10.0, 30.0}};
  s.fiber_configs = {{0.0, 45.0, -45.0, 90.0}, {30.0, -30.0, 60.0, -60.0}};
  return s;
}

void DesignSpace::validate() const {
  if (layer_counts.empty()) throw InvalidArgument("layer-count set is empty");
  if (fiber_configs.empty()) throw InvalidArgument("fiber-orientation set is empty");
  for (const auto& r : continuous) {
    if (!(r.lo < r.hi)) throw InvalidArgument("range for " + r.name + " must satisfy lo < hi");
  }
}

Eigen::MatrixXd lhs_sample(const DesignSpace& space, int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("LHS needs n >= 1");
  space.validate();
  Rng rng(seed);
  Eigen::MatrixXd doe(n, 10);

  const auto layers = stratified_column(n, rng);
  const auto n_layers = static_cast<double>(space.layer_counts.size());
  for (int i = 0; i < n; ++i) {
    const auto k = std::min(static_cast<std::size_t>(layers[i] * n_layers), space.layer_counts.size() - 1);
    doe(i, 0) = space.layer_counts[k];
  }
  for (int c = 0; c < 5; ++c) {
    const auto u = stratified_column(n, rng);
    const auto& r = space.continuous[static_cast<std::size_t>(c)];
    for (int i = 0; i < n; ++i) doe(i, c + 1) = r.lo + u[i] * (r.hi - r.lo);
  }
  const auto fibers = stratified_column(n, rng);
  const auto n_fibers = static_cast<double>(space.fiber_configs.size());
  for (int i = 0; i < n; ++i) {
    const auto k = std::min(static_cast<std::size_t>(fibers[i] * n_fibers), space.fiber_configs.size() - 1);
    for (int a = 0; a < 4; ++a) doe(i, 6 + a) = space.fiber_configs[k][static_cast<std::size_t>(a)];
  }
  return doe;
}

void write_doe_csv(const std::filesystem::path& path, const Eigen::MatrixXd& doe,
                   const std::vector<std::string>& comments) {
  Dataset data;
  data.input_names.assign(kInputColumns.begin(), kInputColumns.end());
  data.inputs = doe;
  data.outputs.resize(doe.rows(), 0);
  write_dataset(path, data, comments);
}

double cutout_length(double punch_area, double sheet_area) {
  if (!std::isfinite(punch_area) || !std::isfinite(sheet_area)) throw InvalidArgument("areas must be finite");
  if (punch_area < sheet_area) {
    throw InvalidArgument("punch surface area is smaller than the sheet area (negative radicand)");
  }
  return std::sqrt((punch_area - sheet_area) / 4.0);
}

}  // namespace surro
