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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

namespace surro {

/// Covariance families. EXP, MATERN32 and MATERN52 are the Matern kernel
/// at nu = 1/2, 3/2, 5/2; RBF is the nu -> infinity limit.
enum class KernelFamily { kRbf, kExp, kMatern32, kMatern52 };

std::string_view to_string(KernelFamily family);
/// Accepts "RBF", "EXP", "MATERN32", "MATERN52" in any letter case.
KernelFamily parse_kernel_family(std::string_view name);

struct KernelSpec {
  KernelFamily family = KernelFamily::kRbf;
  bool ard = false;
  int dim = 1;

  int num_lengthscales() const { return ard ? dim : 1; }
  /// Length-scales followed by log sigma_f and log sigma_n.
  int num_hyperparameters() const { return num_lengthscales() + 2; }

  nlohmann::json to_json() const;
  static KernelSpec from_json(const nlohmann::json& j);
  bool operator==(const KernelSpec&) const = default;
};

/// Kernel hyperparameters in log space, so every length-scale, the signal
/// amplitude and the noise standard deviation are positive by construction.
struct Hyperparameters {
  Eigen::VectorXd log_lengthscales;
  double log_sigma_f = 0.0;
  double log_sigma_n = 0.0;

  double sigma_f() const;
  double sigma_n() const;

  /// Packs as [log_lengthscales..., log_sigma_f, log_sigma_n].
  Eigen::VectorXd pack() const;
  static Hyperparameters unpack(const KernelSpec& spec, const Eigen::VectorXd& theta);
  /// All log-values zero except log sigma_n = log(noise).
  static Hyperparameters unit(const KernelSpec& spec, double noise = 0.1);

  void check(const KernelSpec& spec) const;
};

/// Row view accepted by kernel_eval; binds to rows of column-major matrices.
using ConstRowRef = Eigen::Ref<const Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

double kernel_eval(const KernelSpec& spec, const Hyperparameters& hp, ConstRowRef x, ConstRowRef x2);

/// K(i, j) = k(X.row(i), X2.row(j)).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Hyperparameters& hp, const Eigen::MatrixXd& X,
                              const Eigen::MatrixXd& X2);
/// Symmetric training covariance; each pair is evaluated once.
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Hyperparameters& hp, const Eigen::MatrixXd& X);

/// dK/d(theta_k) for every log length-scale and log sigma_f, in pack()
/// order. The noise term is not part of K and is handled by the caller.
std::vector<Eigen::MatrixXd> kernel_gradients(const KernelSpec& spec, const Hyperparameters& hp,
                                              const Eigen::MatrixXd& X);

/// Computes sum_ij W(i,j) * dK(i,j)/d(theta_k) for the same parameters as
/// kernel_gradients without materialising the gradient matrices. W must be
/// symmetric.
Eigen::VectorXd kernel_gradient_traces(const KernelSpec& spec, const Hyperparameters& hp,
                                       const Eigen::MatrixXd& X, const Eigen::MatrixXd& W);

}  // namespace surro
