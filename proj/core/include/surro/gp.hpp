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
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "surro/kernels.hpp"
#include "surro/lbfgs.hpp"

namespace surro {

struct CholeskyResult {
  Eigen::MatrixXd L;  // lower triangular
  double jitter = 0.0;
  /// Every diagonal addition tried, in order, ending with the accepted one.
  std::vector<double> attempts;
};

/// Factorises K + sigma_n2 * I. If that fails, retries with an extra
/// diagonal jitter starting at 1e-10 * trace(K) / n and growing tenfold up to
/// 1e-2 * trace(K) / n. Throws NumericalError if every attempt fails and
/// InvalidArgument for non-finite or asymmetric input.
CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& K, double sigma_n2);

struct MarginalLikelihood {
  double value = 0.0;
  /// d value / d theta in Hyperparameters::pack() order.
  Eigen::VectorXd gradient;
  double jitter = 0.0;
};

/// log p(y | X, theta) = -1/2 y^T A^-1 y - 1/2 log|A| - n/2 log(2 pi) with
/// A = K + sigma_n^2 I (+ jitter), evaluated through the Cholesky factor.
MarginalLikelihood log_marginal_likelihood(const KernelSpec& spec, const Hyperparameters& hp,
                                           const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct Posterior {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
  /// Variances that came out negative through cancellation and were set to 0.
  std::size_t clamped = 0;

  Eigen::VectorXd stddev() const { return variance.cwiseSqrt(); }
  Eigen::VectorXd lower95() const { return mean - 1.96 * stddev(); }
  Eigen::VectorXd upper95() const { return mean + 1.96 * stddev(); }
};

/// Zero-mean GP conditioned on (X, y) with fixed hyperparameters. Inputs and
/// targets are expected in standardized units. Immutable once built; safe
/// for concurrent predict calls.
class FittedGP {
 public:
  /// Factorises K + (sigma_n^2 + jitter) I exactly as given and checks the
  /// factor and solve residuals. Throws NumericalError if either check fails.
  FittedGP(KernelSpec spec, Hyperparameters hp, Eigen::MatrixXd X, Eigen::VectorXd y, double jitter);

  /// Posterior mean and latent variance at each row of Xs; with
  /// include_noise the noise variance sigma_n^2 is added.
  Posterior predict(const Eigen::MatrixXd& Xs, bool include_noise = false) const;
  /// Mean only. Each entry depends only on its own row of Xs, so results are
  /// identical however the rows are batched.
  Eigen::VectorXd predict_mean(const Eigen::MatrixXd& Xs) const;

  const KernelSpec& spec() const { return spec_; }
  const Hyperparameters& hyperparameters() const { return hp_; }
  const Eigen::MatrixXd& X() const { return X_; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::MatrixXd& cholesky() const { return L_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double jitter() const { return jitter_; }
  double log_likelihood() const { return log_likelihood_; }

 private:
  KernelSpec spec_;
  Hyperparameters hp_;
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  Eigen::MatrixXd L_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
  double log_likelihood_ = 0.0;
};

/// Box for hyperparameter search, in natural (not log) units.
struct HyperparameterBounds {
  double lengthscale_lo = 1e-3, lengthscale_hi = 1e4;
  double sigma_f_lo = 1e-3, sigma_f_hi = 1e3;
  double sigma_n_lo = 1e-6, sigma_n_hi = 10.0;
};

/// Range from which random restarts are drawn, log-uniformly.
struct RestartRanges {
  double lengthscale_lo = 1e-2, lengthscale_hi = 1e2;
  double sigma_f_lo = 1e-1, sigma_f_hi = 1e1;
  double sigma_n_lo = 1e-4, sigma_n_hi = 1.0;
};

struct FitOptions {
  int restarts = 10;
  std::uint64_t seed = 0;
  LbfgsOptions optimizer{200, 1e-6, 8};
  HyperparameterBounds bounds;
  RestartRanges ranges;
};

struct RestartOutcome {
  Eigen::VectorXd start;
  Eigen::VectorXd theta;
  double log_likelihood = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool failed = false;
  std::string error;
};

struct FitReport {
  std::vector<RestartOutcome> restarts;
  std::size_t best = 0;
};

/// Maximises the log marginal likelihood from restarts + 1 starting points:
/// the canonical start (l = sigma_f = 1, sigma_n = 0.1) followed by random
/// log-uniform draws. The best start wins; ties go to the lower index.
/// Restarts may run in parallel without changing the result.
FittedGP fit(const KernelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
             const FitOptions& options = {}, FitReport* report = nullptr);

}  // namespace surro
