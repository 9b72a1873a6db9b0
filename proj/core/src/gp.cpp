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

#include "surro/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "surro/error.hpp"
#include "surro/parallel.hpp"
#include "surro/random.hpp"

namespace surro {
namespace {

struct Factor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  std::vector<double> attempts;
};

void validate_covariance(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw InvalidArgument("covariance matrix must be square");
  if (!K.allFinite()) throw InvalidArgument("covariance matrix contains non-finite entries");
  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw InvalidArgument("covariance matrix is not symmetric");
  }
}

bool try_factor(const Eigen::MatrixXd& K, double diagonal, Eigen::LLT<Eigen::MatrixXd>& llt) {
  Eigen::MatrixXd A = K;
  A.diagonal().array() += diagonal;
  llt.compute(A);
  if (llt.info() != Eigen::Success) return false;
  return llt.matrixLLT().diagonal().allFinite();
}

Factor factor_with_jitter(const Eigen::MatrixXd& K, double sigma_n2) {
  validate_covariance(K);
  Factor f;
  f.attempts.push_back(0.0);
  if (try_factor(K, sigma_n2, f.llt)) return f;

  const auto n = static_cast<double>(K.rows());
  double base = K.trace() / n;
  if (!(base > 0)) base = 1.0;
  const double max_jitter = 1e-2 * base;
  for (double jitter = 1e-10 * base; jitter <= max_jitter * (1 + 1e-12); jitter *= 10) {
    f.attempts.push_back(jitter);
    if (try_factor(K, sigma_n2 + jitter, f.llt)) {
      f.jitter = jitter;
      spdlog::debug("cholesky succeeded with jitter {:.3g}", jitter);
      return f;
    }
  }
  std::string history;
  for (double a : f.attempts) history += fmt::format("{}{:.1e}", history.empty() ? "" : ", ", a);
  throw NumericalError("matrix not positive definite (jitter tried: " + history + ")");
}

void check_training_data(const KernelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size()) throw InvalidArgument("X and y row counts differ");
  if (X.cols() != spec.dim) throw InvalidArgument("training inputs do not match kernel dimension");
  if (!X.allFinite() || !y.allFinite()) throw InvalidArgument("training data contains non-finite values");
}

}  // namespace

CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& K, double sigma_n2) {
  Factor f = factor_with_jitter(K, sigma_n2);
  return {f.llt.matrixL(), f.jitter, std::move(f.attempts)};
}

MarginalLikelihood log_marginal_likelihood(const KernelSpec& spec, const Hyperparameters& hp,
                                           const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  check_training_data(spec, X, y);
  const Eigen::Index n = X.rows();
  const double sn2 = std::exp(2.0 * hp.log_sigma_n);
  const Eigen::MatrixXd K = kernel_matrix(spec, hp, X);
  const Factor f = factor_with_jitter(K, sn2);

  const Eigen::VectorXd alpha = f.llt.solve(y);
  const double log_det_half = f.llt.matrixLLT().diagonal().array().log().sum();

  MarginalLikelihood out;
  out.jitter = f.jitter;
  out.value = -0.5 * y.dot(alpha) - log_det_half - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);

  // d/dtheta = 1/2 tr((alpha alpha^T - A^-1) dA/dtheta).
  // A^-1 = L^-T L^-1 from the triangular inverse. Only the lower triangle
  // of W is formed; the trace routine reads nothing else.
  Eigen::MatrixXd L_inv = Eigen::MatrixXd::Identity(n, n);
  f.llt.matrixL().solveInPlace(L_inv);
  Eigen::MatrixXd W = alpha * alpha.transpose();
  W.selfadjointView<Eigen::Lower>().rankUpdate(L_inv.transpose(), -1.0);
  const Eigen::VectorXd traces = kernel_gradient_traces(spec, hp, X, W);
  const int m = spec.num_lengthscales();
  out.gradient.resize(spec.num_hyperparameters());
  out.gradient.head(m + 1) = 0.5 * traces;
  // The jitter scales with trace(K)/n = sigma_f^2.
  out.gradient[m] += f.jitter * W.trace();
  out.gradient[m + 1] = sn2 * W.trace();
  return out;
}

FittedGP::FittedGP(KernelSpec spec, Hyperparameters hp, Eigen::MatrixXd X, Eigen::VectorXd y, double jitter)
    : spec_(spec), hp_(std::move(hp)), X_(std::move(X)), y_(std::move(y)), jitter_(jitter) {
  hp_.check(spec_);
  check_training_data(spec_, X_, y_);
  if (X_.rows() < 1) throw InvalidArgument("GP needs at least one training point");
  if (!(jitter_ >= 0)) throw InvalidArgument("jitter must be nonnegative");

  Eigen::MatrixXd A = kernel_matrix(spec_, hp_, X_);
  A.diagonal().array() += std::exp(2.0 * hp_.log_sigma_n) + jitter_;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw NumericalError("matrix not positive definite at the stored jitter");
  L_ = llt.matrixL();
  alpha_ = llt.solve(y_);

  const double rebuild = (L_ * L_.transpose() - A).norm() / A.norm();
  if (!(rebuild <= 1e-8)) {
    throw NumericalError(fmt::format("Cholesky reconstruction error {:.3g} exceeds 1e-8", rebuild));
  }
  const double ynorm = y_.norm();
  const double residual = (A * alpha_ - y_).norm();
  if (ynorm > 0 && residual > 1e-8 * ynorm) {
    spdlog::warn("GP solve residual {:.3g} relative to |y| = {:.3g}", residual, ynorm);
  }
  log_likelihood_ = -0.5 * y_.dot(alpha_) - L_.diagonal().array().log().sum() -
                    0.5 * static_cast<double>(y_.size()) * std::log(2.0 * std::numbers::pi);
}

Eigen::VectorXd FittedGP::predict_mean(const Eigen::MatrixXd& Xs) const {
  if (Xs.cols() != spec_.dim) throw InvalidArgument("prediction inputs do not match training dimension");
  const Eigen::MatrixXd Ks = kernel_matrix(spec_, hp_, Xs, X_);
  Eigen::VectorXd mean(Xs.rows());
  for (Eigen::Index i = 0; i < Ks.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < Ks.cols(); ++j) s += Ks(i, j) * alpha_[j];
    mean[i] = s;
  }
  return mean;
}

Posterior FittedGP::predict(const Eigen::MatrixXd& Xs, bool include_noise) const {
  Posterior post;
  post.mean = predict_mean(Xs);
  const Eigen::MatrixXd Kst = kernel_matrix(spec_, hp_, X_, Xs);
  const Eigen::MatrixXd V = L_.triangularView<Eigen::Lower>().solve(Kst);
  const double sf2 = std::exp(2.0 * hp_.log_sigma_f);
  post.variance = (sf2 - V.colwise().squaredNorm().array()).matrix().transpose();
  for (Eigen::Index i = 0; i < post.variance.size(); ++i) {
    if (post.variance[i] < 0) {
      post.variance[i] = 0.0;
      ++post.clamped;
    }
  }
  if (post.clamped > 0) spdlog::debug("clamped {} negative posterior variance(s)", post.clamped);
  if (include_noise) post.variance.array() += std::exp(2.0 * hp_.log_sigma_n);
  return post;
}

FittedGP fit(const KernelSpec& spec, const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const FitOptions& options,
             FitReport* report) {
  check_training_data(spec, X, y);
  if (X.rows() < 2) throw InvalidArgument("GP training needs at least 2 points");
  if (options.restarts < 0) throw InvalidArgument("restarts must be nonnegative");

  const int m = spec.num_lengthscales();
  const int p = spec.num_hyperparameters();
  const auto& b = options.bounds;
  Eigen::VectorXd lower(p), upper(p);
  lower.head(m).setConstant(std::log(b.lengthscale_lo));
  upper.head(m).setConstant(std::log(b.lengthscale_hi));
  lower[m] = std::log(b.sigma_f_lo);
  upper[m] = std::log(b.sigma_f_hi);
  lower[m + 1] = std::log(b.sigma_n_lo);
  upper[m + 1] = std::log(b.sigma_n_hi);

  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Hyperparameters::unit(spec, 0.1).pack());
  Rng rng(options.seed);
  const auto& r = options.ranges;
  for (int s = 0; s < options.restarts; ++s) {
    Eigen::VectorXd theta(p);
    for (int k = 0; k < m; ++k) theta[k] = rng.uniform(std::log(r.lengthscale_lo), std::log(r.lengthscale_hi));
    theta[m] = rng.uniform(std::log(r.sigma_f_lo), std::log(r.sigma_f_hi));
    theta[m + 1] = rng.uniform(std::log(r.sigma_n_lo), std::log(r.sigma_n_hi));
    starts.push_back(theta);
  }

  auto objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    try {
      const auto lml = log_marginal_likelihood(spec, Hyperparameters::unpack(spec, theta), X, y);
      grad = -lml.gradient;
      return -lml.value;
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  std::vector<RestartOutcome> outcomes(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    RestartOutcome& out = outcomes[i];
    out.start = starts[i];
    try {
      const auto result = minimize_lbfgs(objective, starts[i], lower, upper, options.optimizer);
      out.theta = result.x;
      out.log_likelihood = -result.value;
      out.iterations = result.iterations;
      out.evaluations = result.evaluations;
    } catch (const NumericalError& e) {
      out.failed = true;
      out.error = e.what();
    }
  });

  std::size_t best = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].failed) continue;
    if (best == outcomes.size() || outcomes[i].log_likelihood > outcomes[best].log_likelihood) best = i;
  }
  if (best == outcomes.size()) {
    std::string errors;
    for (const auto& o : outcomes) errors += "\n  " + o.error;
    throw NumericalError("every GP restart failed to factorise the covariance:" + errors);
  }
  spdlog::debug("GP fit: best restart {} of {}, log-likelihood {:.6g}", best, outcomes.size(),
                outcomes[best].log_likelihood);

  const Hyperparameters hp = Hyperparameters::unpack(spec, outcomes[best].theta);
  const Eigen::MatrixXd K = kernel_matrix(spec, hp, X);
  const double jitter = factor_with_jitter(K, std::exp(2.0 * hp.log_sigma_n)).jitter;
  if (report != nullptr) {
    report->restarts = outcomes;
    report->best = best;
  }
  return FittedGP(spec, hp, X, y, jitter);
}

}  // namespace surro
