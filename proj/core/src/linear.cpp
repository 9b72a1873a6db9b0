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

#include "surro/linear.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "surro/dataset.hpp"
#include "surro/error.hpp"
#include "surro/metrics.hpp"

namespace surro {
namespace {

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& Xc, const Eigen::VectorXd& yc, double lambda) {
  const auto n = static_cast<double>(Xc.rows());
  if (lambda == 0.0) {
    if (Xc.rows() <= Xc.cols()) {
      throw NumericalError("least squares needs more rows than columns; use ridge (L2) regularisation");
    }
    if (Xc.colPivHouseholderQr().rank() < Xc.cols()) {
      throw NumericalError("singular least-squares system; use ridge (L2) regularisation");
    }
  }
  Eigen::MatrixXd G = Xc.transpose() * Xc / n;
  G.diagonal().array() += lambda;
  const Eigen::VectorXd rhs = Xc.transpose() * yc / n;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success) throw NumericalError("normal equations could not be factorised");
  return ldlt.solve(rhs);
}

}  // namespace

std::string_view to_string(Penalty penalty) {
  switch (penalty) {
    case Penalty::kNone:
      return "NONE";
    case Penalty::kL1:
      return "L1";
    case Penalty::kL2:
      return "L2";
  }
  return "?";
}

Eigen::VectorXd LinearModel::predict(const Eigen::MatrixXd& X) const {
  if (X.cols() != coefficients.size()) throw InvalidArgument("linear model input dimension mismatch");
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    double s = intercept;
    for (Eigen::Index j = 0; j < X.cols(); ++j) s += X(i, j) * coefficients[j];
    out[i] = s;
  }
  return out;
}

LinearModel fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, Penalty penalty, double lambda,
                       const LassoOptions& options) {
  if (X.rows() != y.size()) throw InvalidArgument("X and y row counts differ");
  if (X.rows() < 1) throw InvalidArgument("linear fit needs data");
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be finite and nonnegative");
  if (penalty == Penalty::kNone) lambda = 0.0;

  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd Xc = X.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  const auto n = static_cast<double>(X.rows());

  LinearModel model;
  model.penalty = penalty;
  model.lambda = lambda;

  if (penalty != Penalty::kL1 || lambda == 0.0) {
    model.coefficients = solve_normal_equations(Xc, yc, lambda);
  } else {
    const Eigen::Index d = X.cols();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd residual = yc;
    const Eigen::VectorXd col_sq = Xc.colwise().squaredNorm().transpose() / n;
    for (model.sweeps = 1; model.sweeps <= options.max_sweeps; ++model.sweeps) {
      double max_change = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (col_sq[j] == 0.0) continue;
        const double old = beta[j];
        const double rho = Xc.col(j).dot(residual) / n + col_sq[j] * old;
        const double updated = soft_threshold(rho, lambda) / col_sq[j];
        if (updated != old) {
          residual -= (updated - old) * Xc.col(j);
          beta[j] = updated;
          max_change = std::max(max_change, std::abs(updated - old));
        }
      }
      if (max_change < options.tolerance) break;
    }
    model.sweeps = std::min(model.sweeps, options.max_sweeps);
    model.coefficients = beta;
  }
  model.intercept = y_mean - x_mean.dot(model.coefficients);
  return model;
}

double lasso_kkt_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LinearModel& model) {
  const Eigen::VectorXd residual = y - model.predict(X);
  const Eigen::MatrixXd Xc = X.rowwise() - X.colwise().mean();
  const Eigen::VectorXd g = Xc.transpose() * residual / static_cast<double>(X.rows());
  double worst = std::abs(residual.mean());  // intercept stationarity
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const double b = model.coefficients[j];
    const double v = b != 0.0 ? std::abs(g[j] - model.lambda * (b > 0 ? 1.0 : -1.0))
                              : std::max(0.0, std::abs(g[j]) - model.lambda);
    worst = std::max(worst, v);
  }
  return worst;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(std::pow(10.0, -4.0 + 0.5 * i));
  return grid;
}

GridSearchResult grid_search_lambda(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, Penalty penalty,
                                    const std::vector<double>& grid, int k, std::uint64_t seed) {
  if (grid.empty()) throw InvalidArgument("lambda grid is empty");
  if (k < 2) throw InvalidArgument("grid search needs k >= 2 folds");
  const auto folds = make_folds(X.rows(), k, seed);

  GridSearchResult result;
  for (double lambda : grid) {
    GridScore score{lambda, 0.0, {}};
    for (const auto& held : folds) {
      std::vector<char> is_held(static_cast<std::size_t>(X.rows()), 0);
      for (auto i : held) is_held[static_cast<std::size_t>(i)] = 1;
      std::vector<Eigen::Index> train;
      for (Eigen::Index i = 0; i < X.rows(); ++i) {
        if (!is_held[static_cast<std::size_t>(i)]) train.push_back(i);
      }
      const Eigen::MatrixXd Xt = X(train, Eigen::all);
      const Eigen::VectorXd yt = y(train);
      const Eigen::MatrixXd Xv = X(held, Eigen::all);
      const Eigen::VectorXd yv = y(held);
      const LinearModel model = fit_linear(Xt, yt, penalty, lambda);
      const Eigen::VectorXd pred = model.predict(Xv);
      score.fold_r2.push_back(r_squared(std::span<const double>(yv.data(), yv.size()),
                                        std::span<const double>(pred.data(), pred.size())));
    }
    double sum = 0.0;
    for (double r : score.fold_r2) sum += r;
    score.mean_r2 = sum / static_cast<double>(score.fold_r2.size());
    result.scores.push_back(std::move(score));
  }

  const GridScore* best = &result.scores.front();
  for (const auto& s : result.scores) {
    if (s.mean_r2 > best->mean_r2 || (s.mean_r2 == best->mean_r2 && s.lambda > best->lambda)) best = &s;
  }
  result.best_lambda = best->lambda;
  return result;
}

}  // namespace surro
