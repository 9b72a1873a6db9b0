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

#include "surro/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "surro/error.hpp"

namespace surro {
namespace {

Eigen::VectorXd project(const Eigen::VectorXd& x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

// Gradient with components that point out of an active bound zeroed.
Eigen::VectorXd projected_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g, const Eigen::VectorXd& lo,
                                   const Eigen::VectorXd& hi) {
  Eigen::VectorXd pg = g;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if ((x[i] <= lo[i] && g[i] > 0) || (x[i] >= hi[i] && g[i] < 0)) pg[i] = 0.0;
  }
  return pg;
}

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd two_loop(const Eigen::VectorXd& g, const std::deque<Pair>& memory) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    alpha[k] = memory[k].rho * memory[k].s.dot(q);
    q -= alpha[k] * memory[k].y;
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const double beta = memory[k].rho * memory[k].y.dot(q);
    q += (alpha[k] - beta) * memory[k].s;
  }
  return -q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0, const Eigen::VectorXd& lower,
                           const Eigen::VectorXd& upper, const LbfgsOptions& options) {
  LbfgsResult result;
  Eigen::VectorXd x = project(x0, lower, upper);
  Eigen::VectorXd g(x.size());
  double fx = f(x, g);
  result.evaluations = 1;
  if (!std::isfinite(fx)) throw NumericalError("objective is not finite at the starting point");

  std::deque<Pair> memory;
  Eigen::VectorXd x_new(x.size()), g_new(x.size());

  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    Eigen::VectorXd pg = projected_gradient(x, g, lower, upper);
    if (pg.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd direction = two_loop(pg, memory);
    // Free variables only: components blocked by an active bound stay put.
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (pg[i] == 0.0) direction[i] = 0.0;
    }
    if (!(direction.dot(pg) < 0)) {
      memory.clear();
      direction = -pg;
    }

    double step = 1.0;
    if (memory.empty()) step = std::min(1.0, 1.0 / pg.lpNorm<Eigen::Infinity>());
    bool accepted = false;
    double f_new = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      x_new = project(x + step * direction, lower, upper);
      f_new = f(x_new, g_new);
      ++result.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * g.dot(x_new - x)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (memory.empty()) break;
      memory.clear();
      continue;
    }

    Pair pair{x_new - x, g_new - g, 0.0};
    const double sy = pair.s.dot(pair.y);
    if (sy > 1e-12 * pair.y.squaredNorm()) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }

    const double decrease = fx - f_new;
    const double scale = std::max({std::abs(fx), std::abs(f_new), 1.0});
    x = x_new;
    g = g_new;
    fx = f_new;
    if (decrease <= options.relative_decrease * scale) {
      ++result.iterations;
      break;
    }
  }

  if (!result.converged) {
    result.converged =
        projected_gradient(x, g, lower, upper).lpNorm<Eigen::Infinity>() < options.gradient_tolerance;
  }
  result.x = std::move(x);
  result.value = fx;
  return result;
}

}  // namespace surro
