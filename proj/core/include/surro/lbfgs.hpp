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

#include <functional>

#include <Eigen/Core>

namespace surro {

struct LbfgsOptions {
  int max_iterations = 200;
  /// Stop once the infinity norm of the projected gradient drops below this.
  double gradient_tolerance = 1e-6;
  int history = 8;
  /// Also stop once an accepted step lowers f by no more than this fraction
  /// of max(|f_old|, |f_new|, 1); the L-BFGS-B default factr * eps. Zero
  /// disables the test.
  double relative_decrease = 2.220446049250313e-09;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Objective returning f(x) and writing the gradient. A non-finite return
/// marks x as infeasible; the line search then backtracks.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// Minimises f over the box [lower, upper] with limited-memory BFGS
/// directions, projection onto the box and an Armijo backtracking search.
/// Throws NumericalError if f is not finite at the starting point.
LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0, const Eigen::VectorXd& lower,
                           const Eigen::VectorXd& upper, const LbfgsOptions& options = {});

}  // namespace surro
