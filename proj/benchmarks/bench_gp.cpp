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

#include <benchmark/benchmark.h>

#include "surro/gp.hpp"
#include "surro/kernels.hpp"
#include "surro/random.hpp"

namespace {

Eigen::MatrixXd random_points(Eigen::Index n, int d, std::uint64_t seed) {
  surro::Rng rng(seed);
  Eigen::MatrixXd X(n, d);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-2.0, 2.0);
  return X;
}

surro::KernelSpec matern_ard() { return {surro::KernelFamily::kMatern32, true, 10}; }

void BM_KernelMatrix(benchmark::State& state) {
  const auto spec = matern_ard();
  const auto hp = surro::Hyperparameters::unit(spec);
  const auto X = random_points(state.range(0), 10, 1);
  for (auto _ : state) benchmark::DoNotOptimize(surro::kernel_matrix(spec, hp, X));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelMatrix)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_LogMarginalLikelihood(benchmark::State& state) {
  const auto spec = matern_ard();
  const auto hp = surro::Hyperparameters::unit(spec);
  const auto X = random_points(state.range(0), 10, 2);
  const Eigen::VectorXd y = X.col(0).array().sin() + X.col(1).array().square();
  for (auto _ : state) benchmark::DoNotOptimize(surro::log_marginal_likelihood(spec, hp, X, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LogMarginalLikelihood)->RangeMultiplier(2)->Range(64, 512)->Complexity()->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const auto spec = matern_ard();
  const auto X = random_points(state.range(0), 10, 3);
  const Eigen::VectorXd y = X.col(0).array().sin() + 0.5 * X.col(3).array();
  surro::FitOptions options;
  options.restarts = 0;
  for (auto _ : state) benchmark::DoNotOptimize(surro::fit(spec, X, y, options));
}
BENCHMARK(BM_Fit)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const auto spec = matern_ard();
  const auto X = random_points(256, 10, 4);
  const Eigen::VectorXd y = X.col(0).array().cos();
  const surro::FittedGP gp(spec, surro::Hyperparameters::unit(spec, 0.01), X, y, 0.0);
  const auto Xs = random_points(state.range(0), 10, 5);
  const bool with_variance = state.range(1) != 0;
  for (auto _ : state) {
    if (with_variance) {
      benchmark::DoNotOptimize(gp.predict(Xs));
    } else {
      benchmark::DoNotOptimize(gp.predict_mean(Xs));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Predict)->Args({1024, 0})->Args({1024, 1})->Args({16384, 0});

}  // namespace
