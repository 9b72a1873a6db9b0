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

#include "surro/dataset.hpp"
#include "surro/doe.hpp"
#include "surro/mc.hpp"
#include "surro/surrogate.hpp"

namespace {

surro::Dataset linear_dataset(int n) {
  surro::Dataset d;
  d.inputs = surro::lhs_sample(surro::DesignSpace::standard(), n, 11);
  d.outputs.resize(n, 4);
  for (int i = 0; i < n; ++i) {
    const auto x = d.inputs.row(i);
    const double f = 10.0 * x(1) + 0.2 * x(2) + 0.001 * x(3) + 0.002 * x(4);
    d.outputs.row(i) << 1000.0 + 50.0 * f, 0.5 + 0.01 * f, 14.0 + f, 17.0 - f;
  }
  for (auto name : surro::kInputColumns) d.input_names.emplace_back(name);
  for (auto name : surro::kOutputColumns) d.output_names.emplace_back(name);
  return d;
}

void BM_SampleInputs(benchmark::State& state) {
  const auto spec = surro::DistributionSpec::scenario(1, 'A');
  for (auto _ : state) benchmark::DoNotOptimize(surro::sample_inputs(spec, 0, state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleInputs)->Arg(16384);

void BM_Propagate(benchmark::State& state) {
  surro::SurrogateSpec model_spec;
  // The fiber angle columns are collinear in the DOE, so the linear model
  // needs a small ridge penalty.
  model_spec.kind = state.range(1) == 0 ? surro::ModelKind::kRidge : surro::ModelKind::kGpr;
  model_spec.lambda = 1e-6;
  model_spec.restarts = 0;
  const auto model = surro::TrainedModel::train(model_spec, linear_dataset(120), 3);
  const auto spec = surro::DistributionSpec::scenario(2, 'B');
  surro::PropagationOptions options;
  options.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(surro::propagate(model, spec, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Propagate)->Args({100000, 0})->Args({100000, 1})->Unit(benchmark::kMillisecond);

}  // namespace
