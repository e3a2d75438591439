// Copyright 2026 The MrAP Authors
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

#include "mrap/model_registry.h"
#include "mrap/propagation.h"
#include "support/synthetic.h"

namespace {

// Fixed sweep count so timings compare across sizes and thread counts.
void BM_Propagate(benchmark::State& state) {
  const mrap::DatasetBundle bundle = mrap::testing::LargeInstance(
      4, static_cast<int>(state.range(0)), 3, 3, 0.5);
  const mrap::ModelRegistry registry =
      mrap::BuildRegistry(bundle, mrap::AdmissionConfig{});
  mrap::PropagationConfig config;
  config.conv_frac = 1e-300;
  config.max_iters = 20;
  config.record_loss = false;
  config.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mrap::Run(bundle, registry, config));
  }
  state.SetItemsProcessed(state.iterations() * config.max_iters *
                          bundle.attrs.size());
}
BENCHMARK(BM_Propagate)
    ->Args({1000, 1})
    ->Args({10000, 1})
    ->Args({10000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_GenealogyToConvergence(benchmark::State& state) {
  const mrap::DatasetBundle bundle = mrap::testing::GenealogyInstance(
      7, static_cast<int>(state.range(0)));
  const mrap::ModelRegistry registry =
      mrap::BuildRegistry(bundle, mrap::AdmissionConfig{});
  mrap::PropagationConfig config;
  config.max_iters = 1000;
  config.record_loss = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mrap::Run(bundle, registry, config));
  }
}
BENCHMARK(BM_GenealogyToConvergence)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
