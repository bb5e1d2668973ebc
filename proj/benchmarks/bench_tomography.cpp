/*
 * Copyright 2026 The sepkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <benchmark/benchmark.h>

#include "sepkit/closure.hpp"
#include "sepkit/tomography.hpp"

namespace {

using namespace sepkit;

void BM_BuildPovm(benchmark::State& state) {
  const auto construction = state.range(0) == 0 ? FrameConstruction::Random : FrameConstruction::Conditioned;
  for (auto _ : state) benchmark::DoNotOptimize(local_ic_povm({2, 2}, 5, construction));
  state.SetLabel(frame_construction_name(construction));
}
BENCHMARK(BM_BuildPovm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AcceptanceProbability(benchmark::State& state) {
  const Povm povm = local_ic_povm({2, 2}, 5);
  const DensityMatrix phi = max_entangled(2);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(acceptance_probability(phi, phi, n, 0.75, 100, 1, povm));
}
BENCHMARK(BM_AcceptanceProbability)->Arg(10)->Arg(150)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ClosureSweep(benchmark::State& state) {
  const auto c = static_cast<Criterion>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(closure_sweep(c, 20, 3));
  state.SetLabel(std::string(criterion_name(c)));
}
BENCHMARK(BM_ClosureSweep)
    ->Arg(static_cast<int>(Criterion::Ppt))
    ->Arg(static_cast<int>(Criterion::Majorization))
    ->Arg(static_cast<int>(Criterion::CrossNorm))
    ->Unit(benchmark::kMillisecond);

}  // namespace
