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

#include "sepkit/symext.hpp"

namespace {

using namespace sepkit;

void BM_SymextSeparable(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const std::size_t k = static_cast<std::size_t>(state.range(1));
  const SeparableSample sample = random_separable({d, d}, 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(has_symmetric_extension(sample.state, k));
}
BENCHMARK(BM_SymextSeparable)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_SymextMaxEntangled(benchmark::State& state) {
  const DensityMatrix phi = max_entangled(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(has_symmetric_extension(phi, 2));
}
BENCHMARK(BM_SymextMaxEntangled)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SymextIsotropic(benchmark::State& state) {
  const DensityMatrix rho = isotropic_state(2, static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(has_symmetric_extension(rho, 2));
}
BENCHMARK(BM_SymextIsotropic)->Arg(50)->Arg(66)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_SymmetrizeB(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  const SeparableSample sample = random_separable({2, 2}, 3, 1);
  const Matrix x = extend_separable(sample.ensemble, k);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize_B(x, 2, 2, k));
}
BENCHMARK(BM_SymmetrizeB)->DenseRange(2, 4);

}  // namespace
