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

#include "sepkit/criteria.hpp"
#include "sepkit/linalg.hpp"
#include "sepkit/states.hpp"

namespace {

using namespace sepkit;

void BM_HermitianEigenvalues(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density({d, d}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(rho.matrix()));
  state.SetLabel(std::to_string(d * d) + "x" + std::to_string(d * d));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(2)->Arg(3)->Arg(4)->Arg(6)->Arg(8);

void BM_PartialTranspose(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density({d, d}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(partial_transpose(rho.matrix(), rho.shape()));
}
BENCHMARK(BM_PartialTranspose)->Arg(2)->Arg(4)->Arg(8);

void BM_Realign(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density({d, d}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(realign(rho.matrix(), rho.shape()));
}
BENCHMARK(BM_Realign)->Arg(2)->Arg(4)->Arg(8);

void BM_SpectralCriteria(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density({d, d}, 4);
  RunAllOptions opts;
  opts.include_symmetric_extension = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_all(rho, opts));
}
BENCHMARK(BM_SpectralCriteria)->Arg(2)->Arg(3)->Arg(4);

void BM_TensorPower(benchmark::State& state) {
  const DensityMatrix phi = max_entangled(2);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tensor_power_bipartite(phi, n));
}
BENCHMARK(BM_TensorPower)->DenseRange(1, 5);

}  // namespace
