// Copyright 2026 The DPCA Auction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernel against the OpenMP kernel, and whole mechanisms in
// both execution modes. Arguments are (types m, users n).

#include <cstdint>

#include "benchmark/benchmark.h"
#include "dpca/harness.h"
#include "dpca/mechanisms.h"
#include "dpca/scoring.h"

namespace dpca {
namespace {

Instance DeskInstance(const benchmark::State& state) {
  ScenarioPoint p;
  p.m = static_cast<int>(state.range(0));
  p.n = static_cast<int>(state.range(1));
  return *Generate(p, 7, 0);
}

template <Execution kMode>
void BM_ScoreFullBlock(benchmark::State& state) {
  const Instance inst = DeskInstance(state);
  const std::uint64_t size = *SpaceSize(inst.config.grid_size(), inst.types(),
                                        UINT64_MAX);
  const BlockRequest block{{}, inst.types(), size};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreBlock(inst, {11}, block, kMode));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}
BENCHMARK(BM_ScoreFullBlock<Execution::kSerial>)
    ->ArgsProduct({{2, 3, 4}, {40}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreFullBlock<Execution::kParallel>)
    ->ArgsProduct({{2, 3, 4}, {40}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

template <Execution kMode>
void BM_DpcaM(benchmark::State& state) {
  const Instance inst = DeskInstance(state);
  const int group_size = static_cast<int>(state.range(2));
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunDpcaM(inst, {11}, rng, group_size, {10'000'000, kMode}));
  }
}
BENCHMARK(BM_DpcaM<Execution::kSerial>)
    ->ArgsProduct({{4}, {40}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DpcaM<Execution::kParallel>)
    ->ArgsProduct({{4}, {40}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_Basic(benchmark::State& state) {
  const Instance inst = DeskInstance(state);
  for (auto _ : state) benchmark::DoNotOptimize(RunBasic(inst));
}
BENCHMARK(BM_Basic)->ArgsProduct({{4}, {40, 400}});

}  // namespace
}  // namespace dpca

BENCHMARK_MAIN();
