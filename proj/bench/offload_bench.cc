// Copyright 2026 The Offload Authors
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

// Microbenchmarks: parallel brute force against its serial reference, and the
// solver against the baselines.

#include <benchmark/benchmark.h>

#include "offload/baselines.h"
#include "offload/datagen_io.h"
#include "offload/exact_oracle.h"
#include "offload/sfm_solver.h"

namespace offload {
namespace {

TaskGraph Instance(int n, int64_t m, uint64_t seed = 1) {
  GenConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = seed;
  cfg.ratio = ParseRatio("3:5:4:2");
  return Generate(cfg);
}

void BM_BruteForce(benchmark::State& state) {
  const TaskGraph g = Instance(state.range(0), 3 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BruteForce(g));
  state.SetItemsProcessed(state.iterations() << state.range(0));
}
BENCHMARK(BM_BruteForce)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_BruteForceReference(benchmark::State& state) {
  const TaskGraph g = Instance(state.range(0), 3 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceReference(g));
  state.SetItemsProcessed(state.iterations() << state.range(0));
}
BENCHMARK(BM_BruteForceReference)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_Sma(benchmark::State& state) {
  const TaskGraph g = Instance(state.range(0), 10 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Solve(g));
}
BENCHMARK(BM_Sma)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const TaskGraph g = Instance(state.range(0), 10 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(GreedyLocalSearch(g));
}
BENCHMARK(BM_Greedy)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond);

void BM_Mincut(benchmark::State& state) {
  GenConfig cfg;
  cfg.n = state.range(0);
  cfg.m = 10 * state.range(0);
  cfg.seed = 1;
  cfg.ratio = ParseRatio("1:3:3:1");
  const TaskGraph g = Generate(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(SolveMincut(g));
}
BENCHMARK(BM_Mincut)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace offload

BENCHMARK_MAIN();
