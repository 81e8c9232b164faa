// Copyright 2026 The itt Authors
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

// Micro benchmarks for the per-iteration hot paths. Each state is warmed up
// with a fixed number of iterations so that the schedule is partly filled.

#include <cstdint>
#include <memory>

#include "benchmark/benchmark.h"
#include "itt/feasibility.h"
#include "itt/generator.h"
#include "itt/search.h"

namespace itt {
namespace {

SolverState Warm(double fill, ActivityStrategy strategy, int iterations) {
  GenParams params;
  params.fill_percent = fill;
  params.seed = 1;
  const GeneratedInstance inst = Generate(params);
  HeuristicWeights w;
  w.activity_strategy = strategy;
  w.max_iterations = iterations;
  SolverState state(inst.problem, w, 1);
  Solve(state);
  return state;
}

void BM_SelectActivity(benchmark::State& bench, ActivityStrategy strategy) {
  SolverState state = Warm(bench.range(0), strategy, 100);
  for (auto _ : bench) {
    if (state.unscheduled.empty()) {
      bench.SkipWithError("instance solved during warm-up");
      break;
    }
    benchmark::DoNotOptimize(SelectActivity(state));
  }
}
BENCHMARK_CAPTURE(BM_SelectActivity, full, ActivityStrategy::kFullScan)
    ->Arg(50)->Arg(70)->Arg(85);
BENCHMARK_CAPTURE(BM_SelectActivity, sampled, ActivityStrategy::kSampled)
    ->Arg(50)->Arg(70)->Arg(85);
BENCHMARK_CAPTURE(BM_SelectActivity, random, ActivityStrategy::kRandom)
    ->Arg(50)->Arg(70)->Arg(85);

void BM_SelectLocation(benchmark::State& bench) {
  SolverState state = Warm(bench.range(0), ActivityStrategy::kSampled, 100);
  const ActivityIndex a = state.unscheduled.front();
  for (auto _ : bench) {
    benchmark::DoNotOptimize(SelectLocation(state, a));
  }
}
BENCHMARK(BM_SelectLocation)->Arg(50)->Arg(70)->Arg(85);

void BM_Iterate(benchmark::State& bench) {
  const SolverState warm = Warm(bench.range(0), ActivityStrategy::kSampled, 100);
  SolverState state = warm;
  for (auto _ : bench) {
    if (state.unscheduled.empty()) {
      bench.PauseTiming();
      state = warm;
      bench.ResumeTiming();
    }
    benchmark::DoNotOptimize(Iterate(state));
  }
}
BENCHMARK(BM_Iterate)->Arg(70)->Arg(85);

void BM_CheckSchedule(benchmark::State& bench) {
  const SolverState state = Warm(bench.range(0), ActivityStrategy::kSampled, 400);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(CheckSchedule(state.model(), state.schedule));
  }
}
BENCHMARK(BM_CheckSchedule)->Arg(70);

}  // namespace
}  // namespace itt

BENCHMARK_MAIN();
