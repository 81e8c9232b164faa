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

// Strategy comparison runs: activity-selection strategies x fill levels x
// seeds over generated instances.

#ifndef ITT_BENCH_H_
#define ITT_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "itt/generator.h"
#include "itt/search.h"

namespace itt {

struct StrategySpec {
  ActivityStrategy strategy = ActivityStrategy::kSampled;
  double sample_probability = 0.2;

  // "random", "sampled(0.2)" or "full".
  std::string Label() const;
  friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

struct BenchConfig {
  std::vector<StrategySpec> strategies;
  std::vector<double> fills;
  int seeds = 1;
  std::uint64_t base_seed = 1;
  int iteration_cap = 20000;
  HeuristicWeights weights;
  // fill_percent and seed are overridden per cell.
  GenParams generator;
  // 0: one per hardware thread.
  int workers = 0;

  void Validate() const;
};

struct BenchRow {
  std::string strategy;
  double fill = 0.0;
  std::uint64_t seed = 0;
  int activities = 0;
  int iterations = 0;
  double wall_ms = 0.0;
  double selection_ms = 0.0;
  double scheduled_pct = 0.0;  // best snapshot at termination
  bool cap_hit = false;
};

struct BenchAggregate {
  std::string strategy;
  double fill = 0.0;
  int runs = 0;
  double mean_iterations = 0.0;
  double sd_iterations = 0.0;
  double mean_wall_ms = 0.0;
  double sd_wall_ms = 0.0;
  double mean_scheduled_pct = 0.0;
  double sd_scheduled_pct = 0.0;
  int cap_hits = 0;
};

struct BenchResults {
  std::vector<BenchRow> rows;  // ordered by (strategy, fill, seed)
  std::vector<BenchAggregate> aggregates;
};

// One instance per (fill, seed) shared by every strategy. The generator and
// the solver of cell (fill, k) are both seeded with base_seed + k.
BenchResults RunExperiment(const BenchConfig& config);

// Per (strategy, fill) mean and sample standard deviation, in row order of
// first appearance.
std::vector<BenchAggregate> Aggregate(const std::vector<BenchRow>& rows);

BenchRow RunCell(const StrategySpec& strategy, double fill, std::uint64_t seed,
                 const BenchConfig& config);

std::string ToCsv(const BenchResults& results);
// Two panels: mean iterations and mean scheduled-% against fill.
std::string RenderSvgChart(const BenchResults& results);

}  // namespace itt

#endif  // ITT_BENCH_H_
