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

#include "itt/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace itt {
namespace {

std::string FormatDouble(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void MeanSd(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string StrategySpec::Label() const {
  switch (strategy) {
    case ActivityStrategy::kRandom:
      return "random";
    case ActivityStrategy::kFullScan:
      return "full";
    case ActivityStrategy::kSampled:
      break;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "sampled(%g)", sample_probability);
  return buf;
}

void BenchConfig::Validate() const {
  if (strategies.empty()) throw std::invalid_argument("bench: no strategies");
  if (fills.empty()) throw std::invalid_argument("bench: no fill levels");
  if (seeds < 1) throw std::invalid_argument("bench: seeds must be >= 1");
  if (iteration_cap < 0) {
    throw std::invalid_argument("bench: iteration_cap must be >= 0");
  }
  for (const auto& s : strategies) {
    if (s.strategy == ActivityStrategy::kSampled &&
        !(s.sample_probability > 0 && s.sample_probability <= 1)) {
      throw std::invalid_argument("bench: sample probability must be in (0, 1]");
    }
  }
  weights.Validate();
}

BenchRow RunCell(const StrategySpec& strategy, double fill, std::uint64_t seed,
                 const BenchConfig& config) {
  GenParams gen = config.generator;
  gen.fill_percent = fill;
  gen.seed = seed;
  const GeneratedInstance instance = Generate(gen);

  HeuristicWeights weights = config.weights;
  weights.activity_strategy = strategy.strategy;
  weights.sample_probability = strategy.sample_probability;
  weights.max_iterations = config.iteration_cap;
  SolverState state(instance.problem, weights, seed);

  const auto t0 = std::chrono::steady_clock::now();
  Solve(state);
  const auto elapsed = std::chrono::steady_clock::now() - t0;

  BenchRow row;
  row.strategy = strategy.Label();
  row.fill = fill;
  row.seed = seed;
  row.activities = instance.problem->num_activities();
  row.iterations = state.iteration;
  row.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  row.selection_ms =
      std::chrono::duration<double, std::milli>(state.selection_time).count();
  row.scheduled_pct =
      row.activities == 0 ? 100.0 : 100.0 * state.best.scheduled / row.activities;
  row.cap_hit = !state.unscheduled.empty();
  return row;
}

BenchResults RunExperiment(const BenchConfig& config) {
  config.Validate();
  struct Cell {
    std::size_t strategy;
    double fill;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < config.strategies.size(); ++s) {
    for (double fill : config.fills) {
      for (int k = 0; k < config.seeds; ++k) {
        cells.push_back({s, fill, config.base_seed + static_cast<std::uint64_t>(k)});
      }
    }
  }

  BenchResults results;
  results.rows.resize(cells.size());
  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(cells.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const Cell& c = cells[i];
        results.rows[i] = RunCell(config.strategies[c.strategy], c.fill, c.seed,
                                  config);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  results.aggregates = Aggregate(results.rows);
  return results;
}

std::vector<BenchAggregate> Aggregate(const std::vector<BenchRow>& rows) {
  std::vector<std::pair<std::string, double>> order;
  std::map<std::pair<std::string, double>, std::vector<const BenchRow*>> groups;
  for (const BenchRow& row : rows) {
    auto key = std::make_pair(row.strategy, row.fill);
    auto& bucket = groups[key];
    if (bucket.empty()) order.push_back(key);
    bucket.push_back(&row);
  }
  std::vector<BenchAggregate> out;
  for (const auto& key : order) {
    const auto& bucket = groups[key];
    BenchAggregate agg;
    agg.strategy = key.first;
    agg.fill = key.second;
    agg.runs = static_cast<int>(bucket.size());
    std::vector<double> its, wall, pct;
    for (const BenchRow* r : bucket) {
      its.push_back(r->iterations);
      wall.push_back(r->wall_ms);
      pct.push_back(r->scheduled_pct);
      agg.cap_hits += r->cap_hit;
    }
    MeanSd(its, agg.mean_iterations, agg.sd_iterations);
    MeanSd(wall, agg.mean_wall_ms, agg.sd_wall_ms);
    MeanSd(pct, agg.mean_scheduled_pct, agg.sd_scheduled_pct);
    out.push_back(agg);
  }
  return out;
}

std::string ToCsv(const BenchResults& results) {
  std::ostringstream out;
  out << "kind,strategy,fill,seed,runs,activities,iterations,iterations_sd,"
         "wall_ms,wall_ms_sd,selection_ms,scheduled_pct,scheduled_pct_sd,"
         "cap_hit\n";
  for (const BenchRow& r : results.rows) {
    out << "run," << r.strategy << ',' << FormatDouble(r.fill, 1) << ','
        << r.seed << ",1," << r.activities << ',' << r.iterations << ",,"
        << FormatDouble(r.wall_ms) << ",," << FormatDouble(r.selection_ms)
        << ',' << FormatDouble(r.scheduled_pct) << ",," << (r.cap_hit ? 1 : 0)
        << '\n';
  }
  for (const BenchAggregate& a : results.aggregates) {
    out << "aggregate," << a.strategy << ',' << FormatDouble(a.fill, 1)
        << ",," << a.runs << ",," << FormatDouble(a.mean_iterations) << ','
        << FormatDouble(a.sd_iterations) << ',' << FormatDouble(a.mean_wall_ms)
        << ',' << FormatDouble(a.sd_wall_ms) << ",,"
        << FormatDouble(a.mean_scheduled_pct) << ','
        << FormatDouble(a.sd_scheduled_pct) << ',' << a.cap_hits << '\n';
  }
  return out.str();
}

std::string RenderSvgChart(const BenchResults& results) {
  constexpr int kPanelW = 420, kPanelH = 300, kMargin = 50;
  const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

  std::vector<std::string> strategies;
  double min_fill = 1e9, max_fill = -1e9, max_its = 1.0;
  for (const BenchAggregate& a : results.aggregates) {
    if (std::find(strategies.begin(), strategies.end(), a.strategy) ==
        strategies.end()) {
      strategies.push_back(a.strategy);
    }
    min_fill = std::min(min_fill, a.fill);
    max_fill = std::max(max_fill, a.fill);
    max_its = std::max(max_its, a.mean_iterations);
  }
  if (max_fill <= min_fill) max_fill = min_fill + 1.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << 2 * (kPanelW + kMargin) + kMargin << "\" height=\""
      << kPanelH + 2 * kMargin + 20 * static_cast<int>(strategies.size())
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  auto panel = [&](int index, const char* title, double y_max,
                   auto&& value) {
    const int x0 = kMargin + index * (kPanelW + kMargin);
    const int y0 = kMargin;
    svg << "<g>\n<text x=\"" << x0 << "\" y=\"" << y0 - 10 << "\">" << title
        << "</text>\n";
    svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << kPanelW
        << "\" height=\"" << kPanelH
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << x0 << "\" y=\"" << y0 + kPanelH + 15 << "\">"
        << FormatDouble(min_fill, 0) << "%</text>\n";
    svg << "<text x=\"" << x0 + kPanelW - 30 << "\" y=\"" << y0 + kPanelH + 15
        << "\">" << FormatDouble(max_fill, 0) << "%</text>\n";
    svg << "<text x=\"" << x0 - 45 << "\" y=\"" << y0 + 10 << "\">"
        << FormatDouble(y_max, 0) << "</text>\n";
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      svg << "<polyline fill=\"none\" stroke=\"" << colors[s % 6]
          << "\" stroke-width=\"2\" points=\"";
      for (const BenchAggregate& a : results.aggregates) {
        if (a.strategy != strategies[s]) continue;
        const double x = x0 + (a.fill - min_fill) / (max_fill - min_fill) * kPanelW;
        const double y = y0 + kPanelH - value(a) / y_max * kPanelH;
        svg << FormatDouble(x, 1) << ',' << FormatDouble(y, 1) << ' ';
      }
      svg << "\"/>\n";
    }
    svg << "</g>\n";
  };
  panel(0, "mean iterations", max_its,
        [](const BenchAggregate& a) { return a.mean_iterations; });
  panel(1, "mean scheduled %", 100.0,
        [](const BenchAggregate& a) { return a.mean_scheduled_pct; });
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const int y = kPanelH + 2 * kMargin + 20 * static_cast<int>(s);
    svg << "<rect x=\"" << kMargin << "\" y=\"" << y - 10
        << "\" width=\"12\" height=\"12\" fill=\"" << colors[s % 6]
        << "\"/><text x=\"" << kMargin + 18 << "\" y=\"" << y << "\">"
        << strategies[s] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace itt
