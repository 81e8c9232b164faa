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

// Command-line entry point: solve, generate, bench, check, serve.
//
// Exit status: 0 success, 1 runtime failure (including an unsound schedule
// for `check`), 2 usage error.

#include <csignal>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "itt/bench.h"
#include "itt/feasibility.h"
#include "itt/generator.h"
#include "itt/io.h"
#include "itt/model.h"
#include "itt/search.h"
#include "itt/service.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void Emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    itt::WriteFile(path, contents);
  }
}

struct SolveArgs {
  std::string problem;
  std::string weights;
  std::uint64_t seed = 1;
  std::optional<int> max_iter;
  std::string strategy;
  std::string out;
  bool best = false;
  bool latest = false;
  std::string initial;
  bool repair = false;
  std::string reports;
  bool verify = false;
};

int RunSolve(const SolveArgs& args) {
  auto problem = std::make_shared<const itt::Problem>(
      itt::LoadProblem(itt::ReadFile(args.problem)));
  itt::HeuristicWeights weights;
  if (!args.weights.empty()) {
    weights = itt::LoadWeights(itt::ReadFile(args.weights));
  }
  if (args.max_iter) weights.max_iterations = *args.max_iter;
  if (!args.strategy.empty()) {
    weights.activity_strategy = *itt::ParseActivityStrategy(args.strategy);
  }
  weights.Validate();

  std::optional<itt::SolverState> state;
  if (args.initial.empty()) {
    state.emplace(problem, weights, args.seed);
  } else {
    itt::LoadedSchedule loaded =
        itt::LoadSchedule(itt::ReadFile(args.initial), *problem, args.repair);
    for (const std::string& id : loaded.detached) {
      std::cerr << "repair: detached " << id << "\n";
    }
    state.emplace(problem, std::move(loaded.schedule), weights, args.seed);
  }
  state->verify = args.verify;

  std::ofstream reports;
  if (!args.reports.empty()) {
    reports.open(args.reports, std::ios::binary | std::ios::trunc);
    if (!reports) throw std::runtime_error("cannot write " + args.reports);
  }
  itt::IterationObserver observer;
  if (reports.is_open()) {
    observer = [&](const itt::IterationReport& r) {
      reports << itt::ReportToJsonLine(*problem, r);
    };
  }
  itt::Solve(*state, nullptr, observer);

  const bool use_latest = args.latest;
  const itt::Schedule& result =
      use_latest ? state->schedule : state->best.schedule;
  const int scheduled = result.num_assigned();
  std::fprintf(stderr, "%s: %d/%d scheduled after %d iterations (%s)\n",
               args.problem.c_str(), scheduled, problem->num_activities(),
               state->iteration, use_latest ? "latest" : "best");
  Emit(args.out, itt::SaveSchedule(*problem, result));
  return kExitOk;
}

struct GenerateArgs {
  std::string params;
  std::string out;
  std::string witness;
  std::optional<std::uint64_t> seed;
  std::optional<double> fill;
};

int RunGenerate(const GenerateArgs& args) {
  itt::GenParams params = itt::LoadGenParams(itt::ReadFile(args.params));
  if (args.seed) params.seed = *args.seed;
  if (args.fill) params.fill_percent = *args.fill;
  const itt::GeneratedInstance instance = itt::Generate(params);
  Emit(args.out, itt::SaveProblem(instance.problem->desc()));
  if (!args.witness.empty()) {
    itt::WriteFile(args.witness,
                   itt::SaveSchedule(*instance.problem, instance.witness));
  }
  std::fprintf(stderr, "generated %d activities, fill %.1f%%\n",
               instance.problem->num_activities(), instance.achieved_fill);
  return kExitOk;
}

struct BenchArgs {
  std::string config;
  std::string out;
  std::string chart;
  std::optional<int> workers;
};

int RunBench(const BenchArgs& args) {
  itt::BenchConfig config = itt::LoadBenchConfig(itt::ReadFile(args.config));
  if (args.workers) config.workers = *args.workers;
  const itt::BenchResults results = itt::RunExperiment(config);
  Emit(args.out, itt::ToCsv(results));
  if (!args.chart.empty()) {
    itt::WriteFile(args.chart, itt::RenderSvgChart(results));
  }
  return kExitOk;
}

struct CheckArgs {
  std::string problem;
  std::string schedule;
  bool repair = false;
  std::string out;
};

int RunCheck(const CheckArgs& args) {
  const itt::Problem problem = itt::LoadProblem(itt::ReadFile(args.problem));
  const std::string text = itt::ReadFile(args.schedule);
  if (args.repair) {
    itt::LoadedSchedule loaded = itt::LoadSchedule(text, problem, true);
    for (const std::string& id : loaded.detached) {
      std::cout << "detached " << id << "\n";
    }
    if (!args.out.empty()) {
      itt::WriteFile(args.out, itt::SaveSchedule(problem, loaded.schedule));
    }
    std::cout << "sound after repair: " << loaded.schedule.num_assigned() << "/"
              << problem.num_activities() << " scheduled\n";
    return kExitOk;
  }
  try {
    const itt::LoadedSchedule loaded = itt::LoadSchedule(text, problem, false);
    std::cout << "sound: " << loaded.schedule.num_assigned() << "/"
              << problem.num_activities() << " scheduled\n";
    return kExitOk;
  } catch (const itt::FormatError& err) {
    std::cout << err.what() << "\n";
    return kExitFailure;
  }
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 0;
};

int RunServe(const ServeArgs& args) {
  // Handle termination signals synchronously on this thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  itt::ServiceOptions options;
  options.host = args.host;
  options.port = args.port > 0 ? args.port : itt::DefaultPort();
  itt::Server server(options);
  const int port = server.Start();
  std::fprintf(stderr, "listening on http://%s:%d\n", args.host.c_str(), port);
  int sig = 0;
  sigwait(&signals, &sig);
  std::fprintf(stderr, "shutting down\n");
  server.Stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive timetabling engine"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem document");
  solve_cmd->add_option("problem", solve.problem, "Problem document")
      ->required();
  solve_cmd->add_option("--weights", solve.weights, "Weights document");
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--strategy", solve.strategy, "Activity selection")
      ->check(CLI::IsMember({"random", "sampled", "full"}));
  solve_cmd->add_option("--out", solve.out, "Schedule output (default stdout)");
  auto* best = solve_cmd->add_flag("--best", solve.best,
                                   "Emit the best schedule found (default)");
  solve_cmd->add_flag("--latest", solve.latest, "Emit the final schedule")
      ->excludes(best);
  solve_cmd->add_option("--initial", solve.initial,
                        "Start from this schedule document");
  solve_cmd->add_flag("--repair", solve.repair,
                      "Repair an unsound initial schedule");
  solve_cmd->add_option("--reports", solve.reports,
                        "Write one JSON line per iteration");
  solve_cmd->add_flag("--verify", solve.verify,
                      "Check soundness after every iteration");

  GenerateArgs generate;
  auto* gen_cmd =
      app.add_subcommand("generate", "Generate a feasible random instance");
  gen_cmd->add_option("params", generate.params, "Generator parameters")
      ->required()
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", generate.out, "Problem output")->required();
  gen_cmd->add_option("--witness", generate.witness,
                      "Write the complete witness schedule");
  gen_cmd->add_option("--seed", generate.seed, "Override the seed");
  gen_cmd->add_option("--fill", generate.fill, "Override fill percent");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare selection strategies");
  bench_cmd->add_option("config", bench.config, "Bench configuration")
      ->required()
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench.out, "CSV output")->required();
  bench_cmd->add_option("--chart", bench.chart, "SVG chart output");
  bench_cmd->add_option("--workers", bench.workers, "Parallel workers")
      ->check(CLI::NonNegativeNumber);

  CheckArgs check;
  auto* check_cmd =
      app.add_subcommand("check", "Check a schedule against a problem");
  check_cmd->add_option("problem", check.problem, "Problem document")
      ->required();
  check_cmd->add_option("schedule", check.schedule, "Schedule document")
      ->required();
  check_cmd->add_flag("--repair", check.repair,
                      "Detach violating activities instead of failing");
  check_cmd->add_option("--out", check.out, "Repaired schedule output");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the session service");
  serve_cmd->add_option("--port", serve.port,
                        "Port (default: ITT_PORT or 8080)")
      ->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", serve.host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return RunSolve(solve);
    if (*gen_cmd) return RunGenerate(generate);
    if (*bench_cmd) return RunBench(bench);
    if (*check_cmd) return RunCheck(check);
    if (*serve_cmd) return RunServe(serve);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "itt: error: %s\n", err.what());
    return kExitFailure;
  }
  return kExitUsage;
}
