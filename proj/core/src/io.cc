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

#include "itt/io.h"

#include <fstream>
#include <memory>
#include <sstream>

#include "itt/feasibility.h"
#include "json_codec.h"

namespace itt {

std::string SaveProblem(const ProblemDesc& desc) {
  return codec::EncodeProblem(desc).dump(2) + "\n";
}

ProblemDesc LoadProblemDesc(std::string_view text) {
  return codec::DecodeProblem(codec::Parse(text));
}

Problem LoadProblem(std::string_view text) {
  return Problem(LoadProblemDesc(text));
}

std::string ProblemHash(const Problem& problem) {
  return codec::Hash(SaveProblem(problem.desc()));
}

std::string SaveSchedule(const Problem& problem, const Schedule& schedule) {
  return codec::EncodeSchedule(problem, schedule).dump(2) + "\n";
}

LoadedSchedule LoadSchedule(std::string_view text, const Problem& problem,
                            bool repair) {
  Schedule schedule = codec::DecodeSchedule(codec::Parse(text), problem);
  const auto violations = CheckSchedule(problem, schedule);
  if (violations.empty()) return {std::move(schedule), {}};
  if (!repair) {
    std::string msg = "schedule is not sound:";
    for (const Violation& v : violations) msg += "\n  " + Describe(problem, v);
    throw FormatError(msg);
  }
  // Borrow the problem; the state does not outlive this call.
  std::shared_ptr<const Problem> borrowed(std::shared_ptr<const Problem>(),
                                          &problem);
  SolverState state(borrowed, HeuristicWeights{}, 0);
  state.schedule = std::move(schedule);
  std::vector<ActivityIndex> detached;
  try {
    detached = Repair(state);
  } catch (const RepairRollback& err) {
    throw FormatError(std::string("fixed assignments conflict: ") + err.what());
  }
  LoadedSchedule out{std::move(state.schedule), {}};
  for (ActivityIndex a : detached) out.detached.push_back(problem.activity(a).id);
  return out;
}

std::string SaveWeights(const HeuristicWeights& weights) {
  return codec::EncodeWeights(weights).dump(2) + "\n";
}

HeuristicWeights LoadWeights(std::string_view text) {
  return codec::DecodeWeights(codec::Parse(text));
}

std::string SaveGenParams(const GenParams& params) {
  return codec::EncodeGenParams(params).dump(2) + "\n";
}

GenParams LoadGenParams(std::string_view text) {
  return codec::DecodeGenParams(codec::Parse(text));
}

BenchConfig LoadBenchConfig(std::string_view text) {
  return codec::DecodeBenchConfig(codec::Parse(text));
}

std::string ReportToJsonLine(const Problem& problem,
                             const IterationReport& report) {
  return codec::EncodeReport(problem, report).dump() + "\n";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace itt
