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

// Problem and schedule documents (JSON, see docs/format.md) and the config
// files used by the command-line tool.

#ifndef ITT_IO_H_
#define ITT_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "itt/bench.h"
#include "itt/generator.h"
#include "itt/model.h"
#include "itt/search.h"
#include "itt/session.h"

namespace itt {

// Syntax errors (with line and column) and schema errors (with the JSON
// pointer of the offending field).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical problem document. Parsing the result yields an equal ProblemDesc.
std::string SaveProblem(const ProblemDesc& desc);
ProblemDesc LoadProblemDesc(std::string_view text);
// LoadProblemDesc followed by model validation (throws ModelError).
Problem LoadProblem(std::string_view text);

// FNV-1a 64 of the canonical problem document, as 16 hex digits.
std::string ProblemHash(const Problem& problem);

std::string SaveSchedule(const Problem& problem, const Schedule& schedule);

struct LoadedSchedule {
  Schedule schedule;
  std::vector<std::string> detached;  // ids removed by repair
};

// Refuses documents whose problem hash does not match. Without `repair`, an
// unsound schedule is rejected with its violations listed; with `repair`,
// violating non-fixed activities are detached.
LoadedSchedule LoadSchedule(std::string_view text, const Problem& problem,
                            bool repair = false);

std::string SaveWeights(const HeuristicWeights& weights);
// Missing fields keep their defaults.
HeuristicWeights LoadWeights(std::string_view text);

std::string SaveGenParams(const GenParams& params);
GenParams LoadGenParams(std::string_view text);

BenchConfig LoadBenchConfig(std::string_view text);

// One compact JSON object per line; no timing data, so equal runs produce
// equal bytes.
std::string ReportToJsonLine(const Problem& problem,
                             const IterationReport& report);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace itt

#endif  // ITT_IO_H_
