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

// JSON encoders/decoders shared by the file formats and the live service.
// Internal to the library.

#ifndef ITT_SRC_JSON_CODEC_H_
#define ITT_SRC_JSON_CODEC_H_

#include <string>
#include <string_view>

#include "itt/bench.h"
#include "itt/generator.h"
#include "itt/model.h"
#include "itt/search.h"
#include "itt/session.h"
#include "json.hpp"

namespace itt::codec {

using Json = nlohmann::ordered_json;

// Parses text, turning syntax errors into FormatError with line/column.
Json Parse(std::string_view text);

Json EncodeProblem(const ProblemDesc& desc);
ProblemDesc DecodeProblem(const Json& doc);

Json EncodeSchedule(const Problem& problem, const Schedule& schedule);
// No soundness check; throws FormatError / ModelError on bad content.
Schedule DecodeSchedule(const Json& doc, const Problem& problem,
                        bool check_hash = true);

Json EncodeWeights(const HeuristicWeights& weights);
HeuristicWeights DecodeWeights(const Json& doc, const std::string& path = "");

Json EncodeGenParams(const GenParams& params);
GenParams DecodeGenParams(const Json& doc, const std::string& path = "");

BenchConfig DecodeBenchConfig(const Json& doc);

Json EncodeLocation(const Problem& problem, ActivityIndex a,
                    const Location& loc);
Json EncodeReport(const Problem& problem, const IterationReport& report);
Json EncodeRepairReport(const RepairReport& report);
Json EncodeSnapshot(const Snapshot& snapshot);
Edit DecodeEdit(const Json& doc, const std::string& path = "");

std::string Hash(std::string_view bytes);

}  // namespace itt::codec

#endif  // ITT_SRC_JSON_CODEC_H_
