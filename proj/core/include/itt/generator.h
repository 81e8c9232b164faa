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

// Random school-timetabling instances that are feasible by construction: a
// complete witness timetable is packed first and the problem is derived from
// it, so the witness certifies that a full solution exists.

#ifndef ITT_GENERATOR_H_
#define ITT_GENERATOR_H_

#include <cstdint>
#include <memory>
#include <stdexcept>

#include "itt/model.h"

namespace itt {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenParams {
  int n_teachers = 20;
  int n_classes = 20;
  int n_rooms = 20;
  int days = 5;
  int slots_per_day = 10;
  // Share of class x slot capacity covered by activities, in (0, 100].
  double fill_percent = 50.0;
  int min_duration = 1;
  int max_duration = 3;
  // Expected dependencies per activity, in [0, 1).
  double dependency_density = 0.1;
  // Probability that a slot unused by the witness gets a soft mark, in [0, 1).
  double soft_density = 0.05;
  // Each activity may use its witness room or up to this many other rooms.
  int max_room_alternatives = 2;
  int max_attempts = 10;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument.
  void Validate() const;

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

struct GeneratedInstance {
  std::shared_ptr<const Problem> problem;
  Schedule witness;
  // Sum of durations over class x slot capacity, in percent.
  double achieved_fill = 0.0;
};

// Deterministic in `params` (including the seed). Throws GenerationError when
// the requested fill cannot be packed within max_attempts.
GeneratedInstance Generate(const GenParams& params);

}  // namespace itt

#endif  // ITT_GENERATOR_H_
