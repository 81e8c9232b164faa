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

// Pure feasibility, conflict and soft-violation computations over a partial
// schedule. None of these functions mutate their arguments.

#ifndef ITT_FEASIBILITY_H_
#define ITT_FEASIBILITY_H_

#include <string>
#include <vector>

#include "itt/model.h"

namespace itt {

// All resource selections of `a`, each as a list of resource indices in group
// declaration order. Selection i corresponds to Location::selection == i.
std::vector<std::vector<ResourceIndex>> ResourceSelections(
    const Problem& problem, ActivityIndex a);

// True iff `loc` lies inside the grid and no covered slot is hard-forbidden
// for the activity or for any selected resource. Throws ModelError if the
// selection index does not exist.
bool HardFeasible(const Problem& problem, ActivityIndex a, const Location& loc);

// Number of (entity, slot) pairs marked soft over the covered slots, entity
// ranging over the activity and each selected resource.
int SoftViolations(const Problem& problem, ActivityIndex a,
                   const Location& loc);

// Scheduled activities that would have to leave for `a` to sit at `loc`:
// resource overlaps plus dependency partners the placement would violate.
// The activity's own assignment, if any, is ignored. Result is sorted.
std::vector<ActivityIndex> Conflicts(const Problem& problem,
                                     const Schedule& schedule,
                                     const Occupancy& occupancy,
                                     ActivityIndex a, const Location& loc);
std::vector<ActivityIndex> Conflicts(const Problem& problem,
                                     const Schedule& schedule, ActivityIndex a,
                                     const Location& loc);

enum class Placement {
  kInfeasible,     // not hard-feasible
  kBlocked,        // conflicts with a fixed activity
  kConflicting,    // evicts at least one non-fixed activity
  kFree,           // no conflicts
};

// Cheap classification of one candidate; does not materialize the conflict
// set.
Placement ClassifyPlacement(const Problem& problem, const Schedule& schedule,
                            const Occupancy& occupancy, ActivityIndex a,
                            const Location& loc);

// Every hard-feasible location whose conflict set holds no fixed activity,
// start ascending then selection order.
std::vector<Location> EnumerateLocations(const Problem& problem,
                                         const Schedule& schedule,
                                         const Occupancy& occupancy,
                                         ActivityIndex a);
std::vector<Location> EnumerateLocations(const Problem& problem,
                                         const Schedule& schedule,
                                         ActivityIndex a);

enum class ViolationKind {
  kInvalidLocation,   // unknown selection or outside the grid
  kForbiddenSlot,     // covers a hard-forbidden slot
  kResourceOverlap,   // two activities share a resource at some slot
  kDependency,        // a dependency between two scheduled activities fails
};

std::string_view ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<ActivityIndex> activities;
  ResourceIndex resource = -1;  // kResourceOverlap and resource-caused
                                // kForbiddenSlot
  std::vector<int> slots;
  int dependency = -1;          // index into Problem::dependencies()

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Audits a schedule. Empty iff the schedule is sound. Overlaps are reported
// once per (activity pair, resource) listing the shared slots.
std::vector<Violation> CheckSchedule(const Problem& problem,
                                     const Schedule& schedule);

std::string Describe(const Problem& problem, const Violation& violation);

}  // namespace itt

#endif  // ITT_FEASIBILITY_H_
