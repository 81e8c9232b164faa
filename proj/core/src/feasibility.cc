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

#include "itt/feasibility.h"

#include <algorithm>
#include <map>
#include <tuple>

namespace itt {
namespace {

void RequireValid(const Problem& problem, ActivityIndex a, const Location& loc) {
  if (!problem.ValidLocation(a, loc)) {
    throw ContractViolation("invalid location (start " +
                            std::to_string(loc.start) + ", selection " +
                            std::to_string(loc.selection) + ") for activity '" +
                            problem.activity(a).id + "'");
  }
}

// Dependency partner of `a` whose current placement the location would
// violate, or kNoActivity.
ActivityIndex ViolatedPartner(const Problem& problem, const Schedule& schedule,
                              int dep_index, ActivityIndex a,
                              const Location& loc) {
  const ResolvedDependency& dep = problem.dependencies()[dep_index];
  const bool a_first = dep.first == a;
  const ActivityIndex partner = a_first ? dep.second : dep.first;
  const auto& partner_loc = schedule.location(partner);
  if (!partner_loc) return kNoActivity;
  const bool ok =
      a_first ? DependencySatisfied(dep.kind, loc.start, problem.duration(a),
                                    partner_loc->start,
                                    problem.duration(partner))
              : DependencySatisfied(dep.kind, partner_loc->start,
                                    problem.duration(partner), loc.start,
                                    problem.duration(a));
  return ok ? kNoActivity : partner;
}

}  // namespace

std::vector<std::vector<ResourceIndex>> ResourceSelections(
    const Problem& problem, ActivityIndex a) {
  auto sels = problem.selections(a);
  return {sels.begin(), sels.end()};
}

bool HardFeasible(const Problem& problem, ActivityIndex a,
                  const Location& loc) {
  if (loc.selection < 0 || loc.selection >= problem.num_selections(a)) {
    throw ModelError("activity '" + problem.activity(a).id +
                     "': unknown resource selection " +
                     std::to_string(loc.selection));
  }
  if (loc.start < 0 || loc.start >= problem.num_starts(a)) return false;
  return problem.hard_ok(a, loc);
}

int SoftViolations(const Problem& problem, ActivityIndex a,
                   const Location& loc) {
  RequireValid(problem, a, loc);
  return problem.soft_count(a, loc);
}

std::vector<ActivityIndex> Conflicts(const Problem& problem,
                                     const Schedule& schedule,
                                     const Occupancy& occupancy,
                                     ActivityIndex a, const Location& loc) {
  RequireValid(problem, a, loc);
  std::vector<ActivityIndex> out;
  const int end = loc.start + problem.duration(a);
  for (ResourceIndex r : problem.selection(a, loc.selection)) {
    for (int t = loc.start; t < end; ++t) {
      const ActivityIndex other = occupancy.at(r, t);
      if (other != kNoActivity && other != a) out.push_back(other);
    }
  }
  for (int d : problem.dependencies_of(a)) {
    const ActivityIndex partner = ViolatedPartner(problem, schedule, d, a, loc);
    if (partner != kNoActivity) out.push_back(partner);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ActivityIndex> Conflicts(const Problem& problem,
                                     const Schedule& schedule, ActivityIndex a,
                                     const Location& loc) {
  Schedule others = schedule;
  if (a < others.size()) others.Unassign(a);
  return Conflicts(problem, schedule, Occupancy(problem, others), a, loc);
}

Placement ClassifyPlacement(const Problem& problem, const Schedule& schedule,
                            const Occupancy& occupancy, ActivityIndex a,
                            const Location& loc) {
  if (!problem.hard_ok(a, loc)) return Placement::kInfeasible;
  bool conflicting = false;
  const int end = loc.start + problem.duration(a);
  for (ResourceIndex r : problem.selection(a, loc.selection)) {
    for (int t = loc.start; t < end; ++t) {
      const ActivityIndex other = occupancy.at(r, t);
      if (other == kNoActivity || other == a) continue;
      if (schedule.fixed(other)) return Placement::kBlocked;
      conflicting = true;
    }
  }
  for (int d : problem.dependencies_of(a)) {
    const ActivityIndex partner = ViolatedPartner(problem, schedule, d, a, loc);
    if (partner == kNoActivity) continue;
    if (schedule.fixed(partner)) return Placement::kBlocked;
    conflicting = true;
  }
  return conflicting ? Placement::kConflicting : Placement::kFree;
}

std::vector<Location> EnumerateLocations(const Problem& problem,
                                         const Schedule& schedule,
                                         const Occupancy& occupancy,
                                         ActivityIndex a) {
  std::vector<Location> out;
  const int starts = problem.num_starts(a);
  const int sels = problem.num_selections(a);
  for (int start = 0; start < starts; ++start) {
    for (SelectionIndex s = 0; s < sels; ++s) {
      const Location loc{start, s};
      const Placement p = ClassifyPlacement(problem, schedule, occupancy, a, loc);
      if (p == Placement::kConflicting || p == Placement::kFree) {
        out.push_back(loc);
      }
    }
  }
  return out;
}

std::vector<Location> EnumerateLocations(const Problem& problem,
                                         const Schedule& schedule,
                                         ActivityIndex a) {
  Schedule others = schedule;
  if (a < others.size()) others.Unassign(a);
  return EnumerateLocations(problem, others, Occupancy(problem, others), a);
}

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kInvalidLocation:
      return "invalid_location";
    case ViolationKind::kForbiddenSlot:
      return "forbidden_slot";
    case ViolationKind::kResourceOverlap:
      return "resource_overlap";
    case ViolationKind::kDependency:
      return "dependency";
  }
  return "?";
}

std::vector<Violation> CheckSchedule(const Problem& problem,
                                     const Schedule& schedule) {
  std::vector<Violation> out;
  const int total = problem.total_slots();
  const int n = std::min(schedule.size(), problem.num_activities());
  std::vector<bool> valid(n, false);

  for (ActivityIndex a = 0; a < schedule.size(); ++a) {
    if (a >= n && schedule.assigned(a)) {
      out.push_back({ViolationKind::kInvalidLocation, {a}, -1, {}, -1});
    }
  }

  for (ActivityIndex a = 0; a < n; ++a) {
    const auto& loc = schedule.location(a);
    if (!loc) continue;
    if (!problem.ValidLocation(a, *loc)) {
      out.push_back({ViolationKind::kInvalidLocation, {a}, -1, {}, -1});
      continue;
    }
    valid[a] = true;
    const int end = loc->start + problem.duration(a);
    std::vector<int> slots;
    for (int t = loc->start; t < end; ++t) {
      if (problem.activity_mark(a, t) == SlotMark::kHard) slots.push_back(t);
    }
    if (!slots.empty()) {
      out.push_back({ViolationKind::kForbiddenSlot, {a}, -1, slots, -1});
    }
    for (ResourceIndex r : problem.selection(a, loc->selection)) {
      slots.clear();
      for (int t = loc->start; t < end; ++t) {
        if (problem.resource_mark(r, t) == SlotMark::kHard) slots.push_back(t);
      }
      if (!slots.empty()) {
        out.push_back({ViolationKind::kForbiddenSlot, {a}, r, slots, -1});
      }
    }
  }

  std::vector<std::vector<ActivityIndex>> cells(
      static_cast<std::size_t>(problem.num_resources()) * total);
  for (ActivityIndex a = 0; a < n; ++a) {
    if (!valid[a]) continue;
    const Location& loc = *schedule.location(a);
    const int end = loc.start + problem.duration(a);
    for (ResourceIndex r : problem.selection(a, loc.selection)) {
      for (int t = loc.start; t < end; ++t) {
        cells[static_cast<std::size_t>(r) * total + t].push_back(a);
      }
    }
  }
  std::map<std::tuple<ActivityIndex, ActivityIndex, ResourceIndex>,
           std::vector<int>>
      overlaps;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& occupants = cells[c];
    for (std::size_t i = 0; i < occupants.size(); ++i) {
      for (std::size_t j = i + 1; j < occupants.size(); ++j) {
        const auto r = static_cast<ResourceIndex>(c / total);
        overlaps[{occupants[i], occupants[j], r}].push_back(
            static_cast<int>(c % total));
      }
    }
  }
  for (auto& [key, slots] : overlaps) {
    auto [a, b, r] = key;
    out.push_back({ViolationKind::kResourceOverlap, {a, b}, r,
                   std::move(slots), -1});
  }

  const auto deps = problem.dependencies();
  for (int d = 0; d < static_cast<int>(deps.size()); ++d) {
    const ResolvedDependency& dep = deps[d];
    if (dep.first >= n || dep.second >= n) continue;
    if (!valid[dep.first] || !valid[dep.second]) continue;
    const Location& f = *schedule.location(dep.first);
    const Location& s = *schedule.location(dep.second);
    if (!DependencySatisfied(dep.kind, f.start, problem.duration(dep.first),
                             s.start, problem.duration(dep.second))) {
      out.push_back(
          {ViolationKind::kDependency, {dep.first, dep.second}, -1, {}, d});
    }
  }
  return out;
}

std::string Describe(const Problem& problem, const Violation& v) {
  auto name = [&](ActivityIndex a) {
    return a < problem.num_activities() ? problem.activity(a).id
                                        : "#" + std::to_string(a);
  };
  std::string text(ToString(v.kind));
  text += ":";
  for (ActivityIndex a : v.activities) text += " " + name(a);
  if (v.resource >= 0) text += " on " + problem.resource(v.resource).id;
  if (!v.slots.empty()) {
    text += " at slots";
    for (int t : v.slots) text += " " + std::to_string(t);
  }
  if (v.dependency >= 0) {
    const ResolvedDependency& dep = problem.dependencies()[v.dependency];
    text += " (" + std::string(ToString(dep.kind)) + ")";
  }
  return text;
}

}  // namespace itt
