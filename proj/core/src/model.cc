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

#include "itt/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>
#include <utility>

namespace itt {
namespace {

// Upper bound on the cartesian product of an activity's disjunctive groups.
constexpr std::size_t kMaxSelections = 4096;

std::string Quote(std::string_view s) {
  return "'" + std::string(s) + "'";
}

void NormalizeMarks(TimePreference& marks, int total_slots,
                    const std::string& owner) {
  if (marks.empty()) {
    marks.assign(total_slots, SlotMark::kNeutral);
    return;
  }
  if (static_cast<int>(marks.size()) != total_slots) {
    throw ModelError(owner + ": expected " + std::to_string(total_slots) +
                     " slot marks, got " + std::to_string(marks.size()));
  }
}

}  // namespace

std::string_view ToString(SlotMark mark) {
  switch (mark) {
    case SlotMark::kNeutral:
      return "neutral";
    case SlotMark::kSoft:
      return "soft";
    case SlotMark::kHard:
      return "hard";
  }
  return "?";
}

std::string_view ToString(GroupMode mode) {
  return mode == GroupMode::kConjunctive ? "conjunctive" : "disjunctive";
}

std::string_view ToString(DependencyKind kind) {
  switch (kind) {
    case DependencyKind::kBefore:
      return "before";
    case DependencyKind::kMeets:
      return "meets";
    case DependencyKind::kConcurrent:
      return "concurrent";
  }
  return "?";
}

std::optional<DependencyKind> ParseDependencyKind(std::string_view text) {
  if (text == "before") return DependencyKind::kBefore;
  if (text == "meets") return DependencyKind::kMeets;
  if (text == "concurrent") return DependencyKind::kConcurrent;
  return std::nullopt;
}

std::optional<GroupMode> ParseGroupMode(std::string_view text) {
  if (text == "conjunctive") return GroupMode::kConjunctive;
  if (text == "disjunctive") return GroupMode::kDisjunctive;
  return std::nullopt;
}

bool DependencySatisfied(DependencyKind kind, int first_start,
                         int first_duration, int second_start,
                         int second_duration) {
  (void)second_duration;
  switch (kind) {
    case DependencyKind::kBefore:
      return first_start + first_duration <= second_start;
    case DependencyKind::kMeets:
      return first_start + first_duration == second_start;
    case DependencyKind::kConcurrent:
      return first_start == second_start;
  }
  return false;
}

Problem::Problem(ProblemDesc desc) : desc_(std::move(desc)) {
  Validate();
  compiled_.resize(desc_.activities.size());
  for (ActivityIndex a = 0; a < num_activities(); ++a) CompileActivity(a);
  for (int d = 0; d < static_cast<int>(dependencies_.size()); ++d) {
    compiled_[dependencies_[d].first].dependencies.push_back(d);
    compiled_[dependencies_[d].second].dependencies.push_back(d);
  }
}

void Problem::Validate() {
  const TimeGrid& grid = desc_.grid;
  if (grid.days < 1 || grid.slots_per_day < 1) {
    throw ModelError("grid: days and slots_per_day must be >= 1");
  }
  if (grid.days > 10000 || grid.slots_per_day > 10000 ||
      grid.total_slots() > 100000) {
    throw ModelError("grid: too many slots");
  }
  const int total = grid.total_slots();

  for (ResourceIndex r = 0; r < num_resources(); ++r) {
    Resource& res = desc_.resources[r];
    const std::string owner = "resource " + Quote(res.id);
    if (res.id.empty()) {
      throw ModelError("resource #" + std::to_string(r) + ": empty id");
    }
    if (!resource_index_.emplace(res.id, r).second) {
      throw ModelError(owner + ": duplicate id");
    }
    NormalizeMarks(res.marks, total, owner);
  }

  for (ActivityIndex a = 0; a < num_activities(); ++a) {
    Activity& act = desc_.activities[a];
    const std::string owner = "activity " + Quote(act.id);
    if (act.id.empty()) {
      throw ModelError("activity #" + std::to_string(a) + ": empty id");
    }
    if (resource_index_.contains(act.id)) {
      throw ModelError(owner + ": id already used by a resource");
    }
    if (!activity_index_.emplace(act.id, a).second) {
      throw ModelError(owner + ": duplicate id");
    }
    if (act.duration < 1 || act.duration > total) {
      throw ModelError(owner + ": duration " + std::to_string(act.duration) +
                       " outside [1, " + std::to_string(total) + "]");
    }
    NormalizeMarks(act.marks, total, owner);
    if (act.groups.empty()) {
      throw ModelError(owner + ": no resource groups");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t g = 0; g < act.groups.size(); ++g) {
      const ResourceGroup& group = act.groups[g];
      if (group.members.empty()) {
        throw ModelError(owner + ": group " + std::to_string(g) + " is empty");
      }
      for (const std::string& member : group.members) {
        if (!resource_index_.contains(member)) {
          throw ModelError(owner + ": unknown resource " + Quote(member));
        }
        if (!seen.insert(member).second) {
          throw ModelError(owner + ": resource " + Quote(member) +
                           " listed more than once");
        }
      }
    }
    for (const LocationPreference& pref : act.location_prefs) {
      if (!std::isfinite(pref.penalty) || pref.penalty < 0) {
        throw ModelError(owner + ": location penalty must be finite and >= 0");
      }
      if (pref.start < 0 || pref.start >= total) {
        throw ModelError(owner + ": location preference start " +
                         std::to_string(pref.start) + " outside the grid");
      }
      for (const std::string& member : pref.selection) {
        if (!resource_index_.contains(member)) {
          throw ModelError(owner + ": location preference names unknown " +
                           "resource " + Quote(member));
        }
      }
    }
  }

  dependencies_.reserve(desc_.dependencies.size());
  for (const Dependency& dep : desc_.dependencies) {
    auto first = FindActivity(dep.first);
    auto second = FindActivity(dep.second);
    const std::string owner = "dependency " + std::string(ToString(dep.kind)) +
                              "(" + dep.first + ", " + dep.second + ")";
    if (!first) throw ModelError(owner + ": unknown activity " + Quote(dep.first));
    if (!second) {
      throw ModelError(owner + ": unknown activity " + Quote(dep.second));
    }
    if (*first == *second) throw ModelError(owner + ": endpoints must differ");
    dependencies_.push_back({dep.kind, *first, *second});
  }
}

void Problem::CompileActivity(ActivityIndex a) {
  const Activity& act = desc_.activities[a];
  Compiled& out = compiled_[a];

  std::size_t count = 1;
  for (const ResourceGroup& group : act.groups) {
    if (group.mode == GroupMode::kDisjunctive) {
      count *= group.members.size();
      if (count > kMaxSelections) {
        throw ModelError("activity '" + act.id + "': more than " +
                         std::to_string(kMaxSelections) +
                         " resource selections");
      }
    }
  }
  out.selections.reserve(count);
  std::vector<std::size_t> odometer(act.groups.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<ResourceIndex> sel;
    for (std::size_t g = 0; g < act.groups.size(); ++g) {
      const ResourceGroup& group = act.groups[g];
      if (group.mode == GroupMode::kConjunctive) {
        for (const auto& m : group.members) sel.push_back(resource_index_.at(m));
      } else {
        sel.push_back(resource_index_.at(group.members[odometer[g]]));
      }
    }
    out.selections.push_back(sel);
    std::sort(sel.begin(), sel.end());
    out.sorted_selections.push_back(std::move(sel));
    for (std::size_t g = act.groups.size(); g-- > 0;) {
      if (act.groups[g].mode != GroupMode::kDisjunctive) continue;
      if (++odometer[g] < act.groups[g].members.size()) break;
      odometer[g] = 0;
    }
  }

  const int starts = num_starts(a);
  const std::size_t cells = out.selections.size() * starts;
  out.hard_ok.assign(cells, 0);
  out.soft.assign(cells, 0);

  // Per-slot prefix sums make every (selection, start) lookup O(|selection|).
  const int total = total_slots();
  std::vector<int> act_hard(total + 1, 0), act_soft(total + 1, 0);
  for (int t = 0; t < total; ++t) {
    act_hard[t + 1] = act_hard[t] + (act.marks[t] == SlotMark::kHard);
    act_soft[t + 1] = act_soft[t] + (act.marks[t] == SlotMark::kSoft);
  }
  std::unordered_map<ResourceIndex, std::pair<std::vector<int>, std::vector<int>>>
      res_sums;
  for (const auto& sel : out.selections) {
    for (ResourceIndex r : sel) {
      if (res_sums.contains(r)) continue;
      auto& [hard, soft] = res_sums[r];
      hard.assign(total + 1, 0);
      soft.assign(total + 1, 0);
      const auto& marks = desc_.resources[r].marks;
      for (int t = 0; t < total; ++t) {
        hard[t + 1] = hard[t] + (marks[t] == SlotMark::kHard);
        soft[t + 1] = soft[t] + (marks[t] == SlotMark::kSoft);
      }
    }
  }
  const int dur = act.duration;
  for (SelectionIndex s = 0; s < num_selections(a); ++s) {
    for (int start = 0; start < starts; ++start) {
      const int end = start + dur;
      int hard = act_hard[end] - act_hard[start];
      int soft = act_soft[end] - act_soft[start];
      for (ResourceIndex r : out.selections[s]) {
        const auto& sums = res_sums[r];
        hard += sums.first[end] - sums.first[start];
        soft += sums.second[end] - sums.second[start];
      }
      const std::size_t i = static_cast<std::size_t>(s) * starts + start;
      out.hard_ok[i] = hard == 0;
      out.soft[i] = static_cast<std::int16_t>(
          std::min<int>(soft, std::numeric_limits<std::int16_t>::max()));
    }
  }

  if (!act.location_prefs.empty()) {
    out.penalty.assign(cells, 0.0);
    // Start-only entries first so exact entries override them.
    // Entries past the last feasible start are unreachable and ignored.
    for (const LocationPreference& pref : act.location_prefs) {
      if (!pref.selection.empty() || pref.start >= starts) continue;
      for (SelectionIndex s = 0; s < num_selections(a); ++s) {
        out.penalty[static_cast<std::size_t>(s) * starts + pref.start] =
            pref.penalty;
      }
    }
    for (const LocationPreference& pref : act.location_prefs) {
      if (pref.selection.empty() || pref.start >= starts) continue;
      std::vector<ResourceIndex> ids;
      for (const auto& m : pref.selection) ids.push_back(resource_index_.at(m));
      auto s = FindSelection(a, ids);
      if (!s) {
        throw ModelError("activity '" + act.id +
                         "': location preference selection is not a valid "
                         "resource selection");
      }
      out.penalty[static_cast<std::size_t>(*s) * starts + pref.start] =
          pref.penalty;
    }
  }
}

std::optional<ActivityIndex> Problem::FindActivity(std::string_view id) const {
  auto it = activity_index_.find(std::string(id));
  if (it == activity_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ResourceIndex> Problem::FindResource(std::string_view id) const {
  auto it = resource_index_.find(std::string(id));
  if (it == resource_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<SelectionIndex> Problem::FindSelection(
    ActivityIndex a, std::span<const ResourceIndex> resources) const {
  std::vector<ResourceIndex> key(resources.begin(), resources.end());
  std::sort(key.begin(), key.end());
  const auto& sorted = compiled_[a].sorted_selections;
  for (SelectionIndex s = 0; s < static_cast<SelectionIndex>(sorted.size());
       ++s) {
    if (sorted[s] == key) return s;
  }
  return std::nullopt;
}

bool Problem::ValidLocation(ActivityIndex a, const Location& loc) const {
  return loc.selection >= 0 && loc.selection < num_selections(a) &&
         loc.start >= 0 && loc.start < num_starts(a);
}

void Schedule::Assign(ActivityIndex a, const Location& loc) {
  if (!locations_[a]) ++num_assigned_;
  locations_[a] = loc;
}

void Schedule::Unassign(ActivityIndex a) {
  if (locations_[a]) --num_assigned_;
  locations_[a].reset();
  fixed_[a] = false;
}

void Schedule::SetFixed(ActivityIndex a, bool fixed) {
  if (fixed && !locations_[a]) {
    throw ContractViolation("cannot fix an unassigned activity");
  }
  fixed_[a] = fixed;
}

Occupancy::Occupancy(const Problem& problem, const Schedule& schedule)
    : total_slots_(problem.total_slots()),
      cells_(static_cast<std::size_t>(problem.num_resources()) *
                 problem.total_slots(),
             kNoActivity) {
  for (ActivityIndex a = 0; a < schedule.size(); ++a) {
    if (const auto& loc = schedule.location(a)) Add(problem, a, *loc);
  }
}

void Occupancy::Add(const Problem& problem, ActivityIndex a,
                    const Location& loc) {
  if (!problem.ValidLocation(a, loc)) {
    throw ContractViolation("occupancy: invalid location for activity '" +
                            problem.activity(a).id + "'");
  }
  const int end = loc.start + problem.duration(a);
  for (ResourceIndex r : problem.selection(a, loc.selection)) {
    for (int t = loc.start; t < end; ++t) {
      ActivityIndex& c = cell(r, t);
      if (c != kNoActivity && c != a) {
        throw ContractViolation("occupancy: '" + problem.activity(a).id +
                                "' overlaps '" + problem.activity(c).id +
                                "' on '" + problem.resource(r).id + "'");
      }
      c = a;
    }
  }
}

void Occupancy::Remove(const Problem& problem, ActivityIndex a,
                       const Location& loc) {
  const int end = loc.start + problem.duration(a);
  for (ResourceIndex r : problem.selection(a, loc.selection)) {
    for (int t = loc.start; t < end; ++t) {
      ActivityIndex& c = cell(r, t);
      if (c == a) c = kNoActivity;
    }
  }
}

}  // namespace itt
