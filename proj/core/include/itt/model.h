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

// Timetabling domain: a uniform slot grid, unit-capacity resources, activities
// that require conjunctive/disjunctive resource groups, and binary temporal
// dependencies between activities.
//
// A ProblemDesc is the plain, editable description (string ids). Problem is
// its validated, indexed form; it is immutable and cheap to share through a
// shared_ptr<const Problem>.

#ifndef ITT_MODEL_H_
#define ITT_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace itt {

// Thrown for malformed or inconsistent problem data.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using ActivityIndex = std::int32_t;
using ResourceIndex = std::int32_t;
using SelectionIndex = std::int32_t;

inline constexpr ActivityIndex kNoActivity = -1;

enum class SlotMark : std::uint8_t { kNeutral, kSoft, kHard };

// One mark per grid slot.
using TimePreference = std::vector<SlotMark>;

struct TimeGrid {
  int days = 1;
  int slots_per_day = 1;

  int total_slots() const { return days * slots_per_day; }
  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct Resource {
  std::string id;
  std::string name;
  std::string kind;
  TimePreference marks;

  friend bool operator==(const Resource&, const Resource&) = default;
};

enum class GroupMode : std::uint8_t { kConjunctive, kDisjunctive };

struct ResourceGroup {
  GroupMode mode = GroupMode::kConjunctive;
  std::vector<std::string> members;

  friend bool operator==(const ResourceGroup&, const ResourceGroup&) = default;
};

// User penalty for placing an activity at `start`. An empty `selection`
// applies to every resource selection at that start; an exact
// (start, selection) entry takes precedence over the start-only one.
struct LocationPreference {
  int start = 0;
  std::vector<std::string> selection;
  double penalty = 0.0;

  friend bool operator==(const LocationPreference&,
                         const LocationPreference&) = default;
};

struct Activity {
  std::string id;
  std::string name;
  int duration = 1;
  TimePreference marks;
  std::vector<ResourceGroup> groups;
  std::vector<LocationPreference> location_prefs;

  friend bool operator==(const Activity&, const Activity&) = default;
};

enum class DependencyKind : std::uint8_t { kBefore, kMeets, kConcurrent };

// before:     end(first) <= start(second)
// meets:      end(first) == start(second)
// concurrent: start(first) == start(second)
// where end(a) = start(a) + duration(a).
struct Dependency {
  DependencyKind kind = DependencyKind::kBefore;
  std::string first;
  std::string second;

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

struct ProblemDesc {
  TimeGrid grid;
  std::vector<Resource> resources;
  std::vector<Activity> activities;
  std::vector<Dependency> dependencies;

  friend bool operator==(const ProblemDesc&, const ProblemDesc&) = default;
};

std::string_view ToString(SlotMark mark);
std::string_view ToString(GroupMode mode);
std::string_view ToString(DependencyKind kind);
std::optional<DependencyKind> ParseDependencyKind(std::string_view text);
std::optional<GroupMode> ParseGroupMode(std::string_view text);

bool DependencySatisfied(DependencyKind kind, int first_start,
                         int first_duration, int second_start,
                         int second_duration);

// A candidate placement: a start slot and one of the activity's resource
// selections (an index into Problem::selections(activity)).
struct Location {
  int start = 0;
  SelectionIndex selection = 0;

  friend auto operator<=>(const Location&, const Location&) = default;
};

struct ResolvedDependency {
  DependencyKind kind;
  ActivityIndex first;
  ActivityIndex second;
};

// Validated, indexed problem. Construction checks every model invariant and
// throws ModelError naming the offending element.
class Problem {
 public:
  explicit Problem(ProblemDesc desc);

  const ProblemDesc& desc() const { return desc_; }
  const TimeGrid& grid() const { return desc_.grid; }
  int total_slots() const { return desc_.grid.total_slots(); }
  int num_activities() const {
    return static_cast<int>(desc_.activities.size());
  }
  int num_resources() const { return static_cast<int>(desc_.resources.size()); }

  const Activity& activity(ActivityIndex a) const { return desc_.activities[a]; }
  const Resource& resource(ResourceIndex r) const { return desc_.resources[r]; }
  int duration(ActivityIndex a) const { return desc_.activities[a].duration; }
  // Number of start slots that keep the activity inside the grid.
  int num_starts(ActivityIndex a) const {
    return total_slots() - duration(a) + 1;
  }

  std::optional<ActivityIndex> FindActivity(std::string_view id) const;
  std::optional<ResourceIndex> FindResource(std::string_view id) const;

  // Resource selections in deterministic order: the cartesian product over
  // groups in declaration order, members in declaration order, the last
  // disjunctive group varying fastest. Each selection lists its resources in
  // group declaration order.
  std::span<const std::vector<ResourceIndex>> selections(ActivityIndex a) const {
    return compiled_[a].selections;
  }
  const std::vector<ResourceIndex>& selection(ActivityIndex a,
                                              SelectionIndex s) const {
    return compiled_[a].selections[s];
  }
  // Same resources as selection(a, s), ascending by index.
  const std::vector<ResourceIndex>& sorted_selection(ActivityIndex a,
                                                     SelectionIndex s) const {
    return compiled_[a].sorted_selections[s];
  }
  int num_selections(ActivityIndex a) const {
    return static_cast<int>(compiled_[a].selections.size());
  }
  std::optional<SelectionIndex> FindSelection(
      ActivityIndex a, std::span<const ResourceIndex> resources) const;

  std::span<const ResolvedDependency> dependencies() const {
    return dependencies_;
  }
  // Indices into dependencies() that mention `a`.
  std::span<const int> dependencies_of(ActivityIndex a) const {
    return compiled_[a].dependencies;
  }

  // True iff `loc` has a valid selection and is inside the grid.
  bool ValidLocation(ActivityIndex a, const Location& loc) const;

  // Cached per-location tables; `loc` must be valid.
  bool hard_ok(ActivityIndex a, const Location& loc) const {
    return compiled_[a].hard_ok[TableIndex(a, loc)] != 0;
  }
  int soft_count(ActivityIndex a, const Location& loc) const {
    return compiled_[a].soft[TableIndex(a, loc)];
  }
  double user_penalty(ActivityIndex a, const Location& loc) const {
    const auto& table = compiled_[a].penalty;
    return table.empty() ? 0.0 : table[TableIndex(a, loc)];
  }

  SlotMark activity_mark(ActivityIndex a, int slot) const {
    return desc_.activities[a].marks[slot];
  }
  SlotMark resource_mark(ResourceIndex r, int slot) const {
    return desc_.resources[r].marks[slot];
  }

 private:
  struct Compiled {
    std::vector<std::vector<ResourceIndex>> selections;
    std::vector<std::vector<ResourceIndex>> sorted_selections;
    std::vector<int> dependencies;
    // Indexed by selection * num_starts + start.
    std::vector<std::uint8_t> hard_ok;
    std::vector<std::int16_t> soft;
    std::vector<double> penalty;  // empty when the activity has no prefs
  };

  std::size_t TableIndex(ActivityIndex a, const Location& loc) const {
    return static_cast<std::size_t>(loc.selection) * num_starts(a) + loc.start;
  }
  void Validate();
  void CompileActivity(ActivityIndex a);

  ProblemDesc desc_;
  std::unordered_map<std::string, ActivityIndex> activity_index_;
  std::unordered_map<std::string, ResourceIndex> resource_index_;
  std::vector<ResolvedDependency> dependencies_;
  std::vector<Compiled> compiled_;
};

// Partial assignment activity -> Location plus fixed flags. A plain value;
// soundness is checked by CheckSchedule, not enforced on mutation.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(int num_activities)
      : locations_(num_activities), fixed_(num_activities, false) {}

  int size() const { return static_cast<int>(locations_.size()); }
  bool assigned(ActivityIndex a) const { return locations_[a].has_value(); }
  const std::optional<Location>& location(ActivityIndex a) const {
    return locations_[a];
  }
  bool fixed(ActivityIndex a) const { return fixed_[a]; }
  int num_assigned() const { return num_assigned_; }

  void Assign(ActivityIndex a, const Location& loc);
  // Also clears the fixed flag.
  void Unassign(ActivityIndex a);
  // Requires `a` to be assigned when fixing.
  void SetFixed(ActivityIndex a, bool fixed);

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<std::optional<Location>> locations_;
  std::vector<bool> fixed_;
  int num_assigned_ = 0;
};

// Resource x slot occupancy of a schedule without resource overlaps.
class Occupancy {
 public:
  Occupancy() = default;
  // Throws ContractViolation if two assigned activities share a cell or a
  // location is invalid.
  Occupancy(const Problem& problem, const Schedule& schedule);

  ActivityIndex at(ResourceIndex r, int slot) const {
    return cells_[static_cast<std::size_t>(r) * total_slots_ + slot];
  }
  void Add(const Problem& problem, ActivityIndex a, const Location& loc);
  void Remove(const Problem& problem, ActivityIndex a, const Location& loc);

 private:
  ActivityIndex& cell(ResourceIndex r, int slot) {
    return cells_[static_cast<std::size_t>(r) * total_slots_ + slot];
  }

  int total_slots_ = 0;
  std::vector<ActivityIndex> cells_;
};

}  // namespace itt

#endif  // ITT_MODEL_H_
