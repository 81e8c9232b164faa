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

// Iterative forward search over sound partial schedules.
//
// Each iteration picks an unscheduled activity (the "worst" one under a
// weighted score, optionally among a random sample), picks a location for it
// (the best under a second weighted score, randomized among near-best
// candidates and filtered by a tabu list), places it there and evicts
// whatever conflicts. The schedule is sound after every iteration.

#ifndef ITT_SEARCH_H_
#define ITT_SEARCH_H_

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "itt/model.h"

namespace itt {

enum class ActivityStrategy : std::uint8_t {
  kRandom,    // uniform draw, no scoring
  kSampled,   // min score over a Bernoulli(sample_probability) sample
  kFullScan,  // min score over every unscheduled activity
};

enum class LocationRule : std::uint8_t {
  kThreshold,  // uniform over candidates within factor x best score
  kBestFive,   // uniform over the five best candidates
};

std::string_view ToString(ActivityStrategy strategy);
std::string_view ToString(LocationRule rule);
std::optional<ActivityStrategy> ParseActivityStrategy(std::string_view text);
std::optional<LocationRule> ParseLocationRule(std::string_view text);

struct HeuristicWeights {
  // Activity score:
  //   -w[0] * removals - w[1] * dependencies + w[2] * places
  //   + w[3] * conflict-free places
  std::array<double, 4> activity = {3.0, 1.0, 0.05, 0.2};
  // Location score:
  //   w[0] * conflicts + w[1] * repeated evictions
  //   + w[2] * conflicts that cannot be rescheduled + w[3] * soft violations
  //   + w[4] * distance from previous location + w[5] * user penalty
  std::array<double, 6> location = {10.0, 3.0, 6.0, 1.0, 0.1, 1.0};
  double sample_probability = 0.2;
  double location_group_factor = 2.0;
  int tabu_length = 20;
  int max_iterations = 20000;
  // Above this many candidates, the expensive reschedulability term is only
  // evaluated for candidates whose lower bound can still reach the group.
  int prefilter_threshold = 200;
  ActivityStrategy activity_strategy = ActivityStrategy::kSampled;
  LocationRule location_rule = LocationRule::kThreshold;

  // Throws std::invalid_argument on negative or non-finite values.
  void Validate() const;

  friend bool operator==(const HeuristicWeights&,
                         const HeuristicWeights&) = default;
};

struct ActivityStats {
  int n_removed = 0;
  int n_deps = 0;
  int n_places = 0;
  int n_places_no_conflict = 0;

  friend bool operator==(const ActivityStats&, const ActivityStats&) = default;
};

struct LocationStats {
  int n_conflicts = 0;
  int n_repeat_evict = 0;
  int n_conflict_no_resched = 0;
  int n_soft = 0;
  double dist_prev = 0.0;
  double user_pref = 0.0;

  friend bool operator==(const LocationStats&, const LocationStats&) = default;
};

struct ScoredActivity {
  double score = 0.0;
  ActivityStats stats;
};

struct ScoredLocation {
  Location location;
  double score = 0.0;
  LocationStats stats;
};

enum class TabuStatus : std::uint8_t { kFree, kOnce, kTwice };

// FIFO of recent (activity, location) placements.
class TabuList {
 public:
  struct Entry {
    ActivityIndex activity;
    Location location;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit TabuList(int capacity = 0) : capacity_(capacity) {}

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::deque<Entry>& entries() const { return entries_; }

  int Count(ActivityIndex a, const Location& loc) const;
  TabuStatus Status(ActivityIndex a, const Location& loc) const;
  // Drops the oldest entry at capacity. Throws ContractViolation if the pair
  // would then occur more than twice.
  void Push(ActivityIndex a, const Location& loc);
  void SetCapacity(int capacity);
  // Rewrites activity indices; entries mapped to kNoActivity are dropped.
  void Remap(const std::vector<ActivityIndex>& old_to_new);

  friend bool operator==(const TabuList&, const TabuList&) = default;

 private:
  int capacity_;
  std::deque<Entry> entries_;
};

TabuStatus TabuStatusOf(const TabuList& tabu, ActivityIndex a,
                        const Location& loc);

struct ActivityHistory {
  std::optional<Location> last_location;
  ActivityIndex last_evictor = kNoActivity;
  int n_removed = 0;

  friend bool operator==(const ActivityHistory&,
                         const ActivityHistory&) = default;
};

// Best schedule seen so far, keyed by (scheduled count, -soft violations).
struct BestSnapshot {
  Schedule schedule;
  int scheduled = 0;
  int soft_total = 0;
  int iteration = 0;

  bool Improves(int other_scheduled, int other_soft) const {
    return other_scheduled > scheduled ||
           (other_scheduled == scheduled && other_soft < soft_total);
  }
};

// Everything one solver run owns. Mutate the schedule only through
// AssignActivity/UnassignActivity so occupancy, the unscheduled list and the
// soft-violation total stay in sync.
struct SolverState {
  SolverState(std::shared_ptr<const Problem> problem, HeuristicWeights weights,
              std::uint64_t seed);
  // `initial` must be sound; throws ContractViolation otherwise.
  SolverState(std::shared_ptr<const Problem> problem, Schedule initial,
              HeuristicWeights weights, std::uint64_t seed);

  std::shared_ptr<const Problem> problem;
  Schedule schedule;
  Occupancy occupancy;
  std::vector<ActivityIndex> unscheduled;  // ascending
  TabuList tabu;
  HeuristicWeights weights;
  std::vector<ActivityHistory> history;
  std::mt19937_64 rng;
  int iteration = 0;
  int soft_total = 0;
  BestSnapshot best;
  // Run CheckSchedule after every iteration and throw on violations.
  bool verify = false;
  // Wall time spent in activity selection; not part of any report.
  std::chrono::nanoseconds selection_time{0};

  const Problem& model() const { return *problem; }
  int num_scheduled() const { return schedule.num_assigned(); }

  void AssignActivity(ActivityIndex a, const Location& loc);
  void UnassignActivity(ActivityIndex a);
  // Recomputes occupancy, unscheduled and soft_total from `schedule`, which
  // must have no resource overlaps.
  void Rebuild();
  // Replaces the best snapshot if the current schedule improves on it.
  void UpdateBest();
  void ResetBest();
};

struct IterationReport {
  int iteration = 0;
  ActivityIndex activity = kNoActivity;
  int candidates = 0;
  std::optional<ScoredLocation> chosen;  // empty: skipped, no location
  std::vector<ActivityIndex> evicted;
  int unscheduled = 0;

  bool skipped() const { return !chosen.has_value(); }
};

// `a` must be unscheduled.
ScoredActivity ActivityScore(const SolverState& state, ActivityIndex a);

ActivityIndex SelectActivity(SolverState& state);

// `loc` must be one of EnumerateLocations for `a`.
ScoredLocation LocationScore(const SolverState& state, ActivityIndex a,
                             const Location& loc);

struct LocationChoice {
  int candidates = 0;                   // |EnumerateLocations|
  std::optional<ScoredLocation> chosen;  // empty when nothing survives tabu
};

LocationChoice SelectLocation(SolverState& state, ActivityIndex a);

// Places `a` at `loc`, evicting its conflicts. Returns the evicted set.
std::vector<ActivityIndex> Place(SolverState& state, ActivityIndex a,
                                 const Location& loc);

IterationReport Iterate(SolverState& state);

using IterationObserver = std::function<void(const IterationReport&)>;

// Iterates until every activity is scheduled, state.iteration reaches
// max_iterations, or `stop` becomes true.
void Solve(SolverState& state, const std::atomic<bool>* stop = nullptr,
           const IterationObserver& observer = {});

}  // namespace itt

#endif  // ITT_SEARCH_H_
