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

// User edits on a running solver state, soundness repair after each edit,
// and point-in-time snapshots.
//
// Every edit is all-or-nothing: it is either applied and followed by a repair
// that leaves the schedule sound, or rejected with the state left exactly as
// it was (including the random generator).

#ifndef ITT_SESSION_H_
#define ITT_SESSION_H_

#include <cstdint>
#include <deque>
#include <future>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "itt/model.h"
#include "itt/search.h"

namespace itt {

namespace edit {

// Manually place an activity and pin it there.
struct PlaceAndFix {
  std::string activity;
  int start = 0;
  std::vector<std::string> resources;
};
struct Unfix {
  std::string activity;
};
// Remove an activity from the schedule (it becomes unscheduled).
struct Detach {
  std::string activity;
};
struct SetDuration {
  std::string activity;
  int duration = 1;
};
struct AddDependency {
  Dependency dependency;
};
struct RemoveDependency {
  Dependency dependency;
};
// `entity` is a resource or activity id.
struct SetSlotMark {
  std::string entity;
  int slot = 0;
  SlotMark mark = SlotMark::kNeutral;
};
struct AddActivity {
  Activity activity;
};
struct RemoveActivity {
  std::string activity;
};
struct SetWeights {
  HeuristicWeights weights;
};

}  // namespace edit

using Edit = std::variant<edit::PlaceAndFix, edit::Unfix, edit::Detach,
                          edit::SetDuration, edit::AddDependency,
                          edit::RemoveDependency, edit::SetSlotMark,
                          edit::AddActivity, edit::RemoveActivity,
                          edit::SetWeights>;

std::string_view EditName(const Edit& edit);

struct RepairReport {
  std::string edit;
  bool accepted = true;
  bool rolled_back = false;  // repair needed to move a fixed activity
  std::string reason;        // set when not accepted
  std::vector<std::string> evicted;   // displaced by a manual placement
  std::vector<std::string> detached;  // removed by repair
  int scheduled = 0;
};

// Thrown by Repair when a violation involves fixed activities only.
class RepairRollback : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Detaches non-fixed activities taking part in violations, most-violating
// first (ties: fewer dependencies, then random), until the schedule is sound.
// Leaves occupancy and bookkeeping rebuilt. Throws RepairRollback if some
// violation can only be resolved by moving a fixed activity.
std::vector<ActivityIndex> Repair(SolverState& state);

RepairReport ApplyEdit(SolverState& state, const Edit& edit);

struct Snapshot {
  std::uint64_t version = 0;  // bumps on every iteration and applied edit
  int iteration = 0;
  int edits_applied = 0;
  std::shared_ptr<const Problem> problem;
  Schedule schedule;
  std::vector<ActivityIndex> unscheduled;
  int soft_total = 0;
  int best_scheduled = 0;
  int best_soft_total = 0;
  std::vector<int> n_removed;
};

Snapshot TakeSnapshot(const SolverState& state, std::uint64_t version = 0,
                      int edits_applied = 0);

// A solver state plus a queue of pending edits. The owner drives iterations;
// producers on other threads may Enqueue edits, which are applied at the next
// iteration boundary.
class Session {
 public:
  Session(std::shared_ptr<const Problem> problem, HeuristicWeights weights,
          std::uint64_t seed);
  explicit Session(SolverState state);

  const SolverState& state() const { return state_; }
  SolverState& mutable_state() { return state_; }

  // Applies immediately; the caller must own the session.
  RepairReport Apply(const Edit& edit);

  // Thread-safe.
  std::future<RepairReport> Enqueue(Edit edit);
  bool HasPendingEdits() const;
  // Applies queued edits in arrival order; returns how many were applied.
  int DrainEdits();

  // Drains edits then runs one iteration. Requires unscheduled activities.
  IterationReport Step();
  // Up to `n` iterations, stopping early once everything is scheduled.
  std::vector<IterationReport> Step(int n);
  // Solve loop with edits drained at every iteration boundary.
  void Run(const std::atomic<bool>* stop = nullptr,
           const IterationObserver& observer = {});

  Snapshot snapshot() const;
  std::uint64_t version() const { return version_; }
  int edits_applied() const { return edits_applied_; }

 private:
  struct Pending {
    Edit edit;
    std::promise<RepairReport> reply;
  };

  SolverState state_;
  std::uint64_t version_ = 0;
  int edits_applied_ = 0;
  mutable std::mutex queue_mu_;
  std::deque<Pending> queue_;
};

}  // namespace itt

#endif  // ITT_SESSION_H_
