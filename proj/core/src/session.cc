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

#include "itt/session.h"

#include <algorithm>
#include <map>
#include <utility>

#include "itt/feasibility.h"

namespace itt {
namespace {

class EditRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ActivityIndex ResolveActivity(const SolverState& state, const std::string& id) {
  auto a = state.model().FindActivity(id);
  if (!a) throw EditRejected("unknown activity '" + id + "'");
  return *a;
}

// Installs an edited problem description. `old_to_new` maps current activity
// indices to indices in `desc` (kNoActivity for removed ones); new activities
// start unscheduled. Occupancy is left stale; Repair rebuilds it.
void ReplaceProblem(SolverState& state, ProblemDesc desc,
                    const std::vector<ActivityIndex>& old_to_new) {
  auto problem = std::make_shared<const Problem>(std::move(desc));
  const int n = problem->num_activities();
  Schedule schedule(n);
  std::vector<ActivityHistory> history(n);
  for (ActivityIndex a = 0; a < static_cast<int>(old_to_new.size()); ++a) {
    const ActivityIndex b = old_to_new[a];
    if (b == kNoActivity) continue;
    history[b] = state.history[a];
    if (history[b].last_evictor != kNoActivity) {
      history[b].last_evictor = old_to_new[history[b].last_evictor];
    }
    if (const auto& loc = state.schedule.location(a)) {
      schedule.Assign(b, *loc);
      schedule.SetFixed(b, state.schedule.fixed(a));
    }
  }
  state.tabu.Remap(old_to_new);
  state.problem = std::move(problem);
  state.schedule = std::move(schedule);
  state.history = std::move(history);
}

std::vector<ActivityIndex> Identity(int n) {
  std::vector<ActivityIndex> map(n);
  for (int i = 0; i < n; ++i) map[i] = i;
  return map;
}

std::vector<std::string> Names(const Problem& problem,
                               const std::vector<ActivityIndex>& activities) {
  std::vector<std::string> out;
  out.reserve(activities.size());
  for (ActivityIndex a : activities) out.push_back(problem.activity(a).id);
  return out;
}

void RecordRemoval(SolverState& state, ActivityIndex a, ActivityIndex evictor) {
  ActivityHistory& h = state.history[a];
  h.last_location = state.schedule.location(a);
  h.last_evictor = evictor;
  ++h.n_removed;
}

std::vector<ActivityIndex> ApplyPlaceAndFix(SolverState& state,
                                            const edit::PlaceAndFix& e) {
  const Problem& p = state.model();
  const ActivityIndex a = ResolveActivity(state, e.activity);
  std::vector<ResourceIndex> resources;
  for (const std::string& id : e.resources) {
    auto r = p.FindResource(id);
    if (!r) throw EditRejected("unknown resource '" + id + "'");
    resources.push_back(*r);
  }
  auto selection = p.FindSelection(a, resources);
  if (!selection) {
    throw EditRejected("resources do not form a valid selection for '" +
                       e.activity + "'");
  }
  const Location loc{e.start, *selection};
  if (!p.ValidLocation(a, loc)) {
    throw EditRejected("start " + std::to_string(e.start) +
                       " does not fit '" + e.activity + "' in the grid");
  }
  if (!p.hard_ok(a, loc)) {
    throw EditRejected("location covers a hard-forbidden slot");
  }
  if (state.schedule.assigned(a)) {
    state.history[a].last_location = state.schedule.location(a);
    state.UnassignActivity(a);
  }
  auto evicted = Conflicts(p, state.schedule, state.occupancy, a, loc);
  for (ActivityIndex c : evicted) {
    if (state.schedule.fixed(c)) {
      throw EditRejected("conflicts with fixed activity '" +
                         p.activity(c).id + "'");
    }
  }
  for (ActivityIndex c : evicted) {
    RecordRemoval(state, c, a);
    state.UnassignActivity(c);
  }
  state.AssignActivity(a, loc);
  state.schedule.SetFixed(a, true);
  return evicted;
}

}  // namespace

std::string_view EditName(const Edit& e) {
  return std::visit(
      Overloaded{
          [](const edit::PlaceAndFix&) { return "place_and_fix"; },
          [](const edit::Unfix&) { return "unfix"; },
          [](const edit::Detach&) { return "detach"; },
          [](const edit::SetDuration&) { return "set_duration"; },
          [](const edit::AddDependency&) { return "add_dependency"; },
          [](const edit::RemoveDependency&) { return "remove_dependency"; },
          [](const edit::SetSlotMark&) { return "set_slot_mark"; },
          [](const edit::AddActivity&) { return "add_activity"; },
          [](const edit::RemoveActivity&) { return "remove_activity"; },
          [](const edit::SetWeights&) { return "set_weights"; },
      },
      e);
}

std::vector<ActivityIndex> Repair(SolverState& state) {
  const Problem& p = state.model();
  std::vector<ActivityIndex> detached;
  for (;;) {
    const auto violations = CheckSchedule(p, state.schedule);
    if (violations.empty()) break;
    std::map<ActivityIndex, int> counts;
    for (const Violation& v : violations) {
      bool movable = false;
      for (ActivityIndex a : v.activities) {
        if (!state.schedule.fixed(a)) {
          ++counts[a];
          movable = true;
        }
      }
      if (!movable) throw RepairRollback(Describe(p, v));
    }
    std::vector<ActivityIndex> victims;
    int best_count = -1;
    int best_deps = 0;
    for (const auto& [a, count] : counts) {
      const int deps = static_cast<int>(p.dependencies_of(a).size());
      if (count > best_count || (count == best_count && deps < best_deps)) {
        victims.assign(1, a);
        best_count = count;
        best_deps = deps;
      } else if (count == best_count && deps == best_deps) {
        victims.push_back(a);
      }
    }
    ActivityIndex victim = victims.front();
    if (victims.size() > 1) {
      victim = victims[std::uniform_int_distribution<std::size_t>(
          0, victims.size() - 1)(state.rng)];
    }
    ActivityHistory& h = state.history[victim];
    h.last_location = state.schedule.location(victim);
    ++h.n_removed;
    state.schedule.Unassign(victim);
    detached.push_back(victim);
  }
  state.Rebuild();
  std::sort(detached.begin(), detached.end());
  return detached;
}

RepairReport ApplyEdit(SolverState& state, const Edit& e) {
  RepairReport report;
  report.edit = std::string(EditName(e));
  SolverState backup = state;
  try {
    std::vector<ActivityIndex> evicted;
    std::visit(
        Overloaded{
            [&](const edit::PlaceAndFix& x) {
              evicted = ApplyPlaceAndFix(state, x);
            },
            [&](const edit::Unfix& x) {
              const ActivityIndex a = ResolveActivity(state, x.activity);
              if (state.schedule.assigned(a)) state.schedule.SetFixed(a, false);
            },
            [&](const edit::Detach& x) {
              const ActivityIndex a = ResolveActivity(state, x.activity);
              if (state.schedule.assigned(a)) {
                state.history[a].last_location = state.schedule.location(a);
                state.UnassignActivity(a);
              }
            },
            [&](const edit::SetDuration& x) {
              const ActivityIndex a = ResolveActivity(state, x.activity);
              ProblemDesc desc = state.model().desc();
              desc.activities[a].duration = x.duration;
              ReplaceProblem(state, std::move(desc),
                             Identity(state.model().num_activities()));
            },
            [&](const edit::AddDependency& x) {
              ProblemDesc desc = state.model().desc();
              desc.dependencies.push_back(x.dependency);
              ReplaceProblem(state, std::move(desc),
                             Identity(state.model().num_activities()));
            },
            [&](const edit::RemoveDependency& x) {
              ProblemDesc desc = state.model().desc();
              auto it = std::find(desc.dependencies.begin(),
                                  desc.dependencies.end(), x.dependency);
              if (it == desc.dependencies.end()) {
                throw EditRejected("no such dependency");
              }
              desc.dependencies.erase(it);
              ReplaceProblem(state, std::move(desc),
                             Identity(state.model().num_activities()));
            },
            [&](const edit::SetSlotMark& x) {
              const Problem& p = state.model();
              if (x.slot < 0 || x.slot >= p.total_slots()) {
                throw EditRejected("slot " + std::to_string(x.slot) +
                                   " outside the grid");
              }
              ProblemDesc desc = p.desc();
              if (auto r = p.FindResource(x.entity)) {
                desc.resources[*r].marks[x.slot] = x.mark;
              } else if (auto a = p.FindActivity(x.entity)) {
                desc.activities[*a].marks[x.slot] = x.mark;
              } else {
                throw EditRejected("unknown entity '" + x.entity + "'");
              }
              ReplaceProblem(state, std::move(desc),
                             Identity(p.num_activities()));
            },
            [&](const edit::AddActivity& x) {
              ProblemDesc desc = state.model().desc();
              desc.activities.push_back(x.activity);
              ReplaceProblem(state, std::move(desc),
                             Identity(state.model().num_activities()));
            },
            [&](const edit::RemoveActivity& x) {
              const ActivityIndex a = ResolveActivity(state, x.activity);
              ProblemDesc desc = state.model().desc();
              desc.activities.erase(desc.activities.begin() + a);
              std::erase_if(desc.dependencies, [&](const Dependency& d) {
                return d.first == x.activity || d.second == x.activity;
              });
              std::vector<ActivityIndex> map =
                  Identity(state.model().num_activities());
              map[a] = kNoActivity;
              for (std::size_t i = a + 1; i < map.size(); ++i) --map[i];
              ReplaceProblem(state, std::move(desc), map);
            },
            [&](const edit::SetWeights& x) {
              try {
                x.weights.Validate();
              } catch (const std::invalid_argument& err) {
                throw EditRejected(err.what());
              }
              state.weights = x.weights;
              state.tabu.SetCapacity(x.weights.tabu_length);
            },
        },
        e);
    report.evicted = Names(state.model(), evicted);
    report.detached = Names(state.model(), Repair(state));
    state.ResetBest();
  } catch (const EditRejected& err) {
    state = std::move(backup);
    report.accepted = false;
    report.reason = err.what();
  } catch (const ModelError& err) {
    state = std::move(backup);
    report.accepted = false;
    report.reason = err.what();
  } catch (const RepairRollback& err) {
    state = std::move(backup);
    report.accepted = false;
    report.rolled_back = true;
    report.reason = std::string("violation among fixed activities: ") +
                    err.what();
  }
  report.scheduled = state.num_scheduled();
  return report;
}

Snapshot TakeSnapshot(const SolverState& state, std::uint64_t version,
                      int edits_applied) {
  Snapshot s;
  s.version = version;
  s.iteration = state.iteration;
  s.edits_applied = edits_applied;
  s.problem = state.problem;
  s.schedule = state.schedule;
  s.unscheduled = state.unscheduled;
  s.soft_total = state.soft_total;
  s.best_scheduled = state.best.scheduled;
  s.best_soft_total = state.best.soft_total;
  s.n_removed.reserve(state.history.size());
  for (const ActivityHistory& h : state.history) s.n_removed.push_back(h.n_removed);
  return s;
}

Session::Session(std::shared_ptr<const Problem> problem,
                 HeuristicWeights weights, std::uint64_t seed)
    : state_(std::move(problem), weights, seed) {}

Session::Session(SolverState state) : state_(std::move(state)) {}

RepairReport Session::Apply(const Edit& e) {
  RepairReport report = ApplyEdit(state_, e);
  if (report.accepted) {
    ++version_;
    ++edits_applied_;
  }
  return report;
}

std::future<RepairReport> Session::Enqueue(Edit e) {
  std::lock_guard lock(queue_mu_);
  queue_.push_back({std::move(e), {}});
  return queue_.back().reply.get_future();
}

bool Session::HasPendingEdits() const {
  std::lock_guard lock(queue_mu_);
  return !queue_.empty();
}

int Session::DrainEdits() {
  int applied = 0;
  for (;;) {
    Pending pending;
    {
      std::lock_guard lock(queue_mu_);
      if (queue_.empty()) break;
      pending = std::move(queue_.front());
      queue_.pop_front();
    }
    pending.reply.set_value(Apply(pending.edit));
    ++applied;
  }
  return applied;
}

IterationReport Session::Step() {
  DrainEdits();
  IterationReport report = Iterate(state_);
  ++version_;
  return report;
}

std::vector<IterationReport> Session::Step(int n) {
  std::vector<IterationReport> reports;
  for (int i = 0; i < n; ++i) {
    DrainEdits();
    if (state_.unscheduled.empty()) break;
    reports.push_back(Iterate(state_));
    ++version_;
  }
  return reports;
}

void Session::Run(const std::atomic<bool>* stop,
                  const IterationObserver& observer) {
  for (;;) {
    DrainEdits();
    if (state_.unscheduled.empty() ||
        state_.iteration >= state_.weights.max_iterations ||
        (stop && stop->load(std::memory_order_relaxed))) {
      break;
    }
    IterationReport report = Iterate(state_);
    ++version_;
    if (observer) observer(report);
  }
}

Snapshot Session::snapshot() const {
  return TakeSnapshot(state_, version_, edits_applied_);
}

}  // namespace itt
