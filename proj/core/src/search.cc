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

#include "itt/search.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "itt/feasibility.h"

namespace itt {
namespace {

template <typename T>
std::size_t UniformIndex(std::mt19937_64& rng, const std::vector<T>& items) {
  if (items.size() == 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng);
}

int SymmetricDifference(const std::vector<ResourceIndex>& a,
                        const std::vector<ResourceIndex>& b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<int>(a.size() + b.size() - 2 * common);
}

bool Contains(const std::vector<ActivityIndex>& sorted, ActivityIndex a) {
  return std::binary_search(sorted.begin(), sorted.end(), a);
}

// Everything but the reschedulability term, which is filled in later.
LocationStats CheapStats(const SolverState& state, ActivityIndex a,
                         const Location& loc,
                         const std::vector<ActivityIndex>& conflicts) {
  const Problem& p = state.model();
  LocationStats stats;
  stats.n_conflicts = static_cast<int>(conflicts.size());
  for (ActivityIndex c : conflicts) {
    if (state.history[c].last_evictor == a) ++stats.n_repeat_evict;
  }
  stats.n_soft = p.soft_count(a, loc);
  if (const auto& prev = state.history[a].last_location) {
    stats.dist_prev = std::abs(loc.start - prev->start);
    if (p.ValidLocation(a, *prev)) {
      stats.dist_prev +=
          SymmetricDifference(p.sorted_selection(a, loc.selection),
                              p.sorted_selection(a, prev->selection));
    }
  }
  stats.user_pref = p.user_penalty(a, loc);
  return stats;
}

double Weighted(const HeuristicWeights& w, const LocationStats& s) {
  return w.location[0] * s.n_conflicts + w.location[1] * s.n_repeat_evict +
         w.location[2] * s.n_conflict_no_resched + w.location[3] * s.n_soft +
         w.location[4] * s.dist_prev + w.location[5] * s.user_pref;
}

// Whether `c` would have a conflict-free hard-feasible location once `a` sits
// at `loc` and every activity in `removed` (sorted) has left the schedule.
bool Reschedulable(const SolverState& state, ActivityIndex c, ActivityIndex a,
                   const Location& loc,
                   const std::vector<ActivityIndex>& removed) {
  const Problem& p = state.model();
  const auto& a_resources = p.sorted_selection(a, loc.selection);
  const int a_start = loc.start;
  const int a_end = loc.start + p.duration(a);
  const int dur = p.duration(c);
  const int starts = p.num_starts(c);
  const int sels = p.num_selections(c);

  auto start_of = [&](ActivityIndex x) -> std::optional<int> {
    if (x == a) return loc.start;
    if (Contains(removed, x)) return std::nullopt;
    const auto& l = state.schedule.location(x);
    if (!l) return std::nullopt;
    return l->start;
  };

  for (int start = 0; start < starts; ++start) {
    bool deps_ok = true;
    for (int d : p.dependencies_of(c)) {
      const ResolvedDependency& dep = p.dependencies()[d];
      const bool c_first = dep.first == c;
      const ActivityIndex partner = c_first ? dep.second : dep.first;
      const auto ps = start_of(partner);
      if (!ps) continue;
      const bool ok =
          c_first ? DependencySatisfied(dep.kind, start, dur, *ps,
                                        p.duration(partner))
                  : DependencySatisfied(dep.kind, *ps, p.duration(partner),
                                        start, dur);
      if (!ok) {
        deps_ok = false;
        break;
      }
    }
    if (!deps_ok) continue;

    for (SelectionIndex s = 0; s < sels; ++s) {
      const Location cand{start, s};
      if (!p.hard_ok(c, cand)) continue;
      bool free = true;
      for (ResourceIndex r : p.selection(c, s)) {
        const bool shared = std::binary_search(a_resources.begin(),
                                               a_resources.end(), r);
        for (int t = start; t < start + dur; ++t) {
          if (shared && t >= a_start && t < a_end) {
            free = false;
            break;
          }
          const ActivityIndex occ = state.occupancy.at(r, t);
          if (occ == kNoActivity || occ == c || occ == a) continue;
          if (!Contains(removed, occ)) {
            free = false;
            break;
          }
        }
        if (!free) break;
      }
      if (free) return true;
    }
  }
  return false;
}

int CountNotReschedulable(const SolverState& state, ActivityIndex a,
                          const Location& loc,
                          const std::vector<ActivityIndex>& conflicts) {
  int n = 0;
  for (ActivityIndex c : conflicts) {
    if (!Reschedulable(state, c, a, loc, conflicts)) ++n;
  }
  return n;
}

// Where each displaced activity could go, built lazily once per
// SelectLocation call and equivalent to Reschedulable. Only options whose
// blockers could all be evicted by some candidate of `a` are kept.
class ReschedIndex {
 public:
  static constexpr int kMaxBlockers = 8;

  ReschedIndex(const SolverState& state, ActivityIndex a,
               const std::vector<ActivityIndex>& evictable, int max_conflicts)
      : state_(state),
        p_(state.model()),
        a_(a),
        evictable_(p_.num_activities(), false),
        max_blockers_(std::min(max_conflicts, kMaxBlockers)),
        slot_(p_.num_activities(), -1) {
    for (ActivityIndex x : evictable) evictable_[x] = true;
  }

  bool Reschedulable(ActivityIndex c, const Location& loc,
                     const std::vector<ActivityIndex>& removed) {
    if (static_cast<int>(removed.size()) > kMaxBlockers) {
      return itt::Reschedulable(state_, c, a_, loc, removed);
    }
    const Entry& e = Get(c);
    for (std::size_t i = 0; i < e.num_free; ++i) {
      if (Fits(c, e.options[i].location, loc, removed)) return true;
    }
    const auto first = e.options.begin() + e.num_free;
    for (ActivityIndex r : removed) {
      auto it = std::lower_bound(
          first, e.options.end(), r,
          [](const Option& o, ActivityIndex x) { return o.blockers[0] < x; });
      for (; it != e.options.end() && it->blockers[0] == r; ++it) {
        if (it->n > static_cast<int>(removed.size())) continue;
        bool cleared = true;
        for (int i = 1; i < it->n && cleared; ++i) {
          cleared = Contains(removed, it->blockers[i]);
        }
        if (cleared && Fits(c, it->location, loc, removed)) return true;
      }
    }
    return false;
  }

 private:
  struct Option {
    Location location;
    int n = 0;
    std::array<ActivityIndex, kMaxBlockers> blockers;  // first n sorted
  };
  struct Entry {
    std::vector<Option> options;  // free ones first, then by blockers[0]
    std::size_t num_free = 0;
  };

  const Entry& Get(ActivityIndex c) {
    if (slot_[c] >= 0) return entries_[slot_[c]];
    slot_[c] = static_cast<int>(entries_.size());
    Entry& e = entries_.emplace_back();
    const int dur = p_.duration(c);
    const int starts = p_.num_starts(c);
    const int sels = p_.num_selections(c);
    for (int start = 0; start < starts; ++start) {
      for (SelectionIndex s = 0; s < sels; ++s) {
        const Location cand{start, s};
        if (!p_.hard_ok(c, cand)) continue;
        Option o;
        o.location = cand;
        bool usable = true;
        for (ResourceIndex r : p_.selection(c, s)) {
          for (int t = start; t < start + dur && usable; ++t) {
            const ActivityIndex occ = state_.occupancy.at(r, t);
            if (occ == kNoActivity || occ == c || occ == a_) continue;
            if (std::find(o.blockers.begin(), o.blockers.begin() + o.n, occ) !=
                o.blockers.begin() + o.n) {
              continue;
            }
            if (o.n == max_blockers_ || !evictable_[occ]) {
              usable = false;
            } else {
              o.blockers[o.n++] = occ;
            }
          }
          if (!usable) break;
        }
        if (!usable) continue;
        std::sort(o.blockers.begin(), o.blockers.begin() + o.n);
        e.options.push_back(o);
      }
    }
    auto blocked = std::stable_partition(
        e.options.begin(), e.options.end(),
        [](const Option& o) { return o.n == 0; });
    e.num_free = static_cast<std::size_t>(blocked - e.options.begin());
    std::stable_sort(blocked, e.options.end(),
                     [](const Option& x, const Option& y) {
                       return x.blockers[0] < y.blockers[0];
                     });
    return e;
  }

  // Dependencies and overlap with `a` placed at `loc`.
  bool Fits(ActivityIndex c, const Location& cand, const Location& loc,
            const std::vector<ActivityIndex>& removed) const {
    const int dur = p_.duration(c);
    if (cand.start < loc.start + p_.duration(a_) &&
        loc.start < cand.start + dur) {
      const auto& mine = p_.sorted_selection(c, cand.selection);
      const auto& theirs = p_.sorted_selection(a_, loc.selection);
      std::size_t i = 0, j = 0;
      while (i < mine.size() && j < theirs.size()) {
        if (mine[i] == theirs[j]) return false;
        if (mine[i] < theirs[j]) {
          ++i;
        } else {
          ++j;
        }
      }
    }
    for (int d : p_.dependencies_of(c)) {
      const ResolvedDependency& dep = p_.dependencies()[d];
      const bool c_first = dep.first == c;
      const ActivityIndex partner = c_first ? dep.second : dep.first;
      int ps;
      if (partner == a_) {
        ps = loc.start;
      } else if (Contains(removed, partner)) {
        continue;
      } else if (const auto& l = state_.schedule.location(partner)) {
        ps = l->start;
      } else {
        continue;
      }
      const int pd = p_.duration(partner);
      const bool ok =
          c_first ? DependencySatisfied(dep.kind, cand.start, dur, ps, pd)
                  : DependencySatisfied(dep.kind, ps, pd, cand.start, dur);
      if (!ok) return false;
    }
    return true;
  }

  const SolverState& state_;
  const Problem& p_;
  const ActivityIndex a_;
  std::vector<bool> evictable_;
  const int max_blockers_;
  std::vector<int> slot_;
  std::vector<Entry> entries_;
};

void InsertSorted(std::vector<ActivityIndex>& v, ActivityIndex a) {
  auto it = std::lower_bound(v.begin(), v.end(), a);
  if (it == v.end() || *it != a) v.insert(it, a);
}

void EraseSorted(std::vector<ActivityIndex>& v, ActivityIndex a) {
  auto it = std::lower_bound(v.begin(), v.end(), a);
  if (it != v.end() && *it == a) v.erase(it);
}

}  // namespace

std::string_view ToString(ActivityStrategy strategy) {
  switch (strategy) {
    case ActivityStrategy::kRandom:
      return "random";
    case ActivityStrategy::kSampled:
      return "sampled";
    case ActivityStrategy::kFullScan:
      return "full";
  }
  return "?";
}

std::string_view ToString(LocationRule rule) {
  return rule == LocationRule::kThreshold ? "threshold" : "best5";
}

std::optional<ActivityStrategy> ParseActivityStrategy(std::string_view text) {
  if (text == "random") return ActivityStrategy::kRandom;
  if (text == "sampled") return ActivityStrategy::kSampled;
  if (text == "full" || text == "full-scan") return ActivityStrategy::kFullScan;
  return std::nullopt;
}

std::optional<LocationRule> ParseLocationRule(std::string_view text) {
  if (text == "threshold") return LocationRule::kThreshold;
  if (text == "best5") return LocationRule::kBestFive;
  return std::nullopt;
}

void HeuristicWeights::Validate() const {
  auto check = [](double w, const char* what) {
    if (!std::isfinite(w) || w < 0) {
      throw std::invalid_argument(std::string(what) +
                                  " must be finite and >= 0");
    }
  };
  for (double w : activity) check(w, "activity weight");
  for (double w : location) check(w, "location weight");
  if (!(sample_probability > 0 && sample_probability <= 1)) {
    throw std::invalid_argument("sample_probability must be in (0, 1]");
  }
  if (!std::isfinite(location_group_factor) || location_group_factor < 1) {
    throw std::invalid_argument("location_group_factor must be >= 1");
  }
  if (tabu_length < 0) throw std::invalid_argument("tabu_length must be >= 0");
  if (max_iterations < 0) {
    throw std::invalid_argument("max_iterations must be >= 0");
  }
  if (prefilter_threshold < 0) {
    throw std::invalid_argument("prefilter_threshold must be >= 0");
  }
}

int TabuList::Count(ActivityIndex a, const Location& loc) const {
  int n = 0;
  for (const Entry& e : entries_) {
    if (e.activity == a && e.location == loc) ++n;
  }
  return n;
}

TabuStatus TabuList::Status(ActivityIndex a, const Location& loc) const {
  const int n = Count(a, loc);
  if (n == 0) return TabuStatus::kFree;
  return n == 1 ? TabuStatus::kOnce : TabuStatus::kTwice;
}

void TabuList::Push(ActivityIndex a, const Location& loc) {
  if (capacity_ == 0) return;
  entries_.push_back({a, loc});
  while (static_cast<int>(entries_.size()) > capacity_) entries_.pop_front();
  if (Count(a, loc) > 2) {
    throw ContractViolation("tabu: pair placed more than twice");
  }
}

void TabuList::SetCapacity(int capacity) {
  capacity_ = std::max(0, capacity);
  while (static_cast<int>(entries_.size()) > capacity_) entries_.pop_front();
}

void TabuList::Remap(const std::vector<ActivityIndex>& old_to_new) {
  std::deque<Entry> kept;
  for (const Entry& e : entries_) {
    if (e.activity < 0 || e.activity >= static_cast<int>(old_to_new.size())) {
      continue;
    }
    const ActivityIndex mapped = old_to_new[e.activity];
    if (mapped != kNoActivity) kept.push_back({mapped, e.location});
  }
  entries_ = std::move(kept);
}

TabuStatus TabuStatusOf(const TabuList& tabu, ActivityIndex a,
                        const Location& loc) {
  return tabu.Status(a, loc);
}

SolverState::SolverState(std::shared_ptr<const Problem> problem_in,
                         HeuristicWeights weights_in, std::uint64_t seed)
    : SolverState(problem_in, Schedule(problem_in->num_activities()),
                  weights_in, seed) {}

SolverState::SolverState(std::shared_ptr<const Problem> problem_in,
                         Schedule initial, HeuristicWeights weights_in,
                         std::uint64_t seed)
    : problem(std::move(problem_in)),
      schedule(std::move(initial)),
      tabu(weights_in.tabu_length),
      weights(weights_in),
      history(problem->num_activities()),
      rng(seed) {
  weights.Validate();
  if (schedule.size() != problem->num_activities()) {
    throw ContractViolation("initial schedule size does not match problem");
  }
  if (!CheckSchedule(*problem, schedule).empty()) {
    throw ContractViolation("initial schedule is not sound");
  }
  Rebuild();
  ResetBest();
}

void SolverState::AssignActivity(ActivityIndex a, const Location& loc) {
  if (schedule.assigned(a)) UnassignActivity(a);
  occupancy.Add(*problem, a, loc);
  schedule.Assign(a, loc);
  soft_total += problem->soft_count(a, loc);
  EraseSorted(unscheduled, a);
}

void SolverState::UnassignActivity(ActivityIndex a) {
  const auto& loc = schedule.location(a);
  if (!loc) return;
  occupancy.Remove(*problem, a, *loc);
  if (problem->ValidLocation(a, *loc)) {
    soft_total -= problem->soft_count(a, *loc);
  }
  schedule.Unassign(a);
  InsertSorted(unscheduled, a);
}

void SolverState::Rebuild() {
  occupancy = Occupancy(*problem, schedule);
  unscheduled.clear();
  soft_total = 0;
  for (ActivityIndex a = 0; a < schedule.size(); ++a) {
    if (const auto& loc = schedule.location(a)) {
      soft_total += problem->soft_count(a, *loc);
    } else {
      unscheduled.push_back(a);
    }
  }
}

void SolverState::UpdateBest() {
  if (best.Improves(num_scheduled(), soft_total)) {
    best.schedule = schedule;
    best.scheduled = num_scheduled();
    best.soft_total = soft_total;
    best.iteration = iteration;
  }
}

void SolverState::ResetBest() {
  best.schedule = schedule;
  best.scheduled = num_scheduled();
  best.soft_total = soft_total;
  best.iteration = iteration;
}

ScoredActivity ActivityScore(const SolverState& state, ActivityIndex a) {
  const Problem& p = state.model();
  if (state.schedule.assigned(a)) {
    throw ContractViolation("activity_score: activity '" + p.activity(a).id +
                            "' is already scheduled");
  }
  ScoredActivity out;
  ActivityStats& s = out.stats;
  s.n_removed = state.history[a].n_removed;
  s.n_deps = static_cast<int>(p.dependencies_of(a).size());
  const int starts = p.num_starts(a);
  const int sels = p.num_selections(a);
  for (int start = 0; start < starts; ++start) {
    for (SelectionIndex sel = 0; sel < sels; ++sel) {
      const Placement placement = ClassifyPlacement(
          p, state.schedule, state.occupancy, a, Location{start, sel});
      if (placement == Placement::kFree) {
        ++s.n_places;
        ++s.n_places_no_conflict;
      } else if (placement == Placement::kConflicting) {
        ++s.n_places;
      }
    }
  }
  const auto& w = state.weights.activity;
  out.score = -w[0] * s.n_removed - w[1] * s.n_deps + w[2] * s.n_places +
              w[3] * s.n_places_no_conflict;
  return out;
}

ActivityIndex SelectActivity(SolverState& state) {
  const auto& unscheduled = state.unscheduled;
  if (unscheduled.empty()) {
    throw ContractViolation("select_activity: no unscheduled activity");
  }
  const HeuristicWeights& w = state.weights;
  if (w.activity_strategy == ActivityStrategy::kRandom) {
    return unscheduled[UniformIndex(state.rng, unscheduled)];
  }

  std::vector<ActivityIndex> pool;
  if (w.activity_strategy == ActivityStrategy::kFullScan ||
      w.sample_probability >= 1.0) {
    pool = unscheduled;
  } else {
    std::bernoulli_distribution take(w.sample_probability);
    for (ActivityIndex a : unscheduled) {
      if (take(state.rng)) pool.push_back(a);
    }
    if (pool.empty()) pool.push_back(unscheduled[UniformIndex(state.rng, unscheduled)]);
  }

  std::vector<ActivityIndex> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (ActivityIndex a : pool) {
    const double score = ActivityScore(state, a).score;
    if (score < best_score) {
      best_score = score;
      best.assign(1, a);
    } else if (score == best_score) {
      best.push_back(a);
    }
  }
  return best[UniformIndex(state.rng, best)];
}

ScoredLocation LocationScore(const SolverState& state, ActivityIndex a,
                             const Location& loc) {
  const Problem& p = state.model();
  if (!p.ValidLocation(a, loc)) {
    throw ContractViolation("location_score: location outside the grid");
  }
  const Placement placement =
      ClassifyPlacement(p, state.schedule, state.occupancy, a, loc);
  if (placement == Placement::kInfeasible || placement == Placement::kBlocked) {
    throw ContractViolation("location_score: not a candidate location");
  }
  const auto conflicts =
      Conflicts(p, state.schedule, state.occupancy, a, loc);
  ScoredLocation out{loc, 0.0, CheapStats(state, a, loc, conflicts)};
  out.stats.n_conflict_no_resched =
      CountNotReschedulable(state, a, loc, conflicts);
  out.score = Weighted(state.weights, out.stats);
  return out;
}

LocationChoice SelectLocation(SolverState& state, ActivityIndex a) {
  const Problem& p = state.model();
  const HeuristicWeights& w = state.weights;
  const auto locations =
      EnumerateLocations(p, state.schedule, state.occupancy, a);
  LocationChoice choice;
  choice.candidates = static_cast<int>(locations.size());

  struct Candidate {
    ScoredLocation scored;
    bool once = false;
    std::vector<ActivityIndex> conflicts;
    double lower = 0.0;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(locations.size());
  for (const Location& loc : locations) {
    const TabuStatus status = state.tabu.Status(a, loc);
    if (status == TabuStatus::kTwice) continue;
    Candidate c;
    c.once = status == TabuStatus::kOnce;
    c.conflicts = Conflicts(p, state.schedule, state.occupancy, a, loc);
    c.scored = {loc, 0.0, CheapStats(state, a, loc, c.conflicts)};
    c.lower = Weighted(w, c.scored.stats);
    candidates.push_back(std::move(c));
  }
  if (candidates.empty()) return choice;

  // The reschedulability term adds at most w[2] * n_conflicts, so a candidate
  // whose lower bound exceeds factor x (smallest upper bound) can neither be
  // the minimum nor join the group.
  const bool prune = w.location_rule == LocationRule::kThreshold &&
                     choice.candidates > w.prefilter_threshold;
  double cutoff = std::numeric_limits<double>::infinity();
  if (prune) {
    double min_upper = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates) {
      min_upper = std::min(
          min_upper, c.lower + w.location[2] * c.scored.stats.n_conflicts);
    }
    cutoff = w.location_group_factor * min_upper +
             1e-9 * (1.0 + std::abs(min_upper));
  }

  std::vector<ActivityIndex> evictable;
  int max_conflicts = 0;
  for (const Candidate& c : candidates) {
    if (c.lower > cutoff) continue;
    evictable.insert(evictable.end(), c.conflicts.begin(), c.conflicts.end());
    max_conflicts = std::max(max_conflicts, static_cast<int>(c.conflicts.size()));
  }
  std::sort(evictable.begin(), evictable.end());
  evictable.erase(std::unique(evictable.begin(), evictable.end()),
                  evictable.end());
  ReschedIndex resched(state, a, evictable, max_conflicts);
  std::vector<const Candidate*> exact;
  double min_score = std::numeric_limits<double>::infinity();
  for (Candidate& c : candidates) {
    if (c.lower > cutoff) continue;
    int stuck = 0;
    for (ActivityIndex x : c.conflicts) {
      if (!resched.Reschedulable(x, c.scored.location, c.conflicts)) ++stuck;
    }
    c.scored.stats.n_conflict_no_resched = stuck;
    c.scored.score = Weighted(w, c.scored.stats);
    min_score = std::min(min_score, c.scored.score);
    exact.push_back(&c);
  }

  // Aspiration: a once-tabu location is only eligible if it is the best.
  std::vector<const Candidate*> eligible;
  for (const Candidate* c : exact) {
    if (c->once && c->scored.score > min_score) continue;
    eligible.push_back(c);
  }

  std::vector<const Candidate*> group;
  if (w.location_rule == LocationRule::kThreshold) {
    const double limit = w.location_group_factor * min_score;
    for (const Candidate* c : eligible) {
      if (c->scored.score <= limit) group.push_back(c);
    }
  } else {
    std::stable_sort(eligible.begin(), eligible.end(),
                     [](const Candidate* x, const Candidate* y) {
                       return x->scored.score < y->scored.score;
                     });
    group.assign(eligible.begin(),
                 eligible.begin() + std::min<std::size_t>(5, eligible.size()));
  }
  choice.chosen = group[UniformIndex(state.rng, group)]->scored;
  return choice;
}

std::vector<ActivityIndex> Place(SolverState& state, ActivityIndex a,
                                 const Location& loc) {
  const Problem& p = state.model();
  if (!p.ValidLocation(a, loc) || !p.hard_ok(a, loc)) {
    throw ContractViolation("place: location is not hard-feasible");
  }
  if (state.schedule.assigned(a)) state.UnassignActivity(a);
  auto evicted = Conflicts(p, state.schedule, state.occupancy, a, loc);
  for (ActivityIndex c : evicted) {
    if (state.schedule.fixed(c)) {
      throw ContractViolation("place: would evict fixed activity '" +
                              p.activity(c).id + "'");
    }
  }
  for (ActivityIndex c : evicted) {
    ActivityHistory& h = state.history[c];
    h.last_location = state.schedule.location(c);
    h.last_evictor = a;
    ++h.n_removed;
    state.UnassignActivity(c);
  }
  state.AssignActivity(a, loc);
  state.tabu.Push(a, loc);
  return evicted;
}

IterationReport Iterate(SolverState& state) {
  if (state.unscheduled.empty()) {
    throw ContractViolation("iterate: nothing left to schedule");
  }
  ++state.iteration;
  IterationReport report;
  report.iteration = state.iteration;

  const auto t0 = std::chrono::steady_clock::now();
  report.activity = SelectActivity(state);
  state.selection_time += std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);

  LocationChoice choice = SelectLocation(state, report.activity);
  report.candidates = choice.candidates;
  if (choice.chosen) {
    report.evicted = Place(state, report.activity, choice.chosen->location);
    report.chosen = std::move(choice.chosen);
  }
  report.unscheduled = static_cast<int>(state.unscheduled.size());
  state.UpdateBest();

  if (state.verify) {
    const auto violations = CheckSchedule(state.model(), state.schedule);
    if (!violations.empty()) {
      throw ContractViolation("iterate: unsound schedule after iteration " +
                              std::to_string(state.iteration) + ": " +
                              Describe(state.model(), violations.front()));
    }
  }
  return report;
}

void Solve(SolverState& state, const std::atomic<bool>* stop,
           const IterationObserver& observer) {
  while (!state.unscheduled.empty() &&
         state.iteration < state.weights.max_iterations &&
         !(stop && stop->load(std::memory_order_relaxed))) {
    IterationReport report = Iterate(state);
    if (observer) observer(report);
  }
}

}  // namespace itt
