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

#include "itt/generator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "itt/feasibility.h"

namespace itt {
namespace {

struct Placed {
  int teacher;
  int klass;
  int room;
  int start;
  int duration;
};

class Busy {
 public:
  Busy(int count, int slots)
      : slots_(slots), cells_(static_cast<std::size_t>(count) * slots, false) {}

  bool Free(int who, int start, int duration) const {
    for (int t = start; t < start + duration; ++t) {
      if (cells_[static_cast<std::size_t>(who) * slots_ + t]) return false;
    }
    return true;
  }
  bool At(int who, int slot) const {
    return cells_[static_cast<std::size_t>(who) * slots_ + slot];
  }
  void Mark(int who, int start, int duration) {
    for (int t = start; t < start + duration; ++t) {
      cells_[static_cast<std::size_t>(who) * slots_ + t] = true;
    }
  }

 private:
  int slots_;
  std::vector<bool> cells_;
};

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Greedy random packing of (teacher, class, room, start) blocks until
// `target` class-slots are covered. Empty on failure.
std::optional<std::vector<Placed>> Pack(const GenParams& params, int target,
                                        std::mt19937_64& rng) {
  const int slots = params.days * params.slots_per_day;
  Busy teachers(params.n_teachers, slots);
  Busy classes(params.n_classes, slots);
  Busy rooms(params.n_rooms, slots);
  std::vector<Placed> placed;
  std::vector<int> class_order(params.n_classes);
  std::iota(class_order.begin(), class_order.end(), 0);

  int filled = 0;
  while (filled < target) {
    const int remaining = target - filled;
    const int hi = std::max(params.min_duration,
                            std::min(params.max_duration, remaining));
    int duration = Uniform(rng, params.min_duration, hi);
    bool done = false;
    // Fall back to shorter blocks when the grid gets tight.
    for (; duration >= params.min_duration && !done; --duration) {
      std::shuffle(class_order.begin(), class_order.end(), rng);
      for (int c : class_order) {
        std::vector<std::pair<int, std::pair<std::vector<int>, std::vector<int>>>>
            options;
        for (int start = 0; start + duration <= slots; ++start) {
          if (!classes.Free(c, start, duration)) continue;
          std::vector<int> free_t, free_r;
          for (int t = 0; t < params.n_teachers; ++t) {
            if (teachers.Free(t, start, duration)) free_t.push_back(t);
          }
          if (free_t.empty()) continue;
          for (int r = 0; r < params.n_rooms; ++r) {
            if (rooms.Free(r, start, duration)) free_r.push_back(r);
          }
          if (free_r.empty()) continue;
          options.push_back({start, {std::move(free_t), std::move(free_r)}});
        }
        if (options.empty()) continue;
        const auto& [start, free] =
            options[Uniform(rng, 0, static_cast<int>(options.size()) - 1)];
        const int t =
            free.first[Uniform(rng, 0, static_cast<int>(free.first.size()) - 1)];
        const int r = free.second[Uniform(
            rng, 0, static_cast<int>(free.second.size()) - 1)];
        teachers.Mark(t, start, duration);
        classes.Mark(c, start, duration);
        rooms.Mark(r, start, duration);
        placed.push_back({t, c, r, start, duration});
        filled += duration;
        done = true;
        break;
      }
    }
    if (!done) return std::nullopt;
  }
  return placed;
}

std::string TeacherId(int i) { return "t" + std::to_string(i); }
std::string ClassId(int i) { return "c" + std::to_string(i); }
std::string RoomId(int i) { return "r" + std::to_string(i); }

}  // namespace

void GenParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("generator: " + what);
  };
  if (n_teachers < 1 || n_classes < 1 || n_rooms < 1) {
    fail("resource counts must be >= 1");
  }
  if (days < 1 || slots_per_day < 1) fail("grid must have >= 1 slot");
  if (!(fill_percent > 0 && fill_percent <= 100)) {
    fail("fill_percent must be in (0, 100]");
  }
  if (min_duration < 1 || max_duration < min_duration ||
      max_duration > days * slots_per_day) {
    fail("invalid duration range");
  }
  if (!(dependency_density >= 0 && dependency_density < 1)) {
    fail("dependency_density must be in [0, 1)");
  }
  if (!(soft_density >= 0 && soft_density < 1)) {
    fail("soft_density must be in [0, 1)");
  }
  if (max_room_alternatives < 0) fail("max_room_alternatives must be >= 0");
  if (max_attempts < 1) fail("max_attempts must be >= 1");
}

GeneratedInstance Generate(const GenParams& params) {
  params.Validate();
  std::mt19937_64 rng(params.seed);
  const int slots = params.days * params.slots_per_day;
  const int capacity = params.n_classes * slots;
  const int target = std::max(
      1, static_cast<int>(std::lround(params.fill_percent / 100.0 * capacity)));

  std::optional<std::vector<Placed>> packed;
  for (int attempt = 0; attempt < params.max_attempts && !packed; ++attempt) {
    packed = Pack(params, target, rng);
  }
  if (!packed) {
    throw GenerationError("could not pack " +
                          std::to_string(params.fill_percent) +
                          "% fill in " + std::to_string(params.max_attempts) +
                          " attempts");
  }
  const std::vector<Placed>& blocks = *packed;

  ProblemDesc desc;
  desc.grid = {params.days, params.slots_per_day};
  auto add_resources = [&](int count, const char* kind,
                           std::string (*id)(int)) {
    for (int i = 0; i < count; ++i) {
      desc.resources.push_back({id(i), id(i), kind, {}});
    }
  };
  add_resources(params.n_teachers, "teacher", TeacherId);
  add_resources(params.n_classes, "class", ClassId);
  add_resources(params.n_rooms, "room", RoomId);

  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Placed& b = blocks[k];
    Activity act;
    act.id = "a" + std::to_string(k);
    act.name = ClassId(b.klass) + "/" + TeacherId(b.teacher);
    act.duration = b.duration;
    act.groups.push_back(
        {GroupMode::kConjunctive, {TeacherId(b.teacher), ClassId(b.klass)}});
    std::vector<int> others;
    for (int r = 0; r < params.n_rooms; ++r) {
      if (r != b.room) others.push_back(r);
    }
    std::shuffle(others.begin(), others.end(), rng);
    const int extra = Uniform(
        rng, 0,
        std::min(params.max_room_alternatives, static_cast<int>(others.size())));
    std::vector<std::string> room_ids{RoomId(b.room)};
    for (int i = 0; i < extra; ++i) room_ids.push_back(RoomId(others[i]));
    std::shuffle(room_ids.begin(), room_ids.end(), rng);
    act.groups.push_back({GroupMode::kDisjunctive, std::move(room_ids)});
    desc.activities.push_back(std::move(act));
  }

  // Dependencies that the witness already satisfies: before/meets between
  // activities of the same class, concurrent between activities sharing a
  // start (necessarily different classes).
  const int n = static_cast<int>(blocks.size());
  std::vector<std::vector<std::pair<int, int>>> pairs(3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Placed& x = blocks[i];
      const Placed& y = blocks[j];
      if (x.klass == y.klass) {
        if (x.start + x.duration <= y.start) pairs[0].push_back({i, j});
        if (x.start + x.duration == y.start) pairs[1].push_back({i, j});
      } else if (i < j && x.start == y.start) {
        pairs[2].push_back({i, j});
      }
    }
  }
  const int wanted =
      static_cast<int>(std::lround(params.dependency_density * n));
  std::set<std::pair<int, int>> used;
  const DependencyKind kinds[] = {DependencyKind::kBefore,
                                  DependencyKind::kMeets,
                                  DependencyKind::kConcurrent};
  for (int tries = 0;
       static_cast<int>(desc.dependencies.size()) < wanted && tries < 50 * (wanted + 1);
       ++tries) {
    const int kind = Uniform(rng, 0, 2);
    const auto& pool = pairs[kind];
    if (pool.empty()) continue;
    auto [i, j] = pool[Uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
    if (used.contains({std::min(i, j), std::max(i, j)})) continue;
    used.insert({std::min(i, j), std::max(i, j)});
    desc.dependencies.push_back(
        {kinds[kind], desc.activities[i].id, desc.activities[j].id});
  }

  // Soft marks only where the witness does not use the entity.
  if (params.soft_density > 0) {
    Busy teachers(params.n_teachers, slots), classes(params.n_classes, slots),
        rooms(params.n_rooms, slots);
    for (const Placed& b : blocks) {
      teachers.Mark(b.teacher, b.start, b.duration);
      classes.Mark(b.klass, b.start, b.duration);
      rooms.Mark(b.room, b.start, b.duration);
    }
    std::bernoulli_distribution soft(params.soft_density);
    auto mark = [&](TimePreference& marks, auto&& used_at) {
      marks.assign(slots, SlotMark::kNeutral);
      for (int t = 0; t < slots; ++t) {
        if (soft(rng) && !used_at(t)) marks[t] = SlotMark::kSoft;
      }
    };
    int r = 0;
    for (int i = 0; i < params.n_teachers; ++i, ++r) {
      mark(desc.resources[r].marks, [&](int t) { return teachers.At(i, t); });
    }
    for (int i = 0; i < params.n_classes; ++i, ++r) {
      mark(desc.resources[r].marks, [&](int t) { return classes.At(i, t); });
    }
    for (int i = 0; i < params.n_rooms; ++i, ++r) {
      mark(desc.resources[r].marks, [&](int t) { return rooms.At(i, t); });
    }
    for (int k = 0; k < n; ++k) {
      const Placed& b = blocks[k];
      mark(desc.activities[k].marks, [&](int t) {
        return t >= b.start && t < b.start + b.duration;
      });
    }
  }

  GeneratedInstance out;
  out.problem = std::make_shared<const Problem>(std::move(desc));
  const Problem& problem = *out.problem;
  out.witness = Schedule(n);
  int covered = 0;
  for (int k = 0; k < n; ++k) {
    const Placed& b = blocks[k];
    const std::vector<ResourceIndex> ids = {
        *problem.FindResource(TeacherId(b.teacher)),
        *problem.FindResource(ClassId(b.klass)),
        *problem.FindResource(RoomId(b.room))};
    out.witness.Assign(k, {b.start, *problem.FindSelection(k, ids)});
    covered += b.duration;
  }
  out.achieved_fill = 100.0 * covered / capacity;
  return out;
}

}  // namespace itt
