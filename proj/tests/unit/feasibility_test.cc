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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "itt/model.h"
#include "oracle.h"

namespace itt {
namespace {

constexpr ActivityIndex kA = 0;
constexpr ActivityIndex kB = 1;

TimePreference Marks(int n, std::initializer_list<std::pair<int, SlotMark>> set) {
  TimePreference marks(n, SlotMark::kNeutral);
  for (const auto& [slot, mark] : set) marks[slot] = mark;
  return marks;
}

oracle::RawLocation Raw(const Problem& p, ActivityIndex a, const Location& l) {
  oracle::RawLocation raw{l.start, {}};
  for (ResourceIndex r : p.selection(a, l.selection)) {
    raw.resources.push_back(p.resource(r).id);
  }
  return raw;
}

std::set<int> AsSet(const std::vector<ActivityIndex>& v) {
  return {v.begin(), v.end()};
}

TEST(HardFeasibleTest, EmptyPreferences) {
  const Problem p(oracle::TinyDesc());
  for (int start = 0; start < p.num_starts(kA); ++start) {
    EXPECT_TRUE(HardFeasible(p, kA, {start, 0}));
    EXPECT_TRUE(HardFeasible(p, kA, {start, 1}));
  }
}

TEST(HardFeasibleTest, CoveredSlotForbidden) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.resources[0].marks = Marks(6, {{5, SlotMark::kHard}});
  const Problem p(desc);
  EXPECT_FALSE(HardFeasible(p, kA, {4, 0}));
  EXPECT_TRUE(HardFeasible(p, kA, {3, 0}));
}

TEST(HardFeasibleTest, OutOfGrid) {
  const Problem p(oracle::TinyDesc());
  EXPECT_FALSE(HardFeasible(p, kA, {5, 0}));
  EXPECT_FALSE(HardFeasible(p, kA, {-1, 0}));
  EXPECT_THROW(HardFeasible(p, kA, {0, 2}), ModelError);
}

TEST(HardFeasibleTest, SoftNeverBlocks) {
  ProblemDesc desc = oracle::TinyDesc();
  const TimePreference all_soft(6, SlotMark::kSoft);
  for (auto& r : desc.resources) r.marks = all_soft;
  for (auto& a : desc.activities) a.marks = all_soft;
  const Problem p(desc);
  for (ActivityIndex a = 0; a < p.num_activities(); ++a) {
    for (int start = 0; start < p.num_starts(a); ++start) {
      for (SelectionIndex s = 0; s < p.num_selections(a); ++s) {
        EXPECT_TRUE(HardFeasible(p, a, {start, s}));
        EXPECT_GT(SoftViolations(p, a, {start, s}), 0);
      }
    }
  }
}

TEST(SoftViolationsTest, NoMarks) {
  const Problem p(oracle::TinyDesc());
  EXPECT_EQ(SoftViolations(p, kA, {0, 0}), 0);
}

TEST(SoftViolationsTest, OneResourcePair) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.resources[0].marks = Marks(6, {{1, SlotMark::kSoft}});
  const Problem p(desc);
  EXPECT_EQ(SoftViolations(p, kA, {0, 0}), 1);
}

TEST(SoftViolationsTest, ActivityAndResourcePairs) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.activities[0].marks =
      Marks(6, {{0, SlotMark::kSoft}, {1, SlotMark::kSoft}});
  desc.resources[0].marks = Marks(6, {{0, SlotMark::kSoft}});
  const Problem p(desc);
  EXPECT_EQ(SoftViolations(p, kA, {0, 0}), 3);
  EXPECT_EQ(SoftViolations(p, kA, {1, 1}), 1);
}

TEST(ConflictsTest, EmptySchedule) {
  const Problem p(oracle::TinyDesc());
  EXPECT_TRUE(Conflicts(p, Schedule(2), kA, {0, 1}).empty());
}

TEST(ConflictsTest, SharedTeacherAndClass) {
  const Problem p(oracle::TinyDesc());
  Schedule s(2);
  s.Assign(kB, {0, 0});
  EXPECT_EQ(Conflicts(p, s, kA, {0, 1}), std::vector<ActivityIndex>{kB});
}

TEST(ConflictsTest, BeforeDependency) {
  const Problem p(oracle::TinyDesc());
  Schedule s(2);
  s.Assign(kB, {3, 0});
  EXPECT_EQ(Conflicts(p, s, kA, {0, 1}), std::vector<ActivityIndex>{kB});
  // end(B) = 4 <= start(A) = 4
  EXPECT_TRUE(Conflicts(p, s, kA, {4, 1}).empty());
}

TEST(ConflictsTest, OwnAssignmentIgnored) {
  const Problem p(oracle::TinyDesc());
  Schedule s(2);
  s.Assign(kA, {0, 0});
  EXPECT_TRUE(Conflicts(p, s, kA, {1, 0}).empty());
}

TEST(EnumerateLocationsTest, TenOnEmptySchedule) {
  const Problem p(oracle::TinyDesc());
  const std::vector<Location> locs = EnumerateLocations(p, Schedule(2), kA);
  ASSERT_EQ(locs.size(), 10u);
  EXPECT_EQ(locs.front(), (Location{0, 0}));
  EXPECT_EQ(locs[1], (Location{0, 1}));
  EXPECT_EQ(locs.back(), (Location{4, 1}));
}

TEST(EnumerateLocationsTest, EightWithTeacherForbiddenAtLastSlot) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.resources[0].marks = Marks(6, {{5, SlotMark::kHard}});
  const Problem p(desc);
  const std::vector<Location> locs = EnumerateLocations(p, Schedule(2), kA);
  ASSERT_EQ(locs.size(), 8u);
  for (const Location& l : locs) EXPECT_LE(l.start, 3);
}

TEST(EnumerateLocationsTest, FixedOccupancyExcluded) {
  ProblemDesc desc;
  desc.grid = {1, 4};
  desc.resources = {{"r1", "", "", {}}, {"r2", "", "", {}}};
  Activity a;
  a.id = "A";
  a.groups = {{GroupMode::kConjunctive, {"r1"}}};
  Activity b;
  b.id = "B";
  b.groups = {{GroupMode::kConjunctive, {"r1", "r2"}}};
  desc.activities = {a, b};
  const Problem p(desc);
  Schedule s(2);
  s.Assign(kB, {0, 0});
  s.SetFixed(kB, true);
  const std::vector<Location> locs = EnumerateLocations(p, s, kA);
  ASSERT_EQ(locs.size(), 3u);
  for (const Location& l : locs) EXPECT_NE(l.start, 0);

  // Unfixed, the occupied start is a conflicting candidate instead.
  s.SetFixed(kB, false);
  EXPECT_EQ(EnumerateLocations(p, s, kA).size(), 4u);
}

TEST(EnumerateLocationsTest, FixedDependencyPartnerExcluded) {
  const Problem p(oracle::TinyDesc());
  Schedule s(2);
  s.Assign(kB, {2, 0});
  s.SetFixed(kB, true);
  // before(B, A): A must start at 3 or later; r1 is free of B after slot 2.
  const std::vector<Location> locs = EnumerateLocations(p, s, kA);
  ASSERT_EQ(locs.size(), 4u);
  for (const Location& l : locs) EXPECT_GE(l.start, 3);
}

TEST(ClassifyPlacementTest, MatchesConflicts) {
  const Problem p(oracle::TinyDesc());
  Schedule s(2);
  s.Assign(kB, {0, 0});
  const Occupancy occ(p, s);
  EXPECT_EQ(ClassifyPlacement(p, s, occ, kA, {0, 0}), Placement::kConflicting);
  EXPECT_EQ(ClassifyPlacement(p, s, occ, kA, {1, 1}), Placement::kFree);
  s.SetFixed(kB, true);
  EXPECT_EQ(ClassifyPlacement(p, s, occ, kA, {0, 0}), Placement::kBlocked);
}

TEST(CheckScheduleTest, EmptyIsSound) {
  const Problem p(oracle::TinyDesc());
  EXPECT_TRUE(CheckSchedule(p, Schedule(2)).empty());
}

TEST(CheckScheduleTest, OneOverlap) {
  ProblemDesc desc;
  desc.grid = {1, 4};
  desc.resources = {{"r1", "", "", {}}};
  Activity a;
  a.id = "A";
  a.groups = {{GroupMode::kConjunctive, {"r1"}}};
  Activity b = a;
  b.id = "B";
  desc.activities = {a, b};
  const Problem p(desc);
  Schedule s(2);
  s.Assign(0, {2, 0});
  s.Assign(1, {2, 0});
  const std::vector<Violation> v = CheckSchedule(p, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kResourceOverlap);
  EXPECT_EQ(v[0].activities, (std::vector<ActivityIndex>{0, 1}));
  EXPECT_EQ(v[0].resource, 0);
  EXPECT_EQ(v[0].slots, std::vector<int>{2});
  const std::string text = Describe(p, v[0]);
  EXPECT_NE(text.find("r1"), std::string::npos) << text;
}

TEST(CheckScheduleTest, OneDependencyViolation) {
  ProblemDesc desc;
  desc.grid = {1, 6};
  desc.resources = {{"r1", "", "", {}}, {"r2", "", "", {}}};
  Activity a;
  a.id = "A";
  a.duration = 3;
  a.groups = {{GroupMode::kConjunctive, {"r1"}}};
  Activity b;
  b.id = "B";
  b.groups = {{GroupMode::kConjunctive, {"r2"}}};
  desc.activities = {a, b};
  desc.dependencies = {{DependencyKind::kBefore, "A", "B"}};
  const Problem p(desc);
  Schedule s(2);
  s.Assign(0, {0, 0});
  s.Assign(1, {2, 0});
  const std::vector<Violation> v = CheckSchedule(p, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kDependency);
  EXPECT_EQ(v[0].dependency, 0);
}

TEST(CheckScheduleTest, ForbiddenAndInvalid) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.activities[1].marks = Marks(6, {{2, SlotMark::kHard}});
  const Problem p(desc);
  Schedule s(2);
  s.Assign(kB, {2, 0});
  s.Assign(kA, {5, 1});
  std::set<ViolationKind> kinds;
  for (const Violation& v : CheckSchedule(p, s)) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.contains(ViolationKind::kForbiddenSlot));
  EXPECT_TRUE(kinds.contains(ViolationKind::kInvalidLocation));
}

// Brute-force agreement on random tiny instances.

class OracleTest : public ::testing::TestWithParam<int> {};

TEST_P(OracleTest, EnumerateAndConflictsMatchBruteForce) {
  std::mt19937_64 rng(1000 + GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    const ProblemDesc desc = oracle::RandomTinyDesc(rng);
    const Problem p(desc);
    const Schedule s = oracle::RandomSoundSchedule(p, rng);
    const oracle::RawSchedule raw = oracle::ToRaw(p, s);
    const Occupancy occ(p, s);
    for (ActivityIndex a = 0; a < p.num_activities(); ++a) {
      std::vector<oracle::RawLocation> got;
      for (const Location& l : EnumerateLocations(p, s, occ, a)) {
        got.push_back(Raw(p, a, l));
      }
      EXPECT_EQ(got, oracle::Locations(desc, raw, a));

      for (int start = 0; start < p.num_starts(a); ++start) {
        for (SelectionIndex sel = 0; sel < p.num_selections(a); ++sel) {
          const Location l{start, sel};
          const oracle::RawLocation rl = Raw(p, a, l);
          ASSERT_EQ(HardFeasible(p, a, l),
                    oracle::HardFeasible(desc, desc.activities[a], rl));
          ASSERT_EQ(SoftViolations(p, a, l),
                    oracle::SoftCount(desc, desc.activities[a], rl));
          if (!HardFeasible(p, a, l)) continue;
          ASSERT_EQ(AsSet(Conflicts(p, s, occ, a, l)),
                    oracle::Conflicts(desc, raw, a, rl));
        }
      }
    }
  }
}

TEST_P(OracleTest, CheckScheduleMatchesBruteForce) {
  std::mt19937_64 rng(5000 + GetParam());
  int unsound = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const ProblemDesc desc = oracle::RandomTinyDesc(rng);
    const Problem p(desc);
    const Schedule s = oracle::RandomSchedule(p, rng);
    const bool sound = oracle::Sound(desc, oracle::ToRaw(p, s));
    EXPECT_EQ(CheckSchedule(p, s).empty(), sound);
    unsound += sound ? 0 : 1;
  }
  EXPECT_GT(unsound, 0);
}

TEST_P(OracleTest, OverlapConflictsAreSymmetric) {
  std::mt19937_64 rng(9000 + GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    ProblemDesc desc = oracle::RandomTinyDesc(rng);
    desc.dependencies.clear();
    const Problem p(desc);
    for (ActivityIndex a = 0; a < p.num_activities(); ++a) {
      for (ActivityIndex b = 0; b < p.num_activities(); ++b) {
        if (a == b) continue;
        std::uniform_int_distribution<int> sa(0, p.num_starts(a) - 1);
        std::uniform_int_distribution<int> sb(0, p.num_starts(b) - 1);
        std::uniform_int_distribution<int> ka(0, p.num_selections(a) - 1);
        std::uniform_int_distribution<int> kb(0, p.num_selections(b) - 1);
        const Location la{sa(rng), ka(rng)};
        const Location lb{sb(rng), kb(rng)};
        Schedule with_b(p.num_activities());
        with_b.Assign(b, lb);
        Schedule with_a(p.num_activities());
        with_a.Assign(a, la);
        const auto ab = Conflicts(p, with_b, a, la);
        const auto ba = Conflicts(p, with_a, b, lb);
        EXPECT_EQ(ab.empty(), ba.empty());
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleTest, ::testing::Range(0, 10));

}  // namespace
}  // namespace itt
