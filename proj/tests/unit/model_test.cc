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

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "itt/feasibility.h"
#include "oracle.h"

namespace itt {
namespace {

std::vector<std::vector<std::string>> Ids(const Problem& p, ActivityIndex a) {
  std::vector<std::vector<std::string>> out;
  for (const auto& sel : p.selections(a)) {
    std::vector<std::string> ids;
    for (ResourceIndex r : sel) ids.push_back(p.resource(r).id);
    out.push_back(ids);
  }
  return out;
}

ProblemDesc OneActivity(std::vector<ResourceGroup> groups,
                        std::vector<std::string> resources) {
  ProblemDesc desc;
  desc.grid = {1, 6};
  for (const auto& id : resources) desc.resources.push_back({id, id, "", {}});
  Activity a;
  a.id = "A";
  a.groups = std::move(groups);
  desc.activities.push_back(a);
  return desc;
}

std::string ModelErrorOf(const ProblemDesc& desc) {
  try {
    Problem p(desc);
  } catch (const ModelError& err) {
    return err.what();
  }
  return "";
}

TEST(SelectionsTest, ConjunctiveTimesDisjunctive) {
  const Problem p(oracle::TinyDesc());
  const std::vector<std::vector<std::string>> expected = {{"t1", "c1", "r1"},
                                                          {"t1", "c1", "r2"}};
  EXPECT_EQ(Ids(p, 0), expected);
}

TEST(SelectionsTest, SingleConjunctiveGroup) {
  const Problem p(
      OneActivity({{GroupMode::kConjunctive, {"t1"}}}, {"t1"}));
  EXPECT_EQ(Ids(p, 0), (std::vector<std::vector<std::string>>{{"t1"}}));
}

TEST(SelectionsTest, TwoDisjunctiveGroupsGiveFour) {
  const Problem p(OneActivity({{GroupMode::kDisjunctive, {"r1", "r2"}},
                               {GroupMode::kDisjunctive, {"p1", "p2"}}},
                              {"r1", "r2", "p1", "p2"}));
  const std::vector<std::vector<std::string>> expected = {
      {"r1", "p1"}, {"r1", "p2"}, {"r2", "p1"}, {"r2", "p2"}};
  EXPECT_EQ(Ids(p, 0), expected);
}

TEST(SelectionsTest, CountIsProductOfDisjunctiveSizes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const ProblemDesc desc = oracle::RandomTinyDesc(rng);
    const Problem p(desc);
    for (ActivityIndex a = 0; a < p.num_activities(); ++a) {
      std::size_t product = 1;
      for (const auto& g : desc.activities[a].groups) {
        if (g.mode == GroupMode::kDisjunctive) product *= g.members.size();
      }
      EXPECT_EQ(static_cast<std::size_t>(p.num_selections(a)), product);
      EXPECT_EQ(Ids(p, a), oracle::Selections(desc.activities[a]));
      EXPECT_EQ(p.selections(a).size(),
                ResourceSelections(p, a).size());
    }
  }
}

TEST(SelectionsTest, FindSelectionIgnoresOrder) {
  const Problem p(oracle::TinyDesc());
  const ResourceIndex t1 = *p.FindResource("t1");
  const ResourceIndex c1 = *p.FindResource("c1");
  const ResourceIndex r2 = *p.FindResource("r2");
  const std::vector<ResourceIndex> shuffled = {r2, t1, c1};
  EXPECT_EQ(p.FindSelection(0, shuffled), SelectionIndex{1});
  const std::vector<ResourceIndex> partial = {t1, c1};
  EXPECT_FALSE(p.FindSelection(0, partial).has_value());
}

TEST(ProblemTest, RejectsUnknownResource) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.activities[0].groups[1].members.push_back("r9");
  const std::string msg = ModelErrorOf(desc);
  EXPECT_NE(msg.find("r9"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'A'"), std::string::npos) << msg;
}

TEST(ProblemTest, RejectsDuplicateIds) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.resources.push_back({"t1", "", "", {}});
  EXPECT_NE(ModelErrorOf(desc).find("duplicate"), std::string::npos);

  desc = oracle::TinyDesc();
  desc.activities[1].id = "A";
  EXPECT_NE(ModelErrorOf(desc).find("duplicate"), std::string::npos);

  desc = oracle::TinyDesc();
  desc.activities[1].id = "r1";
  EXPECT_FALSE(ModelErrorOf(desc).empty());
}

TEST(ProblemTest, RejectsBadActivities) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.activities[0].duration = 7;
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  desc = oracle::TinyDesc();
  desc.activities[0].duration = 0;
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  desc = oracle::TinyDesc();
  desc.activities[0].groups.clear();
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  desc = oracle::TinyDesc();
  desc.activities[0].groups.push_back({GroupMode::kDisjunctive, {}});
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  // The same resource twice in one activity.
  desc = oracle::TinyDesc();
  desc.activities[0].groups[1].members = {"r1", "t1"};
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  desc = oracle::TinyDesc();
  desc.activities[0].location_prefs.push_back({0, {}, -1.0});
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  desc = oracle::TinyDesc();
  desc.activities[0].marks.assign(3, SlotMark::kNeutral);
  EXPECT_FALSE(ModelErrorOf(desc).empty());
}

TEST(ProblemTest, RejectsBadDependencies) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.dependencies.push_back({DependencyKind::kMeets, "A", "A"});
  EXPECT_FALSE(ModelErrorOf(desc).empty());

  desc = oracle::TinyDesc();
  desc.dependencies.push_back({DependencyKind::kMeets, "A", "Z"});
  EXPECT_NE(ModelErrorOf(desc).find("Z"), std::string::npos);
}

TEST(ProblemTest, RejectsEmptyGrid) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.grid = {0, 6};
  EXPECT_FALSE(ModelErrorOf(desc).empty());
}

TEST(ProblemTest, EmptyMarksMeanNeutral) {
  const Problem p(oracle::TinyDesc());
  for (int t = 0; t < 6; ++t) {
    EXPECT_EQ(p.activity_mark(0, t), SlotMark::kNeutral);
    EXPECT_EQ(p.resource_mark(0, t), SlotMark::kNeutral);
  }
}

TEST(ProblemTest, DependenciesOfBothEndpoints) {
  const Problem p(oracle::TinyDesc());
  ASSERT_EQ(p.dependencies_of(0).size(), 1u);
  ASSERT_EQ(p.dependencies_of(1).size(), 1u);
  const ResolvedDependency& d = p.dependencies()[p.dependencies_of(0)[0]];
  EXPECT_EQ(d.first, 1);
  EXPECT_EQ(d.second, 0);
}

TEST(ProblemTest, UserPenaltyExactEntryOverridesStartEntry) {
  ProblemDesc desc = oracle::TinyDesc();
  desc.activities[0].location_prefs = {{2, {"t1", "c1", "r2"}, 4.0},
                                       {2, {}, 1.5},
                                       {5, {}, 9.0}};  // unreachable start
  const Problem p(desc);
  EXPECT_DOUBLE_EQ(p.user_penalty(0, {2, 0}), 1.5);
  EXPECT_DOUBLE_EQ(p.user_penalty(0, {2, 1}), 4.0);
  EXPECT_DOUBLE_EQ(p.user_penalty(0, {1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(p.user_penalty(0, {4, 1}), 0.0);
}

TEST(ProblemTest, ValidLocation) {
  const Problem p(oracle::TinyDesc());
  EXPECT_TRUE(p.ValidLocation(0, {4, 1}));
  EXPECT_FALSE(p.ValidLocation(0, {5, 0}));
  EXPECT_FALSE(p.ValidLocation(0, {-1, 0}));
  EXPECT_FALSE(p.ValidLocation(0, {0, 2}));
  EXPECT_EQ(p.num_starts(0), 5);
}

TEST(DependencyTest, Semantics) {
  // before: end(first) <= start(second)
  EXPECT_TRUE(DependencySatisfied(DependencyKind::kBefore, 0, 2, 2, 1));
  EXPECT_TRUE(DependencySatisfied(DependencyKind::kBefore, 0, 2, 4, 1));
  EXPECT_FALSE(DependencySatisfied(DependencyKind::kBefore, 0, 2, 1, 1));
  // meets: end(first) == start(second)
  EXPECT_TRUE(DependencySatisfied(DependencyKind::kMeets, 1, 2, 3, 1));
  EXPECT_FALSE(DependencySatisfied(DependencyKind::kMeets, 1, 2, 4, 1));
  // concurrent: equal starts
  EXPECT_TRUE(DependencySatisfied(DependencyKind::kConcurrent, 3, 1, 3, 2));
  EXPECT_FALSE(DependencySatisfied(DependencyKind::kConcurrent, 3, 1, 2, 2));
}

TEST(DependencyTest, AgreesWithOracle) {
  for (int kind = 0; kind < 3; ++kind) {
    for (int s1 = 0; s1 < 6; ++s1) {
      for (int d1 = 1; d1 < 4; ++d1) {
        for (int s2 = 0; s2 < 6; ++s2) {
          const auto k = static_cast<DependencyKind>(kind);
          EXPECT_EQ(DependencySatisfied(k, s1, d1, s2, 2),
                    oracle::Holds(k, s1, d1, s2, 2));
        }
      }
    }
  }
}

TEST(ScheduleTest, AssignFixUnassign) {
  Schedule s(2);
  EXPECT_THROW(s.SetFixed(0, true), ContractViolation);
  s.Assign(0, {1, 0});
  s.SetFixed(0, true);
  EXPECT_TRUE(s.fixed(0));
  EXPECT_EQ(s.num_assigned(), 1);
  s.Assign(0, {2, 0});
  EXPECT_EQ(s.num_assigned(), 1);
  s.Unassign(0);
  EXPECT_FALSE(s.fixed(0));
  EXPECT_EQ(s.num_assigned(), 0);
}

TEST(OccupancyTest, RejectsOverlap) {
  const Problem p(oracle::TinyDesc());
  Schedule s(2);
  s.Assign(0, {0, 0});  // A on t1, c1, r1 at slots 0-1
  s.Assign(1, {1, 0});  // B on t1, c1, r1 at slot 1
  EXPECT_THROW(Occupancy(p, s), ContractViolation);
  s.Assign(1, {3, 0});
  const Occupancy occ(p, s);
  EXPECT_EQ(occ.at(*p.FindResource("r1"), 1), 0);
  EXPECT_EQ(occ.at(*p.FindResource("r1"), 3), 1);
  EXPECT_EQ(occ.at(*p.FindResource("r2"), 0), kNoActivity);
}

TEST(ToStringTest, RoundTrips) {
  for (auto k : {DependencyKind::kBefore, DependencyKind::kMeets,
                 DependencyKind::kConcurrent}) {
    EXPECT_EQ(ParseDependencyKind(ToString(k)), k);
  }
  for (auto m : {GroupMode::kConjunctive, GroupMode::kDisjunctive}) {
    EXPECT_EQ(ParseGroupMode(ToString(m)), m);
  }
  EXPECT_FALSE(ParseGroupMode("either").has_value());
}

}  // namespace
}  // namespace itt
