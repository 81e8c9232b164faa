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

#include "itt/service.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "httplib.h"
#include "itt/generator.h"
#include "itt/io.h"
#include "itt/model.h"
#include "json.hpp"

namespace itt {
namespace {

using Json = nlohmann::json;
using std::chrono::milliseconds;

struct Fixture {
  std::shared_ptr<const Problem> problem;
  std::string problem_text;
};

const Fixture& Instance() {
  static const Fixture* f = [] {
    GenParams params;
    params.fill_percent = 40;
    params.seed = 8;
    params.dependency_density = 0.05;
    GeneratedInstance inst = Generate(params);
    auto* out = new Fixture{inst.problem, SaveProblem(inst.problem->desc())};
    return out;
  }();
  return *f;
}

std::string CreateBody(std::uint64_t seed = 3, Json weights = nullptr) {
  Json j = {{"type", "create"},
            {"problem", Json::parse(Instance().problem_text)},
            {"seed", seed}};
  if (!weights.is_null()) j["weights"] = std::move(weights);
  return j.dump();
}

// Unsound snapshots are refused by LoadSchedule.
bool SnapshotSound(const Json& snapshot) {
  const Json doc = {{"format", "itt-schedule"},
                    {"version", 1},
                    {"problem_hash", snapshot["problem_hash"]},
                    {"assignments", snapshot["assignments"]}};
  try {
    LoadSchedule(doc.dump(), *Instance().problem);
  } catch (const FormatError&) {
    return false;
  }
  return true;
}

class ManagerTest : public ::testing::Test {
 protected:
  Json Call(const Json& message, int expected_status = 200) {
    const ServiceReply r = manager_.Handle(id_, message.dump());
    EXPECT_EQ(r.status, expected_status) << r.body;
    return Json::parse(r.body);
  }

  void SetUp() override {
    const ServiceReply r = manager_.Create(CreateBody());
    ASSERT_EQ(r.status, 200) << r.body;
    const Json j = Json::parse(r.body);
    id_ = j["session"];
    created_ = j;
  }

  SessionManager manager_;
  std::string id_;
  Json created_;
};

TEST_F(ManagerTest, CreateReturnsInitialSnapshot) {
  EXPECT_EQ(created_["type"], "snapshot");
  EXPECT_EQ(created_["seq"], 1);
  EXPECT_EQ(created_["running"], false);
  const Json& s = created_["snapshot"];
  EXPECT_EQ(s["iteration"], 0);
  EXPECT_EQ(s["scheduled"], 0);
  EXPECT_EQ(s["activities"], Instance().problem->num_activities());
  EXPECT_EQ(s["problem_hash"], ProblemHash(*Instance().problem));
  EXPECT_EQ(id_.size(), 16u);
  EXPECT_EQ(manager_.session_count(), 1);
  EXPECT_EQ(Json::parse(manager_.Health()), (Json{{"status", "ok"}, {"sessions", 1}}));
}

TEST_F(ManagerTest, StepReturnsReports) {
  const Json j = Call({{"type", "step"}, {"n", 5}});
  EXPECT_EQ(j["type"], "iteration_report");
  ASSERT_EQ(j["reports"].size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(j["reports"][i]["iteration"], i + 1);
  EXPECT_GT(j["seq"].get<int>(), 1);
  const Json snap = Call({{"type", "get_snapshot"}});
  EXPECT_EQ(snap["snapshot"]["iteration"], 5);
  EXPECT_TRUE(SnapshotSound(snap["snapshot"]));
}

TEST_F(ManagerTest, SameSeedSameReports) {
  const std::string other = Json::parse(manager_.Create(CreateBody()).body)["session"];
  const Json a = Call({{"type", "step"}, {"n", 30}});
  const Json b = Json::parse(
      manager_.Handle(other, Json{{"type", "step"}, {"n", 30}}.dump()).body);
  EXPECT_EQ(a["reports"], b["reports"]);
}

TEST_F(ManagerTest, StartRunsToCompletionAndPauseHolds) {
  Call({{"type", "start"}});
  Json snap;
  for (int i = 0; i < 500; ++i) {
    snap = Call({{"type", "get_snapshot"}});
    if (!snap["running"].get<bool>()) break;
    std::this_thread::sleep_for(milliseconds(10));
  }
  EXPECT_EQ(snap["running"], false);
  EXPECT_EQ(snap["snapshot"]["scheduled"], snap["snapshot"]["activities"]);
  EXPECT_TRUE(SnapshotSound(snap["snapshot"]));

  // A fresh session paused right after start does not advance.
  const std::string other = Json::parse(manager_.Create(CreateBody()).body)["session"];
  auto call = [&](const Json& m) {
    return Json::parse(manager_.Handle(other, m.dump()).body);
  };
  call({{"type", "start"}});
  const Json paused = call({{"type", "pause"}});
  EXPECT_EQ(paused["running"], false);
  std::this_thread::sleep_for(milliseconds(50));
  const Json later = call({{"type", "get_snapshot"}});
  EXPECT_EQ(later["snapshot"]["iteration"], paused["snapshot"]["iteration"]);
}

TEST_F(ManagerTest, ConcurrentEditsAreTotallyOrdered) {
  Call({{"type", "step"}, {"n", 40}});
  Call({{"type", "start"}});
  std::vector<Json> replies(6);
  std::vector<std::thread> threads;
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&, t] {
      const Json m = {{"type", "edit"},
                      {"edit", {{"kind", "detach"},
                                {"activity", "a" + std::to_string(t)}}}};
      replies[t] = Json::parse(manager_.Handle(id_, m.dump()).body);
    });
  }
  for (auto& th : threads) th.join();
  Call({{"type", "pause"}});
  std::sort(replies.begin(), replies.end(), [](const Json& x, const Json& y) {
    return x["seq"].get<int>() < y["seq"].get<int>();
  });
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(replies[i]["type"], "edit_result");
    EXPECT_EQ(replies[i]["edits_applied"], i + 1);
    EXPECT_EQ(replies[i]["result"]["accepted"], true);
    if (i > 0) EXPECT_LT(replies[i - 1]["seq"], replies[i]["seq"]);
  }
}

TEST_F(ManagerTest, EditResults) {
  const Json rejected = Call({{"type", "edit"},
                              {"edit", {{"kind", "unfix"}, {"activity", "zz"}}}});
  EXPECT_EQ(rejected["result"]["accepted"], false);
  EXPECT_EQ(rejected["result"]["reason"], "unknown activity 'zz'");
  EXPECT_EQ(rejected["edits_applied"], 0);

  const Json w = Call({{"type", "set_weights"}, {"weights", {{"tabu_length", 3}}}});
  EXPECT_EQ(w["result"]["accepted"], true);
  EXPECT_EQ(w["edits_applied"], 1);

  const Json bad = Call({{"type", "edit"}, {"edit", {{"kind", "explode"}}}}, 400);
  EXPECT_EQ(bad["type"], "error");
  EXPECT_EQ(bad["message"], "/edit/kind: unknown edit kind 'explode'");
}

TEST_F(ManagerTest, MalformedRequests) {
  EXPECT_EQ(Call({{"type", "step"}, {"n", 0}}, 400)["message"],
            "/n: must be in [1, 1000000]");
  EXPECT_EQ(Call({{"type", "warp"}}, 400)["message"],
            "/type: unknown message type 'warp'");
  EXPECT_EQ(Call({{"type", "pause"}, {"now", true}}, 400)["message"],
            "/now: unknown field");
  EXPECT_EQ(Call(Json::array(), 400)["message"], "/: expected an object");
  const ServiceReply syntax = manager_.Handle(id_, "{\"type\": ");
  EXPECT_EQ(syntax.status, 400);
  EXPECT_NE(syntax.body.find("syntax error at line 1"), std::string::npos);
  EXPECT_EQ(manager_.Handle("0123", "{}").status, 404);
  EXPECT_EQ(manager_.Subscribe("0123"), nullptr);
}

TEST_F(ManagerTest, CreateErrors) {
  EXPECT_EQ(Json::parse(manager_.Create(R"({"type": "create"})").body)["message"],
            "/: missing field 'problem'");
  Json bad_weights = Json::parse(CreateBody());
  bad_weights["weights"] = {{"tabu_length", -2}};
  const ServiceReply r = manager_.Create(bad_weights.dump());
  EXPECT_EQ(r.status, 400);
  Json bad_model = Json::parse(CreateBody());
  bad_model["problem"]["activities"][0]["duration"] = 0;
  EXPECT_EQ(manager_.Create(bad_model.dump()).status, 400);
  Json extra = Json::parse(CreateBody());
  extra["colour"] = "red";
  EXPECT_EQ(Json::parse(manager_.Create(extra.dump()).body)["message"],
            "/colour: unknown field");
  EXPECT_EQ(manager_.session_count(), 1);
}

TEST_F(ManagerTest, CreateWithScheduleRepairs) {
  const Problem& problem = *Instance().problem;
  GenParams params;
  params.fill_percent = 40;
  params.seed = 8;
  params.dependency_density = 0.05;
  const Schedule witness = Generate(params).witness;
  Json body = Json::parse(CreateBody());
  body["schedule"] = Json::parse(SaveSchedule(problem, witness));
  const Json j = Json::parse(manager_.Create(body.dump()).body);
  EXPECT_EQ(j["snapshot"]["scheduled"], problem.num_activities());

  // A start outside the grid is detached on load.
  body["schedule"]["assignments"][0]["start"] = 10000;
  const ServiceReply r = manager_.Create(body.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const Json repaired = Json::parse(r.body)["snapshot"];
  EXPECT_EQ(repaired["scheduled"], problem.num_activities() - 1);
  EXPECT_TRUE(SnapshotSound(repaired));
}

TEST_F(ManagerTest, CloseAndReap) {
  EXPECT_EQ(Json::parse(manager_.Close(id_).body)["type"], "closed");
  EXPECT_EQ(manager_.Close(id_).status, 404);
  EXPECT_EQ(manager_.session_count(), 0);

  ServiceOptions options;
  options.session_ttl = milliseconds(100);
  SessionManager short_lived(options);
  const std::string id = Json::parse(short_lived.Create(CreateBody()).body)["session"];
  EXPECT_EQ(short_lived.ReapExpired(std::chrono::steady_clock::now()), 0);
  EXPECT_EQ(short_lived.ReapExpired(std::chrono::steady_clock::now() +
                                    std::chrono::seconds(1)),
            1);
  EXPECT_EQ(short_lived.Handle(id, R"({"type": "get_snapshot"})").status, 404);
}

TEST_F(ManagerTest, StreamIsMonotoneAndSound) {
  auto sub = manager_.Subscribe(id_);
  ASSERT_NE(sub, nullptr);
  auto first = sub->Next(milliseconds(2000));
  ASSERT_TRUE(first);
  EXPECT_EQ(Json::parse(*first)["snapshot"]["iteration"], 0);

  Call({{"type", "start"}});
  int last = 0, events = 0;
  std::uint64_t last_seq = 0;
  for (;;) {
    auto e = sub->Next(milliseconds(3000));
    ASSERT_TRUE(e) << "stream stalled";
    const Json j = Json::parse(*e);
    ASSERT_EQ(j["type"], "snapshot");
    const int it = j["snapshot"]["iteration"];
    EXPECT_GT(it, last);
    EXPECT_GT(j["seq"].get<std::uint64_t>(), last_seq);
    EXPECT_TRUE(SnapshotSound(j["snapshot"]));
    last = it;
    last_seq = j["seq"];
    ++events;
    if (!j["running"].get<bool>() &&
        j["snapshot"]["scheduled"] == j["snapshot"]["activities"]) {
      break;
    }
  }
  EXPECT_GE(events, 1);
  sub->Close();
  EXPECT_FALSE(sub->Next(milliseconds(10)));
}

TEST(SubscriptionTest, DropsStaleAndOldest) {
  Subscription sub(2);
  auto ev = [](const char* s) { return std::make_shared<const std::string>(s); };
  sub.Push(ev("a"), 1);
  sub.Push(ev("stale"), 1);
  sub.Push(ev("b"), 2);
  sub.Push(ev("c"), 5);
  EXPECT_EQ(sub.Next(milliseconds(0)), "b");
  EXPECT_EQ(sub.Next(milliseconds(0)), "c");
  EXPECT_FALSE(sub.Next(milliseconds(0)));
  sub.Close();
  sub.Push(ev("d"), 9);
  EXPECT_FALSE(sub.Next(milliseconds(0)));
  EXPECT_TRUE(sub.closed());
}

TEST(DefaultPortTest, ReadsEnvironment) {
  setenv("ITT_PORT", "9123", 1);
  EXPECT_EQ(DefaultPort(), 9123);
  setenv("ITT_PORT", "99999", 1);
  EXPECT_EQ(DefaultPort(), 8080);
  setenv("ITT_PORT", "12ab", 1);
  EXPECT_EQ(DefaultPort(), 8080);
  unsetenv("ITT_PORT");
  EXPECT_EQ(DefaultPort(), 8080);
}

TEST(ServerTest, HttpRoundTripAndEventStream) {
  ServiceOptions options;
  options.port = 0;
  Server server(options);
  const int port = server.Start();
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(10, 0);

  auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(Json::parse(health->body)["status"], "ok");
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");

  auto created = client.Post("/api/sessions", CreateBody(), "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 200) << created->body;
  const std::string id = Json::parse(created->body)["session"];
  const std::string path = "/api/sessions/" + id;

  auto step = client.Post(path, R"({"type": "step", "n": 5})", "application/json");
  ASSERT_TRUE(step);
  EXPECT_EQ(Json::parse(step->body)["reports"].size(), 5u);
  auto missing = client.Post("/api/sessions/abcdef", R"({"type": "pause"})",
                             "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto bad = client.Post(path, "not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  // Start from a second connection while the stream is read on this one.
  std::thread starter([&] {
    std::this_thread::sleep_for(milliseconds(100));
    httplib::Client other("127.0.0.1", port);
    other.Post(path, R"({"type": "start"})", "application/json");
  });
  std::string buffer;
  std::vector<Json> events;
  bool done = false;
  client.Get(path + "/stream", [&](const char* data, std::size_t len) {
    buffer.append(data, len);
    std::size_t end;
    while ((end = buffer.find("\n\n")) != std::string::npos) {
      const std::string frame = buffer.substr(0, end);
      buffer.erase(0, end + 2);
      const std::string prefix = "event: snapshot\ndata: ";
      if (frame.rfind(prefix, 0) != 0) continue;
      events.push_back(Json::parse(frame.substr(prefix.size())));
      const Json& s = events.back()["snapshot"];
      if (s["scheduled"] == s["activities"]) done = true;
    }
    return !done;
  });
  starter.join();
  ASSERT_TRUE(done);
  ASSERT_GE(events.size(), 2u);
  EXPECT_GE(events.front()["snapshot"]["iteration"].get<int>(), 5);
  for (std::size_t i = 1; i < events.size(); ++i) {
    EXPECT_LT(events[i - 1]["snapshot"]["iteration"],
              events[i]["snapshot"]["iteration"]);
    EXPECT_TRUE(SnapshotSound(events[i]["snapshot"]));
  }

  auto closed = client.Delete(path);
  ASSERT_TRUE(closed);
  EXPECT_EQ(Json::parse(closed->body)["type"], "closed");
  server.Stop();
}

}  // namespace
}  // namespace itt
