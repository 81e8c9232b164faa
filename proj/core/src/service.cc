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

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <random>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "httplib.h"
#include "itt/io.h"
#include "itt/session.h"
#include "json_codec.h"

namespace itt {
namespace {

using codec::Json;
using Clock = std::chrono::steady_clock;

constexpr int kMaxStep = 1'000'000;

std::string ErrorBody(const std::string& message, const std::string& id = "") {
  Json j = {{"type", "error"}};
  if (!id.empty()) j["session"] = id;
  j["message"] = message;
  return j.dump();
}

std::string NewSessionId() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

int DefaultPort() {
  if (const char* env = std::getenv("ITT_PORT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 65536) {
      return static_cast<int>(v);
    }
  }
  return 8080;
}

std::optional<std::string> Subscription::Next(
    std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || !events_.empty(); });
  if (events_.empty()) return std::nullopt;
  std::string out = *events_.front();
  events_.pop_front();
  return out;
}

void Subscription::Close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool Subscription::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

void Subscription::Push(std::shared_ptr<const std::string> event,
                        int iteration) {
  {
    std::lock_guard lock(mu_);
    if (closed_ || iteration <= last_iteration_) return;
    last_iteration_ = iteration;
    events_.push_back(std::move(event));
    while (events_.size() > backlog_) events_.pop_front();
  }
  cv_.notify_all();
}

// Owns one Session on a dedicated thread. Every request and every stream
// event is stamped with a per-session sequence number by this thread, so a
// reply and the snapshots around it are totally ordered.
class SessionRunner {
 public:
  SessionRunner(std::string id, std::unique_ptr<Session> session,
                const ServiceOptions& options)
      : id_(std::move(id)),
        session_(std::move(session)),
        interval_(options.max_stream_rate > 0
                      ? std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(
                                1.0 / options.max_stream_rate))
                      : Clock::duration::zero()),
        backlog_(options.stream_backlog),
        last_active_(Clock::now().time_since_epoch().count()) {
    thread_ = std::thread([this] { Loop(); });
  }

  ~SessionRunner() {
    {
      std::lock_guard lock(mu_);
      closing_ = true;
    }
    cv_.notify_all();
    thread_.join();
  }

  // Returns the reply body and HTTP status.
  std::future<ServiceReply> Submit(Json message) {
    Touch();
    std::lock_guard lock(mu_);
    Command cmd;
    cmd.message = std::move(message);
    auto future = cmd.reply.get_future();
    if (closing_) {
      cmd.reply.set_value({410, ErrorBody("session closed", id_)});
    } else {
      inbox_.push_back(std::move(cmd));
      cv_.notify_all();
    }
    return future;
  }

  std::shared_ptr<Subscription> Subscribe() {
    Touch();
    auto sub = std::make_shared<Subscription>(backlog_);
    std::lock_guard lock(mu_);
    if (closing_) {
      sub->Close();
      return sub;
    }
    Command cmd;
    cmd.subscriber = sub;
    inbox_.push_back(std::move(cmd));
    cv_.notify_all();
    return sub;
  }

  void Touch() {
    last_active_.store(Clock::now().time_since_epoch().count(),
                       std::memory_order_relaxed);
  }

  Clock::time_point last_active() const {
    return Clock::time_point(
        Clock::duration(last_active_.load(std::memory_order_relaxed)));
  }

  bool streaming() const {
    std::lock_guard lock(mu_);
    return has_subscribers_;
  }

 private:
  struct Command {
    Json message;
    std::promise<ServiceReply> reply;
    std::shared_ptr<Subscription> subscriber;  // set for stream registration
  };

  void Loop() {
    for (;;) {
      std::deque<Command> batch;
      {
        std::unique_lock lock(mu_);
        auto ready = [&] { return closing_ || !inbox_.empty(); };
        if (!running_) {
          if (dirty_) {
            cv_.wait_until(lock, next_publish_, ready);
          } else {
            cv_.wait(lock, ready);
          }
        }
        if (closing_) break;
        batch.swap(inbox_);
      }
      for (Command& cmd : batch) Process(cmd);
      if (running_) {
        if (CanIterate()) {
          session_->Step();
          Publish(false);
        } else {
          running_ = false;
        }
      }
      if (dirty_ && (!running_ || Clock::now() >= next_publish_)) Publish(true);
      std::lock_guard lock(mu_);
      has_subscribers_ = !subscribers_.empty();
    }
    std::deque<Command> rest;
    {
      std::lock_guard lock(mu_);
      rest.swap(inbox_);
    }
    for (Command& cmd : rest) {
      if (cmd.subscriber) {
        cmd.subscriber->Close();
      } else {
        cmd.reply.set_value({410, ErrorBody("session closed", id_)});
      }
    }
    for (auto& sub : subscribers_) sub->Close();
  }

  bool CanIterate() const {
    const SolverState& s = session_->state();
    return !s.unscheduled.empty() && s.iteration < s.weights.max_iterations;
  }

  Json Envelope(std::string_view type) {
    return {{"type", type}, {"session", id_}, {"seq", ++seq_}};
  }

  Json SnapshotEnvelope() {
    Json j = Envelope("snapshot");
    j["running"] = running_;
    j["snapshot"] = codec::EncodeSnapshot(session_->snapshot());
    return j;
  }

  // Streams the current view if its iteration is new, subject to the rate
  // limit unless `force`.
  void Publish(bool force) {
    const int iteration = session_->state().iteration;
    if (iteration <= published_iteration_) {
      dirty_ = false;
      return;
    }
    const auto now = Clock::now();
    if (!force && now < next_publish_) {
      dirty_ = true;
      return;
    }
    dirty_ = false;
    published_iteration_ = iteration;
    next_publish_ = now + interval_;
    std::erase_if(subscribers_, [](const auto& s) { return s->closed(); });
    if (subscribers_.empty()) return;
    auto event = std::make_shared<const std::string>(SnapshotEnvelope().dump());
    for (auto& sub : subscribers_) sub->Push(event, iteration);
  }

  void Process(Command& cmd) {
    if (cmd.subscriber) {
      std::erase_if(subscribers_, [](const auto& s) { return s->closed(); });
      cmd.subscriber->Push(
          std::make_shared<const std::string>(SnapshotEnvelope().dump()),
          session_->state().iteration);
      subscribers_.push_back(std::move(cmd.subscriber));
      return;
    }
    try {
      cmd.reply.set_value(Dispatch(cmd.message));
    } catch (const std::exception& err) {
      Json j = Envelope("error");
      j["message"] = err.what();
      cmd.reply.set_value({400, j.dump()});
    }
  }

  ServiceReply Dispatch(const Json& message) {
    if (!message.is_object()) throw FormatError("/: expected an object");
    auto type_it = message.find("type");
    if (type_it == message.end() || !type_it->is_string()) {
      throw FormatError("/: missing field 'type'");
    }
    const std::string type = type_it->get<std::string>();
    auto only = [&](std::initializer_list<std::string_view> allowed) {
      for (auto it = message.begin(); it != message.end(); ++it) {
        bool ok = it.key() == "type";
        for (std::string_view a : allowed) ok = ok || it.key() == a;
        if (!ok) throw FormatError("/" + it.key() + ": unknown field");
      }
    };

    if (type == "get_snapshot") {
      only({});
      return {200, SnapshotEnvelope().dump()};
    }
    if (type == "start") {
      only({});
      running_ = CanIterate();
      return {200, SnapshotEnvelope().dump()};
    }
    if (type == "pause") {
      only({});
      running_ = false;
      return {200, SnapshotEnvelope().dump()};
    }
    if (type == "step") {
      only({"n"});
      auto n_it = message.find("n");
      if (n_it == message.end() || !n_it->is_number_integer()) {
        throw FormatError("/n: expected an integer");
      }
      const long long n = n_it->get<long long>();
      if (n < 1 || n > kMaxStep) {
        throw FormatError("/n: must be in [1, " + std::to_string(kMaxStep) + "]");
      }
      running_ = false;
      Json reports = Json::array();
      for (long long i = 0; i < n && !session_->state().unscheduled.empty(); ++i) {
        reports.push_back(
            codec::EncodeReport(session_->state().model(), session_->Step()));
        Publish(false);
      }
      Json j = Envelope("iteration_report");
      j["running"] = running_;
      j["reports"] = std::move(reports);
      return {200, j.dump()};
    }
    if (type == "edit" || type == "set_weights") {
      Edit edit;
      if (type == "edit") {
        only({"edit"});
        auto e = message.find("edit");
        if (e == message.end()) throw FormatError("/: missing field 'edit'");
        edit = codec::DecodeEdit(*e, "/edit");
      } else {
        only({"weights"});
        auto w = message.find("weights");
        if (w == message.end() || !w->is_object()) {
          throw FormatError("/weights: expected an object");
        }
        // Missing fields keep the session's current values.
        Json merged = codec::EncodeWeights(session_->state().weights);
        for (auto it = w->begin(); it != w->end(); ++it) {
          merged[it.key()] = it.value();
        }
        edit = edit::SetWeights{codec::DecodeWeights(merged, "/weights")};
      }
      const RepairReport report = session_->Apply(edit);
      Json j = Envelope("edit_result");
      j["result"] = codec::EncodeRepairReport(report);
      j["edits_applied"] = session_->edits_applied();
      return {200, j.dump()};
    }
    throw FormatError("/type: unknown message type '" + type + "'");
  }

  const std::string id_;
  std::unique_ptr<Session> session_;
  const Clock::duration interval_;
  const std::size_t backlog_;
  std::atomic<Clock::rep> last_active_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Command> inbox_;
  bool closing_ = false;
  bool has_subscribers_ = false;

  // Runner thread only.
  bool running_ = false;
  bool dirty_ = false;
  std::uint64_t seq_ = 0;
  int published_iteration_ = -1;
  Clock::time_point next_publish_{};
  std::vector<std::shared_ptr<Subscription>> subscribers_;

  std::thread thread_;
};

SessionManager::SessionManager(ServiceOptions options)
    : options_(std::move(options)) {}

SessionManager::~SessionManager() = default;

ServiceReply SessionManager::Create(std::string_view body) {
  ReapExpired();
  std::unique_ptr<Session> session;
  try {
    const Json message = codec::Parse(body);
    if (!message.is_object()) throw FormatError("/: expected an object");
    std::optional<Json> problem_doc, schedule_doc;
    HeuristicWeights weights;
    std::uint64_t seed = 1;
    for (auto it = message.begin(); it != message.end(); ++it) {
      const std::string& key = it.key();
      if (key == "type") {
        if (it.value() != "create") {
          throw FormatError("/type: expected 'create'");
        }
      } else if (key == "problem") {
        problem_doc = it.value();
      } else if (key == "schedule") {
        schedule_doc = it.value();
      } else if (key == "weights") {
        weights = codec::DecodeWeights(it.value(), "/weights");
      } else if (key == "seed") {
        if (!it.value().is_number_unsigned()) {
          throw FormatError("/seed: expected a non-negative integer");
        }
        seed = it.value().get<std::uint64_t>();
      } else {
        throw FormatError("/" + key + ": unknown field");
      }
    }
    if (!problem_doc) throw FormatError("/: missing field 'problem'");
    auto problem =
        std::make_shared<const Problem>(codec::DecodeProblem(*problem_doc));
    if (schedule_doc) {
      LoadedSchedule loaded =
          LoadSchedule(schedule_doc->dump(), *problem, /*repair=*/true);
      session = std::make_unique<Session>(
          SolverState(problem, std::move(loaded.schedule), weights, seed));
    } else {
      session = std::make_unique<Session>(problem, weights, seed);
    }
  } catch (const std::exception& err) {
    return {400, ErrorBody(err.what())};
  }

  std::string id = NewSessionId();
  auto runner =
      std::make_shared<SessionRunner>(id, std::move(session), options_);
  {
    std::lock_guard lock(mu_);
    sessions_[id] = runner;
  }
  return runner->Submit(Json{{"type", "get_snapshot"}}).get();
}

std::shared_ptr<SessionRunner> SessionManager::Find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceReply SessionManager::Handle(const std::string& id,
                                    std::string_view body) {
  ReapExpired();
  auto runner = Find(id);
  if (!runner) return {404, ErrorBody("unknown session '" + id + "'", id)};
  Json message;
  try {
    message = codec::Parse(body);
  } catch (const std::exception& err) {
    return {400, ErrorBody(err.what(), id)};
  }
  return runner->Submit(std::move(message)).get();
}

ServiceReply SessionManager::Close(const std::string& id) {
  std::shared_ptr<SessionRunner> runner;
  {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
      return {404, ErrorBody("unknown session '" + id + "'", id)};
    }
    runner = std::move(it->second);
    sessions_.erase(it);
  }
  runner.reset();
  return {200, Json{{"type", "closed"}, {"session", id}}.dump()};
}

std::shared_ptr<Subscription> SessionManager::Subscribe(const std::string& id) {
  ReapExpired();
  auto runner = Find(id);
  return runner ? runner->Subscribe() : nullptr;
}

void SessionManager::Touch(const std::string& id) {
  if (auto runner = Find(id)) runner->Touch();
}

int SessionManager::session_count() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(sessions_.size());
}

std::string SessionManager::Health() const {
  return Json{{"status", "ok"}, {"sessions", session_count()}}.dump();
}

int SessionManager::ReapExpired(Clock::time_point now) {
  std::vector<std::shared_ptr<SessionRunner>> expired;
  {
    std::lock_guard lock(mu_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      const auto& runner = it->second;
      if (!runner->streaming() &&
          now - runner->last_active() > options_.session_ttl) {
        expired.push_back(std::move(it->second));
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  // Runner threads are joined here, outside the table lock.
  return static_cast<int>(expired.size());
}

struct Server::Impl {
  explicit Impl(ServiceOptions opts) : options(opts), manager(opts) {}

  ServiceOptions options;
  SessionManager manager;
  httplib::Server http;
  std::thread thread;
  std::atomic<bool> stopping{false};
  std::mutex wait_mu;
  std::condition_variable wait_cv;
  bool stopped = false;
};

Server::Server(ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() { Stop(); }

SessionManager& Server::sessions() { return impl_->manager; }

int Server::Start() {
  Impl& s = *impl_;
  auto reply = [](httplib::Response& res, const ServiceReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  s.http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods",
                               "GET, POST, DELETE, OPTIONS"}});
  s.http.Options(R"(/api/.*)", [](const httplib::Request&,
                                  httplib::Response& res) { res.status = 204; });
  s.http.Get("/api/health", [&s](const httplib::Request&, httplib::Response& res) {
    s.manager.ReapExpired();
    res.set_content(s.manager.Health(), "application/json");
  });
  s.http.Post("/api/sessions",
              [&s, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, s.manager.Create(req.body));
              });
  s.http.Post(R"(/api/sessions/([0-9a-f]+))",
              [&s, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, s.manager.Handle(req.matches[1], req.body));
              });
  s.http.Delete(R"(/api/sessions/([0-9a-f]+))",
                [&s, reply](const httplib::Request& req, httplib::Response& res) {
                  reply(res, s.manager.Close(req.matches[1]));
                });
  s.http.Get(
      R"(/api/sessions/([0-9a-f]+)/stream)",
      [&s](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        auto sub = s.manager.Subscribe(id);
        if (!sub) {
          res.status = 404;
          res.set_content(ErrorBody("unknown session '" + id + "'", id),
                          "application/json");
          return;
        }
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            "text/event-stream",
            [&s, sub, id, idle = 0](std::size_t, httplib::DataSink& sink) mutable {
              if (s.stopping.load()) {
                sink.done();
                return true;
              }
              auto event = sub->Next(std::chrono::milliseconds(200));
              if (event) {
                idle = 0;
                const std::string frame =
                    "event: snapshot\ndata: " + *event + "\n\n";
                return sink.write(frame.data(), frame.size());
              }
              if (sub->closed()) {
                sink.done();
                return true;
              }
              s.manager.Touch(id);
              if (++idle % 50 == 0) {  // about every 10 s
                static constexpr char kKeepAlive[] = ": keepalive\n\n";
                return sink.write(kKeepAlive, sizeof(kKeepAlive) - 1);
              }
              return true;
            },
            [sub](bool) { sub->Close(); });
      });

  int port = s.options.port;
  if (port == 0) {
    port = s.http.bind_to_any_port(s.options.host);
  } else if (!s.http.bind_to_port(s.options.host, port)) {
    port = -1;
  }
  if (port <= 0) {
    throw std::runtime_error("cannot bind " + s.options.host + ":" +
                             std::to_string(s.options.port));
  }
  s.thread = std::thread([&s] { s.http.listen_after_bind(); });
  return port;
}

void Server::Stop() {
  Impl& s = *impl_;
  if (s.stopping.exchange(true)) return;
  s.http.stop();
  if (s.thread.joinable()) s.thread.join();
  {
    std::lock_guard lock(s.wait_mu);
    s.stopped = true;
  }
  s.wait_cv.notify_all();
}

void Server::Wait() {
  std::unique_lock lock(impl_->wait_mu);
  impl_->wait_cv.wait(lock, [&] { return impl_->stopped; });
}

}  // namespace itt
