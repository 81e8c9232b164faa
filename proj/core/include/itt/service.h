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

// Interactive sessions over HTTP. Wire format in docs/protocol.md.
//
// Each session has one runner thread that owns its solver state. Requests
// are queued to the runner and answered at the next iteration boundary;
// snapshots are pushed to subscribers after iterations.

#ifndef ITT_SERVICE_H_
#define ITT_SERVICE_H_

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace itt {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::chrono::milliseconds session_ttl = std::chrono::minutes(10);
  // Stream rate limit per session; further snapshots are coalesced.
  double max_stream_rate = 20.0;
  // Per-subscriber backlog; the oldest events are dropped first.
  std::size_t stream_backlog = 64;
};

// ITT_PORT if set and valid, else 8080.
int DefaultPort();

// One subscriber's view of a session stream. Events are complete JSON
// texts; snapshot iterations are strictly increasing.
class Subscription {
 public:
  explicit Subscription(std::size_t backlog) : backlog_(backlog) {}

  // Waits up to `timeout`; empty on timeout or once closed and drained.
  std::optional<std::string> Next(std::chrono::milliseconds timeout);
  void Close();
  bool closed() const;

  // Runner side. Drops events whose iteration is not newer than the last one
  // accepted.
  void Push(std::shared_ptr<const std::string> event, int iteration);

 private:
  const std::size_t backlog_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::shared_ptr<const std::string>> events_;
  int last_iteration_ = -1;
  bool closed_ = false;
};

struct ServiceReply {
  int status = 200;
  std::string body;  // JSON envelope
};

class SessionRunner;

// Transport-independent session table. Thread-safe.
class SessionManager {
 public:
  explicit SessionManager(ServiceOptions options = {});
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  ServiceReply Create(std::string_view body);
  ServiceReply Handle(const std::string& id, std::string_view body);
  ServiceReply Close(const std::string& id);
  // Null if the session does not exist. The first event is the current view.
  std::shared_ptr<Subscription> Subscribe(const std::string& id);
  void Touch(const std::string& id);

  int session_count() const;
  std::string Health() const;
  // Drops sessions idle for longer than the TTL; returns how many.
  int ReapExpired(std::chrono::steady_clock::time_point now =
                      std::chrono::steady_clock::now());

 private:
  std::shared_ptr<SessionRunner> Find(const std::string& id);

  const ServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<SessionRunner>> sessions_;
};

class Server {
 public:
  explicit Server(ServiceOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and serves on a background thread. Returns the bound port; throws
  // std::runtime_error if binding fails.
  int Start();
  void Stop();
  // Blocks until Stop() is called from elsewhere.
  void Wait();

  SessionManager& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace itt

#endif  // ITT_SERVICE_H_
