// Copyright 2026 The ugsopt Authors
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

#ifndef UGSOPT_TESTS_LIVE_SERVICE_HPP_
#define UGSOPT_TESTS_LIVE_SERVICE_HPP_

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "ugsopt/service.hpp"

namespace fixture {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ugsopt-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// A service on an ephemeral local port, listening on a background thread.
class LiveService {
 public:
  explicit LiveService(const std::filesystem::path& store, int workers = 2) {
    ugsopt::ServiceOptions opts;
    opts.store = store;
    opts.port = 0;
    opts.workers = workers;
    service_ = std::make_unique<ugsopt::Service>(opts);
    port_ = service_->bind();
    thread_ = std::thread([this] { service_->listen(); });
  }
  ~LiveService() { shutdown(); }
  LiveService(const LiveService&) = delete;
  LiveService& operator=(const LiveService&) = delete;

  void shutdown() {
    if (!service_) return;
    service_->stop();
    if (thread_.joinable()) thread_.join();
    service_.reset();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

  int port() const { return port_; }

 private:
  std::unique_ptr<ugsopt::Service> service_;
  std::thread thread_;
  int port_ = 0;
};

// Polls GET /runs/{id} until the run leaves queued/running; returns the body.
inline std::optional<std::string> wait_for_run(httplib::Client& c, const std::string& id,
                                               double timeout_s = 60.0) {
  const auto start = std::chrono::steady_clock::now();
  while (std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < timeout_s) {
    auto res = c.Get("/runs/" + id);
    if (res && res->status == 200) {
      const auto doc = nlohmann::json::parse(res->body);
      const std::string status = doc.value("status", "");
      if (status == "done" || status == "failed") return res->body;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  return std::nullopt;
}

}  // namespace fixture

#endif  // UGSOPT_TESTS_LIVE_SERVICE_HPP_
