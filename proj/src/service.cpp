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

#include "ugsopt/service.hpp"

#include <algorithm>
#include <cctype>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "ugsopt/error.hpp"
#include "ugsopt/json_io.hpp"

namespace ugsopt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
  }
  return true;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kInfeasible:
      return 422;
    case ErrorCode::kSolverFailure:
    case ErrorCode::kIo:
      return 500;
  }
  return 500;
}

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  const json body = {{"code", error_code_name(e.code())},
                     {"message", e.what()},
                     {"path", e.path()}};
  send_json(res, http_status(e.code()), body.dump());
}

}  // namespace

std::string instance_id_for(const Instance& inst) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "inst-%016llx",
                static_cast<unsigned long long>(fnv1a(serialize_instance(inst))));
  return buf;
}

RunStore::RunStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "instances", ec);
  if (!ec) fs::create_directories(root_ / "runs", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create store: " + ec.message(), root_.string());
  for (const auto& entry : fs::directory_iterator(root_ / "runs")) {
    const std::string name = entry.path().stem().string();
    if (entry.path().extension() != ".json" || name.rfind("run-", 0) != 0) continue;
    const long n = std::strtol(name.c_str() + 4, nullptr, 10);
    next_run_ = std::max(next_run_, n + 1);
  }
}

fs::path RunStore::instance_path(const std::string& id) const {
  if (!valid_id(id)) throw Error(ErrorCode::kNotFound, "unknown instance " + id, id);
  return root_ / "instances" / (id + ".json");
}

fs::path RunStore::run_path(const std::string& id) const {
  if (!valid_id(id)) throw Error(ErrorCode::kNotFound, "unknown run " + id, id);
  return root_ / "runs" / (id + ".json");
}

void RunStore::write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write store document", tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename store document: " + ec.message(), path.string());
}

std::string RunStore::put_instance(const Instance& inst) {
  const std::string id = instance_id_for(inst);
  std::lock_guard lock(mu_);
  const fs::path path = instance_path(id);
  if (!fs::exists(path)) write_atomic(path, serialize_instance(inst));
  return id;
}

std::optional<std::string> RunStore::instance_text(const std::string& id) const {
  if (!valid_id(id)) return std::nullopt;
  std::lock_guard lock(mu_);
  return read_file(instance_path(id));
}

Instance RunStore::load_instance(const std::string& id) const {
  auto text = instance_text(id);
  if (!text) throw Error(ErrorCode::kNotFound, "unknown instance " + id, id);
  return parse_instance(*text);
}

std::string RunStore::next_run_id() {
  std::lock_guard lock(mu_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "run-%06ld", next_run_++);
  return buf;
}

void RunStore::write_run(const CityRun& run) {
  std::lock_guard lock(mu_);
  write_atomic(run_path(run.run_id), serialize_run(run));
}

std::optional<std::string> RunStore::run_text(const std::string& id) const {
  if (!valid_id(id)) return std::nullopt;
  std::lock_guard lock(mu_);
  return read_file(run_path(id));
}

std::optional<CityRun> RunStore::load_run(const std::string& id) const {
  auto text = run_text(id);
  if (!text) return std::nullopt;
  return parse_run(*text);
}

std::vector<CityRun> RunStore::list_runs(const std::string& instance_id) const {
  std::vector<std::string> ids;
  {
    std::lock_guard lock(mu_);
    for (const auto& entry : fs::directory_iterator(root_ / "runs")) {
      if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  std::vector<CityRun> out;
  for (const std::string& id : ids) {
    auto run = load_run(id);
    if (run && (instance_id.empty() || run->instance_id == instance_id)) out.push_back(std::move(*run));
  }
  return out;
}

bool RunStore::remove_run(const std::string& id) {
  if (!valid_id(id)) return false;
  std::lock_guard lock(mu_);
  std::error_code ec;
  return fs::remove(run_path(id), ec);
}

std::vector<std::string> RunStore::recover_interrupted() {
  std::vector<std::string> marked;
  for (CityRun& run : list_runs()) {
    if (run.status != RunStatus::kQueued && run.status != RunStatus::kRunning) continue;
    run.status = RunStatus::kFailed;
    run.error = "interrupted by a service restart";
    run.finished_at = utc_timestamp();
    write_run(run);
    marked.push_back(run.run_id);
  }
  return marked;
}

struct Service::Impl {
  explicit Impl(ServiceOptions o) : opts(std::move(o)), store(opts.store) {
    store.recover_interrupted();
    for (int w = 0; w < std::max(1, opts.workers); ++w) {
      workers.emplace_back([this] { work(); });
    }
    routes();
  }

  ~Impl() {
    {
      std::lock_guard lock(mu);
      stopping = true;
    }
    cv.notify_all();
    server.stop();
  }

  void work() {
    while (true) {
      std::string id;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [this] { return stopping || !queue.empty(); });
        if (stopping) return;
        id = queue.front();
        queue.pop_front();
        if (cancelled.erase(id) > 0) continue;
        running.insert(id);
      }
      execute(id);
      std::lock_guard lock(mu);
      running.erase(id);
    }
  }

  void execute(const std::string& id) {
    std::optional<CityRun> record = store.load_run(id);
    if (!record) return;
    CityRun run = *record;
    run.status = RunStatus::kRunning;
    run.started_at = utc_timestamp();
    store.write_run(run);
    try {
      const Instance inst = store.load_instance(run.instance_id);
      CityRun result = run_two_stage(inst, run.config);
      result.run_id = run.run_id;
      result.instance_id = run.instance_id;
      result.created_at = run.created_at;
      run = std::move(result);
    } catch (const Error& e) {
      run.status = RunStatus::kFailed;
      run.error = std::string(error_code_name(e.code())) + ": " + e.what();
      run.finished_at = utc_timestamp();
    } catch (const std::exception& e) {
      run.status = RunStatus::kFailed;
      run.error = e.what();
      run.finished_at = utc_timestamp();
    }
    store.write_run(run);
  }

  template <typename Fn>
  static void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_error(res, Error(ErrorCode::kSolverFailure, e.what()));
    }
  }

  void routes() {
    server.Post("/instances", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const Instance inst = parse_instance(req.body);
        send_json(res, 201, json{{"id", store.put_instance(inst)}}.dump());
      });
    });
    server.Get(R"(/instances/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        auto text = store.instance_text(id);
        if (!text) throw Error(ErrorCode::kNotFound, "unknown instance " + id, id);
        send_json(res, 200, *text);
      });
    });
    server.Post("/solve", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { submit(req.body, res); });
    });
    server.Get("/runs", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string instance = req.get_param_value("instance_id");
        json runs = json::array();
        for (const CityRun& r : store.list_runs(instance)) {
          runs.push_back({{"run_id", r.run_id},
                          {"instance_id", r.instance_id},
                          {"status", run_status_name(r.status)},
                          {"created_at", r.created_at}});
        }
        send_json(res, 200, json{{"runs", std::move(runs)}}.dump());
      });
    });
    server.Get(R"(/runs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        auto text = store.run_text(id);
        if (!text) throw Error(ErrorCode::kNotFound, "unknown run " + id, id);
        send_json(res, 200, *text);
      });
    });
    server.Get(R"(/runs/([^/]+)/geojson)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        auto run = store.load_run(id);
        if (!run) throw Error(ErrorCode::kNotFound, "unknown run " + id, id);
        const Instance inst = store.load_instance(run->instance_id);
        const json fc = export_geojson(inst, *run, req.get_param_value("neighborhood"));
        res.status = 200;
        res.set_content(fc.dump(), "application/geo+json");
      });
    });
    server.Delete(R"(/runs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        std::lock_guard lock(mu);
        if (running.count(id) > 0) {
          const json body = {{"code", "conflict"}, {"message", "run is executing"}, {"path", id}};
          send_json(res, 409, body.dump());
          return;
        }
        if (!store.remove_run(id)) throw Error(ErrorCode::kNotFound, "unknown run " + id, id);
        for (const std::string& q : queue) {
          if (q == id) cancelled.insert(id);
        }
        res.status = 204;
      });
    });
  }

  void submit(const std::string& body, httplib::Response& res) {
    const json doc = json_util_parse(body);
    if (!doc.is_object()) throw Error(ErrorCode::kInvalidInput, "expected an object", "/");
    for (const auto& [key, value] : doc.items()) {
      if (key != "instance_id" && key != "config") {
        throw Error(ErrorCode::kInvalidInput, "unknown key", "/" + key);
      }
    }
    if (!doc.contains("instance_id") || !doc["instance_id"].is_string()) {
      throw Error(ErrorCode::kInvalidInput, "expected a string", "/instance_id");
    }
    const std::string instance_id = doc["instance_id"].get<std::string>();
    ScenarioConfig cfg = doc.contains("config") ? config_from_json(doc["config"], "/config")
                                                : ScenarioConfig{};
    cfg.instance_id = instance_id;
    validate_config(cfg);
    if (!store.instance_text(instance_id)) {
      throw Error(ErrorCode::kNotFound, "unknown instance " + instance_id, "/instance_id");
    }
    CityRun run;
    run.run_id = store.next_run_id();
    run.instance_id = instance_id;
    run.config = cfg;
    run.status = RunStatus::kQueued;
    run.created_at = utc_timestamp();
    store.write_run(run);
    {
      std::lock_guard lock(mu);
      queue.push_back(run.run_id);
    }
    cv.notify_one();
    send_json(res, 202, json{{"run_id", run.run_id}}.dump());
  }

  static json json_util_parse(const std::string& body) {
    try {
      return json::parse(body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kInvalidInput, std::string("malformed JSON: ") + e.what(), "/");
    }
  }

  ServiceOptions opts;
  RunStore store;
  httplib::Server server;
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::string> queue;
  std::set<std::string> running;
  std::set<std::string> cancelled;
  bool stopping = false;
  std::vector<std::jthread> workers;
};

Service::Service(ServiceOptions opts) : impl_(std::make_unique<Impl>(std::move(opts))) {}

Service::~Service() = default;

int Service::bind() {
  int port = impl_->opts.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(impl_->opts.host);
  } else if (!impl_->server.bind_to_port(impl_->opts.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + impl_->opts.host + ":" +
                                    std::to_string(impl_->opts.port));
  }
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

void parse_bind_address(const std::string& addr, std::string& host, int& port) {
  const auto colon = addr.rfind(':');
  const std::string port_text = colon == std::string::npos ? addr : addr.substr(colon + 1);
  if (colon != std::string::npos) host = addr.substr(0, colon);
  char* end = nullptr;
  const long p = std::strtol(port_text.c_str(), &end, 10);
  if (port_text.empty() || *end != '\0' || p < 0 || p > 65535) {
    throw Error(ErrorCode::kInvalidInput, "bind address must be host:port", "--bind");
  }
  port = static_cast<int>(p);
}

}  // namespace ugsopt
