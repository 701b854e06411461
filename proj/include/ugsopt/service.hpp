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

#ifndef UGSOPT_SERVICE_HPP_
#define UGSOPT_SERVICE_HPP_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ugsopt/instance.hpp"
#include "ugsopt/scenario.hpp"

namespace ugsopt {

// Content-derived id of the canonical instance document.
std::string instance_id_for(const Instance& inst);

// A directory of JSON documents: instances/<id>.json and runs/<id>.json.
// Every write goes through a temporary file and a rename.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  std::string put_instance(const Instance& inst);
  std::optional<std::string> instance_text(const std::string& id) const;
  Instance load_instance(const std::string& id) const;

  std::string next_run_id();
  void write_run(const CityRun& run);
  std::optional<std::string> run_text(const std::string& id) const;
  std::optional<CityRun> load_run(const std::string& id) const;
  std::vector<CityRun> list_runs(const std::string& instance_id = "") const;
  bool remove_run(const std::string& id);

  // Marks runs left queued or running by a previous process as failed.
  std::vector<std::string> recover_interrupted();

 private:
  std::filesystem::path instance_path(const std::string& id) const;
  std::filesystem::path run_path(const std::string& id) const;
  void write_atomic(const std::filesystem::path& path, const std::string& text);

  std::filesystem::path root_;
  mutable std::mutex mu_;
  long next_run_ = 1;
};

struct ServiceOptions {
  std::filesystem::path store;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds an ephemeral port
  int workers = 2;
};

class Service {
 public:
  explicit Service(ServiceOptions opts);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the listening socket and returns the port.
  int bind();
  // Serves until stop(); requires bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Parses "host:port" or a bare port.
void parse_bind_address(const std::string& addr, std::string& host, int& port);

}  // namespace ugsopt

#endif  // UGSOPT_SERVICE_HPP_
