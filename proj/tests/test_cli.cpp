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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "live_service.hpp"
#include "ugsopt/json_io.hpp"

using nlohmann::json;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(UGSOPT_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: end to end") {
  fixture::TempDir dir;
  const auto cfg = dir.path() / "gen.json";
  const auto inst = dir.path() / "inst.json";
  const auto out = dir.path() / "run.json";
  write(cfg, R"({"seed": 3, "n_neighborhoods": 2, "demand_points_per_nbhd": 6})");
  CHECK(run("gen " + cfg.string() + " -o " + inst.string()) == 0);
  CHECK(run("validate " + inst.string()) == 0);
  CHECK(run("allocate " + inst.string() + " --mode fair") == 0);
  CHECK(run("allocate " + inst.string() + " --mode baseline --lp") == 0);
  CHECK(run("cluster " + inst.string() + " --k 3 --seed 2") == 0);
  CHECK(run("solve " + inst.string() + " --mode fair --gap 1e-6 --time-limit 30 -o " + out.string()) == 0);
  const ugsopt::CityRun r = ugsopt::parse_run(read(out));
  CHECK(r.status == ugsopt::RunStatus::kDone);
  CHECK(r.neighborhoods.size() == 2);
  CHECK(run("metrics " + out.string()) == 0);
}

TEST_CASE("cli: validation failures exit with 1") {
  fixture::TempDir dir;
  const auto bad = dir.path() / "bad.json";
  json doc = json::parse(fixture::kMinimalDocument);
  doc["B_T"] = 1.0;
  write(bad, doc.dump());
  CHECK(run("validate " + bad.string()) == 1);
  CHECK(run("solve " + bad.string()) == 1);
  CHECK(run("validate " + (dir.path() / "missing.json").string()) == 1);
  const auto good = dir.path() / "good.json";
  write(good, fixture::kMinimalDocument);
  CHECK(run("solve " + good.string() + " --delta 2") == 1);
  CHECK(run("allocate " + good.string() + " --mode greedy") != 0);
  CHECK(run("metrics " + good.string()) == 1);
}
