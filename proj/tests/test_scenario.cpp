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

#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "ugsopt/error.hpp"
#include "ugsopt/json_io.hpp"
#include "ugsopt/scenario.hpp"

using namespace ugsopt;
using nlohmann::json;

namespace {

Instance city(std::uint64_t seed, int nbhds = 3, int points = 10) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n_neighborhoods = nbhds;
  cfg.demand_points_per_nbhd = points;
  cfg.extent_km = 1.2;
  return generate_synthetic(cfg);
}

// Drops everything that depends on the clock.
json timeless(const CityRun& run) {
  json j = to_json(run);
  j.erase("created_at");
  j.erase("started_at");
  j.erase("finished_at");
  for (auto& nb : j["neighborhoods"]) {
    if (nb.contains("plan") && nb["plan"].contains("solver")) nb["plan"]["solver"].erase("wall_seconds");
  }
  if (j.contains("summary")) {
    for (auto& row : j["summary"]["rows"]) row.erase("runtime_s");
  }
  return j;
}

bool finite_number(const json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

// Structural GeoJSON check: FeatureCollection of Point features.
std::string geojson_problem(const json& fc) {
  if (!fc.is_object() || fc.value("type", "") != "FeatureCollection") return "not a FeatureCollection";
  if (!fc.contains("features") || !fc["features"].is_array()) return "features must be an array";
  for (const auto& f : fc["features"]) {
    if (!f.is_object() || f.value("type", "") != "Feature") return "feature type";
    if (!f.contains("properties") || !(f["properties"].is_object() || f["properties"].is_null()))
      return "properties";
    if (!f.contains("geometry") || !f["geometry"].is_object()) return "geometry";
    const json& g = f["geometry"];
    if (g.value("type", "") != "Point") return "geometry type";
    const json& c = g["coordinates"];
    if (!c.is_array() || c.size() < 2 || !finite_number(c[0]) || !finite_number(c[1])) return "coordinates";
    if (std::abs(c[0].get<double>()) > 180.0 || std::abs(c[1].get<double>()) > 90.0) return "range";
  }
  return "";
}

}  // namespace

TEST_CASE("scenario: single neighborhood in baseline mode") {
  const Instance inst = city(5, 1);
  ScenarioConfig cfg;
  cfg.mode = AllocationMode::kBaseline;
  const CityRun run = run_two_stage(inst, cfg);
  CHECK(run.status == RunStatus::kDone);
  REQUIRE(run.allocation.has_value());
  CHECK(run.allocation->entries[0].budget == inst.neighborhoods[0].baseline_budget);
  REQUIRE(run.neighborhoods.size() == 1);
  REQUIRE(run.neighborhoods[0].plan.has_value());
  CHECK(run.neighborhoods[0].plan->budget == inst.neighborhoods[0].baseline_budget);
  CHECK(run.neighborhoods[0].metrics.has_value());
  REQUIRE(run.summary.has_value());
  CHECK(run.summary->weighted_share_pct ==
        doctest::Approx(100.0 * run.neighborhoods[0].plan->objective));
  CHECK_FALSE(run.created_at.empty());
}

TEST_CASE("scenario: fair versus baseline allocation") {
  const Instance inst = city(6);
  ScenarioConfig fair;
  ScenarioConfig base;
  base.mode = AllocationMode::kBaseline;
  const CityRun a = run_two_stage(inst, fair);
  const CityRun b = run_two_stage(inst, base);
  std::set<double> rho;
  bool differ = false;
  for (std::size_t n = 0; n < inst.neighborhoods.size(); ++n) {
    rho.insert(a.allocation->entries[n].rho);
    differ = differ || std::abs(a.allocation->entries[n].budget - b.allocation->entries[n].budget) > 1e-6;
  }
  CHECK(differ == (rho.size() > 1));

  Instance equal = inst;
  for (auto& nb : equal.neighborhoods) nb.rho_factors = {{"density", 1.0}};
  // equal weights: the baseline is one of the optima, so only the objective has to agree
  const Allocation c = allocate(equal, AllocationMode::kFair);
  const Allocation d = allocate(equal, AllocationMode::kBaseline);
  CHECK(c.objective == doctest::Approx(d.objective).epsilon(1e-12));
}

TEST_CASE("scenario: zero delta keeps the baseline") {
  const Instance inst = city(7);
  ScenarioConfig cfg;
  cfg.delta = 0.0;
  const CityRun run = run_two_stage(inst, cfg);
  for (std::size_t n = 0; n < inst.neighborhoods.size(); ++n) {
    CHECK(run.allocation->entries[n].budget == doctest::Approx(inst.neighborhoods[n].baseline_budget));
  }
}

TEST_CASE("scenario: runs are deterministic apart from the clock") {
  const Instance inst = city(8, 3, 15);
  ScenarioConfig cfg;
  cfg.cluster_k = {{inst.neighborhoods[0].id, 5}};
  cfg.seed = 4;
  const CityRun a = run_two_stage(inst, cfg);
  const CityRun b = run_two_stage(inst, cfg);
  CHECK(timeless(a) == timeless(b));
  cfg.threads = 3;
  const CityRun c = run_two_stage(inst, cfg);
  CHECK(timeless(a)["neighborhoods"] == timeless(c)["neighborhoods"]);

  const NeighborhoodRun& clustered = a.neighborhoods[0];
  REQUIRE(clustered.clustering.has_value());
  CHECK(clustered.clustering->k == 5);
  CHECK(clustered.plan->n_points == 5);
  REQUIRE(clustered.fine_objective.has_value());
  CHECK_FALSE(a.neighborhoods[1].clustering.has_value());
}

TEST_CASE("scenario: every neighborhood clustered by default count") {
  const Instance inst = city(9, 2, 40);
  ScenarioConfig cfg;
  cfg.cluster_k_all = 0;
  const CityRun run = run_two_stage(inst, cfg);
  for (const auto& nb : run.neighborhoods) {
    REQUIRE(nb.clustering.has_value());
    CHECK(nb.clustering->k == default_cluster_count(40));
  }
}

TEST_CASE("scenario: neighborhood failures are recorded") {
  const Instance inst = city(10, 2);
  ScenarioConfig cfg;
  cfg.node_limit = 1;
  cfg.u0_multiplier = 0.5;
  cfg.gap_tol = 0.0;
  const CityRun run = run_two_stage(inst, cfg);
  if (run.status == RunStatus::kFailed) {
    CHECK(run.error.has_value());
    bool any = false;
    for (const auto& nb : run.neighborhoods) any = any || nb.error.has_value();
    CHECK(any);
  } else {
    for (const auto& nb : run.neighborhoods) CHECK(nb.plan.has_value());
  }
}

TEST_CASE("scenario: config validation") {
  const Instance inst = city(11, 1);
  ScenarioConfig cfg;
  cfg.delta = 1.5;
  CHECK_THROWS_AS(run_two_stage(inst, cfg), Error);
  cfg = ScenarioConfig{};
  cfg.u0_multiplier = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = ScenarioConfig{};
  cfg.cluster_k = {{"x", 0}};
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = ScenarioConfig{};
  cfg.threads = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  CHECK_NOTHROW(validate_config(ScenarioConfig{}));
}

TEST_CASE("scenario: GeoJSON export") {
  const Instance inst = city(12, 3, 12);
  ScenarioConfig cfg;
  cfg.cluster_k = {{inst.neighborhoods[1].id, 4}};
  const CityRun run = run_two_stage(inst, cfg);
  REQUIRE(run.status == RunStatus::kDone);
  const json fc = export_geojson(inst, run);
  CHECK(geojson_problem(fc) == "");
  std::size_t expected = 0;
  for (const auto& nb : inst.neighborhoods) expected += nb.demand_points.size() + nb.parks.size();
  CHECK(fc["features"].size() == expected);

  const Neighborhood& one = inst.neighborhoods[2];
  const json part = export_geojson(inst, run, one.id);
  CHECK(geojson_problem(part) == "");
  CHECK(part["features"].size() == one.demand_points.size() + one.parks.size());
  const PlanSolution& plan = *run.neighborhoods[2].plan;
  for (const auto& f : part["features"]) {
    const json& p = f["properties"];
    if (p["feature"] != "park") continue;
    const auto idx = static_cast<std::size_t>(
        std::find(plan.park_ids.begin(), plan.park_ids.end(), p["id"].get<std::string>()) -
        plan.park_ids.begin());
    REQUIRE(idx < plan.ranks.size());
    if (plan.ranks[idx] == 0) {
      CHECK(p["design"].is_null());
    } else {
      CHECK(p["design"] == plan.ranks[idx]);
    }
  }
  const json clustered = export_geojson(inst, run, inst.neighborhoods[1].id);
  for (const auto& f : clustered["features"]) {
    if (f["properties"]["feature"] == "demand_point") CHECK(f["properties"]["cluster"].is_number_integer());
  }
  CHECK_THROWS_AS(export_geojson(inst, run, "nowhere"), Error);

  CityRun pending = run;
  pending.status = RunStatus::kRunning;
  CHECK_THROWS_AS(export_geojson(inst, pending), Error);
}

TEST_CASE("scenario: run documents round-trip") {
  const Instance inst = city(13, 2, 15);
  ScenarioConfig cfg;
  cfg.cluster_k = {{inst.neighborhoods[0].id, 5}};
  cfg.include_l2 = true;
  cfg.node_limit = 5000;
  CityRun run = run_two_stage(inst, cfg);
  run.run_id = "run-000001";
  run.instance_id = "inst-x";
  const std::string text = serialize_run(run);
  const CityRun back = parse_run(text);
  CHECK(back == run);
  CHECK(serialize_run(back) == text);

  json j = json::parse(text);
  j["surprise"] = 1;
  CHECK_THROWS_AS(parse_run(j.dump()), Error);
  CHECK_THROWS_AS(parse_run("[]"), Error);

  const ScenarioConfig defaults = config_from_json(json::object());
  CHECK(defaults == ScenarioConfig{});
  CHECK(config_from_json(to_json(cfg)) == cfg);
  CHECK(parse_run_status(run_status_name(RunStatus::kFailed)) == RunStatus::kFailed);
}
