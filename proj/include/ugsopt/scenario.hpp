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

#ifndef UGSOPT_SCENARIO_HPP_
#define UGSOPT_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ugsopt/budget.hpp"
#include "ugsopt/cluster.hpp"
#include "ugsopt/instance.hpp"
#include "ugsopt/metrics.hpp"
#include "ugsopt/plan.hpp"

namespace ugsopt {

struct ScenarioConfig {
  std::string instance_id;
  AllocationMode mode = AllocationMode::kFair;
  std::optional<double> delta;
  std::vector<FactorClamp> clamps = default_factor_clamps();
  double u0_multiplier = 1.0;
  // Neighborhoods listed here are clustered to k demand points before solving.
  std::map<std::string, int> cluster_k;
  // Applied to neighborhoods missing from cluster_k; 0 picks the default count.
  std::optional<int> cluster_k_all;
  double gap_tol = 1e-6;
  double time_limit_s = 60.0;
  std::optional<std::int64_t> node_limit;
  std::uint64_t seed = 1;
  int threads = 1;
  bool include_l2 = false;

  bool operator==(const ScenarioConfig&) const = default;
};

void validate_config(const ScenarioConfig& cfg);

enum class RunStatus { kQueued, kRunning, kDone, kFailed };

const char* run_status_name(RunStatus status);
RunStatus parse_run_status(const std::string& name);

struct NeighborhoodRun {
  std::string neighborhood_id;
  std::optional<Clustering> clustering;
  std::optional<PlanSolution> plan;
  std::optional<MetricReport> metrics;
  // Share of the plan evaluated on the unclustered demand points.
  std::optional<double> fine_objective;
  std::optional<std::string> error;

  bool operator==(const NeighborhoodRun&) const = default;
};

struct CityRun {
  std::string run_id;
  std::string instance_id;
  ScenarioConfig config;
  RunStatus status = RunStatus::kQueued;
  std::optional<Allocation> allocation;
  std::vector<NeighborhoodRun> neighborhoods;
  std::optional<CitySummary> summary;
  std::optional<std::string> error;
  std::string created_at;
  std::string started_at;
  std::string finished_at;

  bool operator==(const CityRun&) const = default;
};

std::string utc_timestamp();

// Runs both stages. Stage-one infeasibility throws; neighborhood failures are
// recorded and leave the run failed.
CityRun run_two_stage(const Instance& inst, const ScenarioConfig& cfg);

// One FeatureCollection with demand-point and park features; restricted to a
// single neighborhood when `neighborhood_id` is non-empty.
nlohmann::json export_geojson(const Instance& inst, const CityRun& run,
                              const std::string& neighborhood_id = "");

}  // namespace ugsopt

#endif  // UGSOPT_SCENARIO_HPP_
