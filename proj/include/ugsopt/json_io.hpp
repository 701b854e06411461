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

#ifndef UGSOPT_JSON_IO_HPP_
#define UGSOPT_JSON_IO_HPP_

#include <string_view>

#include "json.hpp"
#include "ugsopt/budget.hpp"
#include "ugsopt/cluster.hpp"
#include "ugsopt/instance.hpp"
#include "ugsopt/metrics.hpp"
#include "ugsopt/plan.hpp"
#include "ugsopt/scenario.hpp"

namespace ugsopt {

Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

nlohmann::json to_json(const Allocation& a);
Allocation allocation_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const Clustering& c);
Clustering clustering_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const PlanSolution& s);
PlanSolution plan_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const MetricReport& m);
MetricReport metrics_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const CitySummary& s);
CitySummary summary_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const ScenarioConfig& c);
// Missing keys take their defaults.
ScenarioConfig config_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const CityRun& r);
CityRun run_from_json(const nlohmann::json& j, const std::string& path = "");

std::string serialize_run(const CityRun& r);
CityRun parse_run(std::string_view text);

}  // namespace ugsopt

#endif  // UGSOPT_JSON_IO_HPP_
