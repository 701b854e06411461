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

#include "ugsopt/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <thread>

#include "ugsopt/error.hpp"

namespace ugsopt {

namespace {

int resolve_k(const ScenarioConfig& cfg, const Neighborhood& nbhd) {
  auto it = cfg.cluster_k.find(nbhd.id);
  int k = 0;
  if (it != cfg.cluster_k.end()) {
    k = it->second;
  } else if (cfg.cluster_k_all) {
    k = *cfg.cluster_k_all == 0 ? default_cluster_count(nbhd.demand_points.size())
                                : *cfg.cluster_k_all;
  } else {
    return 0;
  }
  return std::min<int>(k, static_cast<int>(nbhd.demand_points.size()));
}

struct Prepared {
  Neighborhood solved;
  std::optional<Clustering> clustering;
};

Prepared prepare(const Neighborhood& nbhd, const ScenarioConfig& cfg) {
  Prepared p{nbhd, std::nullopt};
  const int k = resolve_k(cfg, nbhd);
  if (k > 0 && static_cast<std::size_t>(k) < nbhd.demand_points.size()) {
    p.clustering = cluster_neighborhood(nbhd, k, cfg.seed);
    p.solved = aggregate_demand(nbhd, *p.clustering);
  }
  return p;
}

UtilityTable scenario_table(const Instance& inst, const Neighborhood& nbhd,
                            const ScenarioConfig& cfg) {
  UtilityTable t = build_utility_table(nbhd, inst.segments, inst.sim_params, inst.cost_params);
  if (cfg.u0_multiplier != 1.0) t = t.with_no_choice_scaled(cfg.u0_multiplier);
  return t;
}

NeighborhoodRun solve_one(const Instance& inst, const Neighborhood& nbhd, double budget,
                          const ScenarioConfig& cfg) {
  NeighborhoodRun out;
  out.neighborhood_id = nbhd.id;
  try {
    Prepared prep = prepare(nbhd, cfg);
    out.clustering = prep.clustering;
    const UtilityTable table = scenario_table(inst, prep.solved, cfg);
    SolveOptions opts;
    opts.bb.gap_tol = cfg.gap_tol;
    opts.bb.time_limit_s = cfg.time_limit_s;
    if (cfg.node_limit) opts.bb.node_limit = *cfg.node_limit;
    PlanSolution plan = solve_neighborhood(prep.solved, budget, table, inst.cost_params, opts);
    out.metrics = compute_metrics(plan, table, cfg.include_l2);
    if (prep.clustering) {
      const UtilityTable fine = scenario_table(inst, nbhd, cfg);
      out.fine_objective = evaluate_plan(nbhd, plan.ranks, fine, inst.cost_params, budget).objective;
    }
    out.plan = std::move(plan);
  } catch (const Error& e) {
    out.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return out;
}

}  // namespace

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.delta && (*cfg.delta < 0.0 || *cfg.delta > 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "delta must lie in [0, 1]", "/config/delta");
  }
  for (std::size_t c = 0; c < cfg.clamps.size(); ++c) {
    const FactorClamp& f = cfg.clamps[c];
    if (!(f.lo > 0.0) || f.lo > f.hi) {
      throw Error(ErrorCode::kInvalidInput, "clamp must satisfy 0 < lo <= hi",
                  "/config/clamps/" + std::to_string(c));
    }
  }
  if (!(cfg.u0_multiplier > 0.0) || !std::isfinite(cfg.u0_multiplier)) {
    throw Error(ErrorCode::kInvalidInput, "u0 multiplier must be > 0", "/config/u0_multiplier");
  }
  for (const auto& [id, k] : cfg.cluster_k) {
    if (k < 1) throw Error(ErrorCode::kInvalidInput, "cluster k must be >= 1", "/config/cluster_k/" + id);
  }
  if (cfg.cluster_k_all && *cfg.cluster_k_all < 0) {
    throw Error(ErrorCode::kInvalidInput, "cluster k must be >= 0", "/config/cluster_k_all");
  }
  if (!(cfg.gap_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "gap tolerance must be >= 0", "/config/gap_tol");
  }
  if (!(cfg.time_limit_s > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "time limit must be > 0", "/config/time_limit_s");
  }
  if (cfg.node_limit && *cfg.node_limit < 1) {
    throw Error(ErrorCode::kInvalidInput, "node limit must be >= 1", "/config/node_limit");
  }
  if (cfg.threads < 1) {
    throw Error(ErrorCode::kInvalidInput, "threads must be >= 1", "/config/threads");
  }
}

const char* run_status_name(RunStatus status) {
  switch (status) {
    case RunStatus::kQueued:
      return "queued";
    case RunStatus::kRunning:
      return "running";
    case RunStatus::kDone:
      return "done";
    case RunStatus::kFailed:
      return "failed";
  }
  return "failed";
}

RunStatus parse_run_status(const std::string& name) {
  for (RunStatus s : {RunStatus::kQueued, RunStatus::kRunning, RunStatus::kDone, RunStatus::kFailed}) {
    if (name == run_status_name(s)) return s;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown run status \"" + name + "\"", "/status");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

CityRun run_two_stage(const Instance& inst, const ScenarioConfig& cfg) {
  validate_config(cfg);
  const ValidationReport report = validate(inst);
  if (!report.empty()) {
    throw Error(ErrorCode::kInvalidInput, report.front().message, report.front().path);
  }
  CityRun run;
  run.instance_id = cfg.instance_id;
  run.config = cfg;
  run.started_at = utc_timestamp();
  run.created_at = run.started_at;
  run.status = RunStatus::kRunning;

  AllocationOptions alloc_opts;
  alloc_opts.delta = cfg.delta;
  alloc_opts.clamps = cfg.clamps;
  run.allocation = allocate(inst, cfg.mode, alloc_opts);

  const std::size_t n = inst.neighborhoods.size();
  run.neighborhoods.resize(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const Neighborhood& nb = inst.neighborhoods[k];
      run.neighborhoods[k] = solve_one(inst, nb, run.allocation->entries[k].budget, cfg);
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  std::vector<NeighborhoodResult> results;
  bool ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    const NeighborhoodRun& nr = run.neighborhoods[k];
    if (!nr.plan) {
      ok = false;
      continue;
    }
    results.push_back({&*nr.plan, &*nr.metrics, inst.neighborhoods[k].population});
  }
  run.summary = city_report(results);
  run.status = ok ? RunStatus::kDone : RunStatus::kFailed;
  if (!ok) run.error = "one or more neighborhoods failed";
  run.finished_at = utc_timestamp();
  return run;
}

nlohmann::json export_geojson(const Instance& inst, const CityRun& run,
                              const std::string& neighborhood_id) {
  using nlohmann::json;
  if (run.status != RunStatus::kDone) {
    throw Error(ErrorCode::kInvalidInput, "run is not done", "/status");
  }
  if (!neighborhood_id.empty() && inst.find_neighborhood(neighborhood_id) == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown neighborhood " + neighborhood_id, neighborhood_id);
  }
  json features = json::array();
  for (std::size_t k = 0; k < inst.neighborhoods.size(); ++k) {
    const Neighborhood& nb = inst.neighborhoods[k];
    if (!neighborhood_id.empty() && nb.id != neighborhood_id) continue;
    const NeighborhoodRun& nr = run.neighborhoods.at(k);
    const PlanSolution& plan = *nr.plan;

    for (std::size_t i = 0; i < nb.demand_points.size(); ++i) {
      const DemandPoint& p = nb.demand_points[i];
      double weight = 0.0;
      for (const auto& [seg, w] : p.weights) weight += w;
      json props = {{"feature", "demand_point"}, {"id", p.id}, {"neighborhood", nb.id},
                    {"weight", weight}};
      props["cluster"] = nr.clustering ? json(nr.clustering->assignment[i]) : json(nullptr);
      features.push_back({{"type", "Feature"},
                          {"geometry", {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
                          {"properties", std::move(props)}});
    }

    const Neighborhood solved = nr.clustering ? aggregate_demand(nb, *nr.clustering) : nb;
    const std::size_t parks = nb.parks.size();
    std::vector<double> share(parks, 0.0);
    for (std::size_t i = 0; i < solved.demand_points.size(); ++i) {
      for (std::size_t s = 0; s < inst.segments.size(); ++s) {
        auto w = solved.demand_points[i].weights.find(inst.segments[s].id);
        if (w == solved.demand_points[i].weights.end()) continue;
        const std::size_t pair = i * inst.segments.size() + s;
        for (std::size_t j = 0; j < parks; ++j) share[j] += w->second * plan.p[pair * parks + j];
      }
    }
    for (std::size_t j = 0; j < parks; ++j) {
      const ParkLocation& park = nb.parks[j];
      const int rank = plan.ranks[j];
      json props = {{"feature", "park"},
                    {"id", park.id},
                    {"neighborhood", nb.id},
                    {"kind", park.is_existing() ? "existing" : "candidate"},
                    {"spend", rank > 0 ? design_cost(park, rank, inst.cost_params) : 0.0},
                    {"visit_share", share[j]}};
      props["design"] = rank > 0 ? json(rank) : json(nullptr);
      features.push_back({{"type", "Feature"},
                          {"geometry", {{"type", "Point"}, {"coordinates", {park.lon, park.lat}}}},
                          {"properties", std::move(props)}});
    }
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace ugsopt
