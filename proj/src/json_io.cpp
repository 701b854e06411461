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

#include "ugsopt/json_io.hpp"

#include <string>

#include "json_util.hpp"
#include "ugsopt/error.hpp"

namespace ugsopt {

using json_util::child;
using json_util::expect_array;
using json_util::expect_object;
using json_util::json;
using json_util::member;
using json_util::number;

namespace {

bool has(const json& obj, std::string_view key) { return obj.contains(std::string(key)); }

std::vector<double> numbers(const json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) json_util::fail(child(path, k), "expected a number");
    out.push_back(j[k].get<double>());
  }
  return out;
}

std::uint64_t unsigned_integer(const json& obj, std::string_view key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    json_util::fail(child(path, key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int small_integer(const json& obj, std::string_view key, const std::string& path) {
  return static_cast<int>(json_util::integer(obj, key, path));
}

std::optional<std::string> optional_string(const json& obj, std::string_view key,
                                           const std::string& path) {
  if (!has(obj, key)) return std::nullopt;
  return json_util::string(obj, key, path);
}

FactorClamp clamp_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"name", "lo", "hi"});
  return {json_util::string(j, "name", path), number(j, "lo", path), number(j, "hi", path)};
}

SolverInfo solver_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"status", "gap", "best_bound", "milp_objective", "nodes", "wall_seconds"});
  SolverInfo s;
  try {
    s.status = parse_mip_status(json_util::string(j, "status", path));
  } catch (const Error& e) {
    json_util::fail(child(path, "status"), e.what());
  }
  s.gap = number(j, "gap", path);
  s.best_bound = number(j, "best_bound", path);
  s.milp_objective = number(j, "milp_objective", path);
  s.nodes = json_util::integer(j, "nodes", path);
  s.wall_seconds = number(j, "wall_seconds", path);
  return s;
}

json to_json(const NeighborhoodRun& n) {
  json j = {{"neighborhood_id", n.neighborhood_id}};
  if (n.clustering) j["clustering"] = to_json(*n.clustering);
  if (n.plan) j["plan"] = to_json(*n.plan);
  if (n.metrics) j["metrics"] = to_json(*n.metrics);
  if (n.fine_objective) j["fine_objective"] = *n.fine_objective;
  if (n.error) j["error"] = *n.error;
  return j;
}

NeighborhoodRun neighborhood_run_from_json(const json& j, const std::string& path) {
  expect_object(j, path,
                {"neighborhood_id", "clustering", "plan", "metrics", "fine_objective", "error"});
  NeighborhoodRun n;
  n.neighborhood_id = json_util::string(j, "neighborhood_id", path);
  if (has(j, "clustering")) n.clustering = clustering_from_json(j["clustering"], child(path, "clustering"));
  if (has(j, "plan")) n.plan = plan_from_json(j["plan"], child(path, "plan"));
  if (has(j, "metrics")) n.metrics = metrics_from_json(j["metrics"], child(path, "metrics"));
  if (has(j, "fine_objective")) n.fine_objective = number(j, "fine_objective", path);
  n.error = optional_string(j, "error", path);
  return n;
}

}  // namespace

json to_json(const Allocation& a) {
  json entries = json::array();
  json budgets = json::object();
  for (const AllocationEntry& e : a.entries) {
    entries.push_back({{"id", e.id},
                       {"budget", e.budget},
                       {"lower", e.lower},
                       {"upper", e.upper},
                       {"rho", e.rho},
                       {"binding", bound_status_name(e.binding)}});
    budgets[e.id] = e.budget;
  }
  return {{"mode", allocation_mode_name(a.mode)},
          {"objective", a.objective},
          {"budgets", std::move(budgets)},
          {"entries", std::move(entries)}};
}

Allocation allocation_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"mode", "objective", "budgets", "entries"});
  Allocation a;
  try {
    a.mode = parse_allocation_mode(json_util::string(j, "mode", path));
  } catch (const Error& e) {
    json_util::fail(child(path, "mode"), e.what());
  }
  a.objective = number(j, "objective", path);
  const std::string epath = child(path, "entries");
  const json& entries = expect_array(member(j, "entries", path), epath);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string p = child(epath, k);
    const json& e = expect_object(entries[k], p, {"id", "budget", "lower", "upper", "rho", "binding"});
    AllocationEntry out;
    out.id = json_util::string(e, "id", p);
    out.budget = number(e, "budget", p);
    out.lower = number(e, "lower", p);
    out.upper = number(e, "upper", p);
    out.rho = number(e, "rho", p);
    const std::string binding = json_util::string(e, "binding", p);
    if (binding == "at-lower") {
      out.binding = BoundStatus::kAtLower;
    } else if (binding == "at-upper") {
      out.binding = BoundStatus::kAtUpper;
    } else if (binding == "interior") {
      out.binding = BoundStatus::kInterior;
    } else {
      json_util::fail(child(p, "binding"), "expected at-lower, at-upper or interior");
    }
    a.entries.push_back(std::move(out));
  }
  return a;
}

json to_json(const Clustering& c) {
  json centroids = json::array();
  for (const GeoPoint& g : c.centroids) centroids.push_back({g.lat, g.lon});
  return {{"k", c.k},
          {"seed", c.seed},
          {"iterations", c.iterations},
          {"converged", c.converged},
          {"inertia", c.inertia},
          {"inertia_history", c.inertia_history},
          {"point_ids", c.point_ids},
          {"assignment", c.assignment},
          {"centroids", std::move(centroids)}};
}

Clustering clustering_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"k", "seed", "iterations", "converged", "inertia", "inertia_history",
                          "point_ids", "assignment", "centroids"});
  Clustering c;
  c.k = small_integer(j, "k", path);
  c.seed = unsigned_integer(j, "seed", path);
  c.iterations = small_integer(j, "iterations", path);
  c.converged = json_util::boolean(j, "converged", path);
  c.inertia = number(j, "inertia", path);
  c.inertia_history = numbers(member(j, "inertia_history", path), child(path, "inertia_history"));
  const std::string ipath = child(path, "point_ids");
  const json& ids = expect_array(member(j, "point_ids", path), ipath);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!ids[k].is_string()) json_util::fail(child(ipath, k), "expected a string");
    c.point_ids.push_back(ids[k].get<std::string>());
  }
  const std::string apath = child(path, "assignment");
  const json& assign = expect_array(member(j, "assignment", path), apath);
  for (std::size_t k = 0; k < assign.size(); ++k) {
    if (!assign[k].is_number_integer()) json_util::fail(child(apath, k), "expected an integer");
    c.assignment.push_back(assign[k].get<int>());
  }
  if (c.assignment.size() != c.point_ids.size()) {
    json_util::fail(apath, "assignment and point_ids differ in length");
  }
  const std::string cpath = child(path, "centroids");
  const json& cents = expect_array(member(j, "centroids", path), cpath);
  for (std::size_t k = 0; k < cents.size(); ++k) {
    const std::vector<double> xy = numbers(cents[k], child(cpath, k));
    if (xy.size() != 2) json_util::fail(child(cpath, k), "expected [lat, lon]");
    c.centroids.push_back({xy[0], xy[1]});
  }
  return c;
}

json to_json(const PlanSolution& s) {
  json designs = json::array();
  for (std::size_t j = 0; j < s.park_ids.size(); ++j) {
    designs.push_back({{"park", s.park_ids[j]}, {"rank", s.ranks[j]}});
  }
  json p = json::array();
  const std::size_t parks = s.park_ids.size();
  for (std::size_t pr = 0; pr < s.p0.size(); ++pr) {
    json row = json::array();
    for (std::size_t j = 0; j < parks; ++j) row.push_back(s.p[pr * parks + j]);
    p.push_back(std::move(row));
  }
  json out = {{"neighborhood_id", s.neighborhood_id},
              {"budget", s.budget},
              {"spend", s.spend},
              {"objective", s.objective},
              {"designs", std::move(designs)},
              {"n_points", s.n_points},
              {"n_segments", s.n_segments},
              {"p0", s.p0},
              {"p", std::move(p)}};
  if (s.solver) {
    out["solver"] = {{"status", mip_status_name(s.solver->status)},
                     {"gap", s.solver->gap},
                     {"best_bound", s.solver->best_bound},
                     {"milp_objective", s.solver->milp_objective},
                     {"nodes", s.solver->nodes},
                     {"wall_seconds", s.solver->wall_seconds}};
  }
  return out;
}

PlanSolution plan_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"neighborhood_id", "budget", "spend", "objective", "designs", "n_points",
                          "n_segments", "p0", "p", "solver"});
  PlanSolution s;
  s.neighborhood_id = json_util::string(j, "neighborhood_id", path);
  s.budget = number(j, "budget", path);
  s.spend = number(j, "spend", path);
  s.objective = number(j, "objective", path);
  const std::string dpath = child(path, "designs");
  const json& designs = expect_array(member(j, "designs", path), dpath);
  for (std::size_t k = 0; k < designs.size(); ++k) {
    const std::string p = child(dpath, k);
    expect_object(designs[k], p, {"park", "rank"});
    s.park_ids.push_back(json_util::string(designs[k], "park", p));
    s.ranks.push_back(small_integer(designs[k], "rank", p));
  }
  s.n_points = static_cast<std::size_t>(unsigned_integer(j, "n_points", path));
  s.n_segments = static_cast<std::size_t>(unsigned_integer(j, "n_segments", path));
  s.p0 = numbers(member(j, "p0", path), child(path, "p0"));
  const std::string ppath = child(path, "p");
  const json& p = expect_array(member(j, "p", path), ppath);
  if (p.size() != s.p0.size()) json_util::fail(ppath, "expected one row per (point, segment) pair");
  for (std::size_t k = 0; k < p.size(); ++k) {
    const std::vector<double> row = numbers(p[k], child(ppath, k));
    if (row.size() != s.park_ids.size()) json_util::fail(child(ppath, k), "expected one entry per park");
    s.p.insert(s.p.end(), row.begin(), row.end());
  }
  if (has(j, "solver")) s.solver = solver_from_json(j["solver"], child(path, "solver"));
  return s;
}

json to_json(const MetricReport& m) {
  json j = {{"visit_share_pct", m.visit_share_pct},
            {"l1_norm", m.l1_norm},
            {"minmax_distance", m.minmax_distance},
            {"mean_distance", m.mean_distance},
            {"expected_distance", m.expected_distance}};
  if (m.l2_norm) j["l2_norm"] = *m.l2_norm;
  return j;
}

MetricReport metrics_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"visit_share_pct", "l1_norm", "minmax_distance", "mean_distance",
                          "expected_distance", "l2_norm"});
  MetricReport m;
  m.visit_share_pct = number(j, "visit_share_pct", path);
  m.l1_norm = number(j, "l1_norm", path);
  m.minmax_distance = number(j, "minmax_distance", path);
  m.mean_distance = number(j, "mean_distance", path);
  m.expected_distance = numbers(member(j, "expected_distance", path), child(path, "expected_distance"));
  if (has(j, "l2_norm")) m.l2_norm = number(j, "l2_norm", path);
  return m;
}

json to_json(const CitySummary& s) {
  json rows = json::array();
  for (const CityRow& r : s.rows) {
    rows.push_back({{"neighborhood_id", r.neighborhood_id},
                    {"population", r.population},
                    {"budget", r.budget},
                    {"gap_pct", r.gap_pct},
                    {"runtime_s", r.runtime_s},
                    {"share_pct", r.share_pct},
                    {"l1_norm", r.l1_norm}});
  }
  return {{"weighted_share_pct", s.weighted_share_pct},
          {"weighted_l1", s.weighted_l1},
          {"rows", std::move(rows)}};
}

CitySummary summary_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"weighted_share_pct", "weighted_l1", "rows"});
  CitySummary s;
  s.weighted_share_pct = number(j, "weighted_share_pct", path);
  s.weighted_l1 = number(j, "weighted_l1", path);
  const std::string rpath = child(path, "rows");
  const json& rows = expect_array(member(j, "rows", path), rpath);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string p = child(rpath, k);
    expect_object(rows[k], p, {"neighborhood_id", "population", "budget", "gap_pct", "runtime_s",
                               "share_pct", "l1_norm"});
    CityRow r;
    r.neighborhood_id = json_util::string(rows[k], "neighborhood_id", p);
    r.population = json_util::integer(rows[k], "population", p);
    r.budget = number(rows[k], "budget", p);
    r.gap_pct = number(rows[k], "gap_pct", p);
    r.runtime_s = number(rows[k], "runtime_s", p);
    r.share_pct = number(rows[k], "share_pct", p);
    r.l1_norm = number(rows[k], "l1_norm", p);
    s.rows.push_back(std::move(r));
  }
  return s;
}

json to_json(const ScenarioConfig& c) {
  json clamps = json::array();
  for (const FactorClamp& f : c.clamps) clamps.push_back({{"name", f.name}, {"lo", f.lo}, {"hi", f.hi}});
  json j = {{"instance_id", c.instance_id},
            {"mode", allocation_mode_name(c.mode)},
            {"clamps", std::move(clamps)},
            {"u0_multiplier", c.u0_multiplier},
            {"cluster_k", c.cluster_k},
            {"gap_tol", c.gap_tol},
            {"time_limit_s", c.time_limit_s},
            {"seed", c.seed},
            {"threads", c.threads},
            {"include_l2", c.include_l2}};
  if (c.delta) j["delta"] = *c.delta;
  if (c.cluster_k_all) j["cluster_k_all"] = *c.cluster_k_all;
  if (c.node_limit) j["node_limit"] = *c.node_limit;
  return j;
}

ScenarioConfig config_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"instance_id", "mode", "delta", "clamps", "u0_multiplier", "cluster_k",
                          "cluster_k_all", "gap_tol", "time_limit_s", "node_limit", "seed",
                          "threads", "include_l2"});
  ScenarioConfig c;
  if (has(j, "instance_id")) c.instance_id = json_util::string(j, "instance_id", path);
  if (has(j, "mode")) {
    try {
      c.mode = parse_allocation_mode(json_util::string(j, "mode", path));
    } catch (const Error& e) {
      json_util::fail(child(path, "mode"), e.what());
    }
  }
  if (has(j, "delta")) c.delta = number(j, "delta", path);
  if (has(j, "clamps")) {
    const std::string cpath = child(path, "clamps");
    const json& arr = expect_array(j["clamps"], cpath);
    c.clamps.clear();
    for (std::size_t k = 0; k < arr.size(); ++k) c.clamps.push_back(clamp_from_json(arr[k], child(cpath, k)));
  }
  c.u0_multiplier = json_util::number_or(j, "u0_multiplier", path, c.u0_multiplier);
  if (has(j, "cluster_k")) {
    const std::string kpath = child(path, "cluster_k");
    if (!j["cluster_k"].is_object()) json_util::fail(kpath, "expected an object keyed by neighborhood id");
    for (const auto& [id, v] : j["cluster_k"].items()) {
      if (!v.is_number_integer()) json_util::fail(child(kpath, id), "expected an integer");
      c.cluster_k[id] = v.get<int>();
    }
  }
  if (has(j, "cluster_k_all")) c.cluster_k_all = small_integer(j, "cluster_k_all", path);
  c.gap_tol = json_util::number_or(j, "gap_tol", path, c.gap_tol);
  c.time_limit_s = json_util::number_or(j, "time_limit_s", path, c.time_limit_s);
  if (has(j, "node_limit")) c.node_limit = json_util::integer(j, "node_limit", path);
  if (has(j, "seed")) c.seed = unsigned_integer(j, "seed", path);
  if (has(j, "threads")) c.threads = small_integer(j, "threads", path);
  if (has(j, "include_l2")) c.include_l2 = json_util::boolean(j, "include_l2", path);
  return c;
}

json to_json(const CityRun& r) {
  json nbhds = json::array();
  for (const NeighborhoodRun& n : r.neighborhoods) nbhds.push_back(to_json(n));
  json j = {{"version", 1},
            {"run_id", r.run_id},
            {"instance_id", r.instance_id},
            {"status", run_status_name(r.status)},
            {"config", to_json(r.config)},
            {"neighborhoods", std::move(nbhds)},
            {"created_at", r.created_at},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at}};
  if (r.allocation) j["allocation"] = to_json(*r.allocation);
  if (r.summary) j["summary"] = to_json(*r.summary);
  if (r.error) j["error"] = *r.error;
  return j;
}

CityRun run_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"version", "run_id", "instance_id", "status", "config", "allocation",
                          "neighborhoods", "summary", "error", "created_at", "started_at",
                          "finished_at"});
  if (json_util::integer(j, "version", path) != 1) json_util::fail(child(path, "version"), "unsupported version");
  CityRun r;
  r.run_id = json_util::string(j, "run_id", path);
  r.instance_id = json_util::string(j, "instance_id", path);
  try {
    r.status = parse_run_status(json_util::string(j, "status", path));
  } catch (const Error& e) {
    json_util::fail(child(path, "status"), e.what());
  }
  r.config = config_from_json(member(j, "config", path), child(path, "config"));
  if (has(j, "allocation")) r.allocation = allocation_from_json(j["allocation"], child(path, "allocation"));
  const std::string npath = child(path, "neighborhoods");
  const json& nbhds = expect_array(member(j, "neighborhoods", path), npath);
  for (std::size_t k = 0; k < nbhds.size(); ++k) {
    r.neighborhoods.push_back(neighborhood_run_from_json(nbhds[k], child(npath, k)));
  }
  if (has(j, "summary")) r.summary = summary_from_json(j["summary"], child(path, "summary"));
  r.error = optional_string(j, "error", path);
  r.created_at = json_util::string(j, "created_at", path);
  r.started_at = json_util::string(j, "started_at", path);
  r.finished_at = json_util::string(j, "finished_at", path);
  return r;
}

std::string serialize_run(const CityRun& r) { return to_json(r).dump(2); }

CityRun parse_run(std::string_view text) { return run_from_json(json_util::parse_document(text)); }

}  // namespace ugsopt
