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

#include <string>

#include "json_util.hpp"
#include "ugsopt/error.hpp"
#include "ugsopt/instance.hpp"
#include "ugsopt/json_io.hpp"

namespace ugsopt {

using json_util::child;
using json_util::expect_array;
using json_util::expect_object;
using json_util::json;
using json_util::member;
using json_util::number;

namespace {

std::map<std::string, double> read_segment_map(const json& j, const std::string& path) {
  if (!j.is_object()) json_util::fail(path, "expected an object keyed by segment id");
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) json_util::fail(child(path, key), "expected a number");
    out.emplace(key, value.get<double>());
  }
  return out;
}

Segment read_segment(const json& j, const std::string& path) {
  expect_object(j, path, {"id", "beta", "child_like"});
  Segment s;
  s.id = json_util::string(j, "id", path);
  s.beta = number(j, "beta", path);
  s.child_like = j.contains("child_like") ? json_util::boolean(j, "child_like", path) : false;
  return s;
}

DemandPoint read_point(const json& j, const std::string& path) {
  expect_object(j, path, {"id", "lat", "lon", "zone", "weights"});
  DemandPoint p;
  p.id = json_util::string(j, "id", path);
  p.lat = number(j, "lat", path);
  p.lon = number(j, "lon", path);
  if (j.contains("zone")) p.zone = json_util::string(j, "zone", path);
  p.weights = read_segment_map(member(j, "weights", path), child(path, "weights"));
  return p;
}

ParkLocation read_park(const json& j, const std::string& path) {
  expect_object(j, path, {"id", "kind", "lat", "lon", "area_m2", "alpha", "zone", "designs"});
  ParkLocation park;
  park.id = json_util::string(j, "id", path);
  const std::string kind = json_util::string(j, "kind", path);
  if (kind == "existing") {
    park.kind = ParkKind::kExisting;
  } else if (kind == "candidate") {
    park.kind = ParkKind::kCandidate;
  } else {
    json_util::fail(child(path, "kind"), "kind must be \"existing\" or \"candidate\"");
  }
  park.lat = number(j, "lat", path);
  park.lon = number(j, "lon", path);
  if (j.contains("area_m2")) park.area_m2 = number(j, "area_m2", path);
  park.alpha = number(j, "alpha", path);
  if (j.contains("zone")) park.zone = json_util::string(j, "zone", path);
  const std::string dpath = child(path, "designs");
  const json& designs = expect_array(member(j, "designs", path), dpath);
  for (std::size_t r = 0; r < designs.size(); ++r) {
    const std::string rpath = child(dpath, r);
    expect_object(designs[r], rpath, {"rank", "theta", "cost_override"});
    DesignOption d;
    d.rank = static_cast<int>(json_util::integer(designs[r], "rank", rpath));
    d.theta = read_segment_map(member(designs[r], "theta", rpath), child(rpath, "theta"));
    if (designs[r].contains("cost_override")) {
      d.cost_override = number(designs[r], "cost_override", rpath);
    }
    park.designs.push_back(std::move(d));
  }
  return park;
}

Neighborhood read_neighborhood(const json& j, const std::string& path) {
  expect_object(j, path,
                {"id", "name", "population", "demand_points", "parks", "rho_factors",
                 "baseline_budget", "min_budget", "delta"});
  Neighborhood nb;
  nb.id = json_util::string(j, "id", path);
  nb.name = j.contains("name") ? json_util::string(j, "name", path) : nb.id;
  nb.population = json_util::integer(j, "population", path);
  nb.baseline_budget = number(j, "baseline_budget", path);
  nb.min_budget = number(j, "min_budget", path);
  if (j.contains("delta")) nb.delta = number(j, "delta", path);

  const std::string ppath = child(path, "demand_points");
  const json& points = expect_array(member(j, "demand_points", path), ppath);
  for (std::size_t i = 0; i < points.size(); ++i) {
    nb.demand_points.push_back(read_point(points[i], child(ppath, i)));
  }
  const std::string jpath = child(path, "parks");
  const json& parks = expect_array(member(j, "parks", path), jpath);
  for (std::size_t k = 0; k < parks.size(); ++k) {
    nb.parks.push_back(read_park(parks[k], child(jpath, k)));
  }
  const std::string fpath = child(path, "rho_factors");
  const json& factors = expect_array(member(j, "rho_factors", path), fpath);
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const std::string p = child(fpath, f);
    expect_object(factors[f], p, {"name", "value"});
    nb.rho_factors.push_back({json_util::string(factors[f], "name", p), number(factors[f], "value", p)});
  }
  return nb;
}

SimParams read_sim_params(const json& j, const std::string& path) {
  expect_object(j, path,
                {"d_large_km", "distance_adjust", "cap_child_m", "cap_small_m", "cap_large_m",
                 "large_park_m2", "candidate_same_zone_m", "candidate_other_zone_m",
                 "alpha_shift_eps"});
  SimParams p;
  p.d_large_km = number(j, "d_large_km", path);
  p.distance_adjust = number(j, "distance_adjust", path);
  p.cap_child_m = number(j, "cap_child_m", path);
  p.cap_small_m = number(j, "cap_small_m", path);
  p.cap_large_m = number(j, "cap_large_m", path);
  p.large_park_m2 = number(j, "large_park_m2", path);
  p.candidate_same_zone_m = number(j, "candidate_same_zone_m", path);
  p.candidate_other_zone_m = number(j, "candidate_other_zone_m", path);
  p.alpha_shift_eps = json_util::number_or(j, "alpha_shift_eps", path, p.alpha_shift_eps);
  return p;
}

CostParams read_cost_params(const json& j, const std::string& path) {
  expect_object(j, path,
                {"maintenance_per_m2", "new_park_per_m2", "design_step", "new_park_area_m2",
                 "per_capita", "horizon_years", "maintenance_margin"});
  CostParams p;
  p.maintenance_per_m2 = number(j, "maintenance_per_m2", path);
  p.new_park_per_m2 = number(j, "new_park_per_m2", path);
  p.design_step = number(j, "design_step", path);
  p.new_park_area_m2 = number(j, "new_park_area_m2", path);
  p.per_capita = number(j, "per_capita", path);
  p.horizon_years = static_cast<int>(json_util::integer(j, "horizon_years", path));
  p.maintenance_margin = number(j, "maintenance_margin", path);
  return p;
}

}  // namespace

Instance instance_from_json(const json& j) {
  const std::string root;
  expect_object(j, root,
                {"version", "city", "B_T", "delta", "segments", "sim_params", "cost_params",
                 "neighborhoods", "seed"});
  Instance inst;
  inst.version = static_cast<int>(json_util::integer(j, "version", root));
  if (inst.version != 1) json_util::fail("/version", "unsupported version");
  inst.city = json_util::string(j, "city", root);
  inst.total_budget = number(j, "B_T", root);
  inst.delta = number(j, "delta", root);
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) json_util::fail("/seed", "expected a non-negative integer");
    inst.seed = s.get<std::uint64_t>();
  }
  const json& segments = expect_array(member(j, "segments", root), "/segments");
  for (std::size_t s = 0; s < segments.size(); ++s) {
    inst.segments.push_back(read_segment(segments[s], child("/segments", s)));
  }
  inst.sim_params = read_sim_params(member(j, "sim_params", root), "/sim_params");
  inst.cost_params = read_cost_params(member(j, "cost_params", root), "/cost_params");
  const json& nbhds = expect_array(member(j, "neighborhoods", root), "/neighborhoods");
  for (std::size_t n = 0; n < nbhds.size(); ++n) {
    inst.neighborhoods.push_back(read_neighborhood(nbhds[n], child("/neighborhoods", n)));
  }
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["version"] = inst.version;
  j["city"] = inst.city;
  j["B_T"] = inst.total_budget;
  j["delta"] = inst.delta;
  if (inst.seed) j["seed"] = *inst.seed;

  json segments = json::array();
  for (const auto& s : inst.segments) {
    segments.push_back({{"id", s.id}, {"beta", s.beta}, {"child_like", s.child_like}});
  }
  j["segments"] = std::move(segments);

  const SimParams& sp = inst.sim_params;
  j["sim_params"] = {{"d_large_km", sp.d_large_km},
                     {"distance_adjust", sp.distance_adjust},
                     {"cap_child_m", sp.cap_child_m},
                     {"cap_small_m", sp.cap_small_m},
                     {"cap_large_m", sp.cap_large_m},
                     {"large_park_m2", sp.large_park_m2},
                     {"candidate_same_zone_m", sp.candidate_same_zone_m},
                     {"candidate_other_zone_m", sp.candidate_other_zone_m},
                     {"alpha_shift_eps", sp.alpha_shift_eps}};
  const CostParams& cp = inst.cost_params;
  j["cost_params"] = {{"maintenance_per_m2", cp.maintenance_per_m2},
                      {"new_park_per_m2", cp.new_park_per_m2},
                      {"design_step", cp.design_step},
                      {"new_park_area_m2", cp.new_park_area_m2},
                      {"per_capita", cp.per_capita},
                      {"horizon_years", cp.horizon_years},
                      {"maintenance_margin", cp.maintenance_margin}};

  json nbhds = json::array();
  for (const auto& nb : inst.neighborhoods) {
    json jn;
    jn["id"] = nb.id;
    jn["name"] = nb.name;
    jn["population"] = nb.population;
    jn["baseline_budget"] = nb.baseline_budget;
    jn["min_budget"] = nb.min_budget;
    if (nb.delta) jn["delta"] = *nb.delta;
    json points = json::array();
    for (const auto& p : nb.demand_points) {
      json jp = {{"id", p.id}, {"lat", p.lat}, {"lon", p.lon}, {"weights", p.weights}};
      if (!p.zone.empty()) jp["zone"] = p.zone;
      points.push_back(std::move(jp));
    }
    jn["demand_points"] = std::move(points);
    json parks = json::array();
    for (const auto& park : nb.parks) {
      json jp = {{"id", park.id},
                 {"kind", park.is_existing() ? "existing" : "candidate"},
                 {"lat", park.lat},
                 {"lon", park.lon},
                 {"alpha", park.alpha}};
      if (park.area_m2) jp["area_m2"] = *park.area_m2;
      if (!park.zone.empty()) jp["zone"] = park.zone;
      json designs = json::array();
      for (const auto& d : park.designs) {
        json jd = {{"rank", d.rank}, {"theta", d.theta}};
        if (d.cost_override) jd["cost_override"] = *d.cost_override;
        designs.push_back(std::move(jd));
      }
      jp["designs"] = std::move(designs);
      parks.push_back(std::move(jp));
    }
    jn["parks"] = std::move(parks);
    json factors = json::array();
    for (const auto& f : nb.rho_factors) factors.push_back({{"name", f.name}, {"value", f.value}});
    jn["rho_factors"] = std::move(factors);
    nbhds.push_back(std::move(jn));
  }
  j["neighborhoods"] = std::move(nbhds);
  return j;
}

Instance parse_instance_unvalidated(std::string_view text) {
  return instance_from_json(json_util::parse_document(text));
}

Instance parse_instance(std::string_view text) {
  Instance inst = parse_instance_unvalidated(text);
  ValidationReport report = validate(inst);
  if (!report.empty()) {
    throw Error(ErrorCode::kInvalidInput, report.front().message, report.front().path);
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2); }

GenConfig parse_gen_config(std::string_view text) {
  const json j = json_util::parse_document(text);
  const std::string root;
  expect_object(j, root,
                {"seed", "n_neighborhoods", "demand_points_per_nbhd", "parks_per_nbhd",
                 "candidates_per_nbhd", "segment_spec", "designs_per_location", "extent_km",
                 "density_min", "density_max", "alpha_mean", "alpha_sd", "city", "center_lat",
                 "center_lon"});
  GenConfig cfg;
  auto int_or = [&](std::string_view key, int fallback) {
    return j.contains(std::string(key)) ? static_cast<int>(json_util::integer(j, key, root))
                                        : fallback;
  };
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) json_util::fail("/seed", "expected a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  cfg.n_neighborhoods = int_or("n_neighborhoods", cfg.n_neighborhoods);
  cfg.demand_points_per_nbhd = int_or("demand_points_per_nbhd", cfg.demand_points_per_nbhd);
  cfg.parks_per_nbhd = int_or("parks_per_nbhd", cfg.parks_per_nbhd);
  cfg.candidates_per_nbhd = int_or("candidates_per_nbhd", cfg.candidates_per_nbhd);
  cfg.designs_per_location = int_or("designs_per_location", cfg.designs_per_location);
  cfg.extent_km = json_util::number_or(j, "extent_km", root, cfg.extent_km);
  cfg.density_min = json_util::number_or(j, "density_min", root, cfg.density_min);
  cfg.density_max = json_util::number_or(j, "density_max", root, cfg.density_max);
  cfg.alpha_mean = json_util::number_or(j, "alpha_mean", root, cfg.alpha_mean);
  cfg.alpha_sd = json_util::number_or(j, "alpha_sd", root, cfg.alpha_sd);
  cfg.center_lat = json_util::number_or(j, "center_lat", root, cfg.center_lat);
  cfg.center_lon = json_util::number_or(j, "center_lon", root, cfg.center_lon);
  if (j.contains("city")) cfg.city = json_util::string(j, "city", root);
  if (j.contains("segment_spec")) {
    const json& segs = expect_array(j.at("segment_spec"), "/segment_spec");
    for (std::size_t s = 0; s < segs.size(); ++s) {
      cfg.segment_spec.push_back(read_segment(segs[s], child("/segment_spec", s)));
    }
  }
  return cfg;
}

}  // namespace ugsopt
