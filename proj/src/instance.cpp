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

#include "ugsopt/error.hpp"
#include "ugsopt/instance.hpp"

namespace ugsopt {

namespace {

constexpr double kWeightSumTol = 1e-9;
constexpr double kBudgetTol = 1e-6;

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

class Checker {
 public:
  explicit Checker(ValidationReport& out) : out_(out) {}

  void require(bool ok, std::string path, std::string message) {
    if (!ok) out_.push_back({std::move(path), std::move(message)});
  }

 private:
  ValidationReport& out_;
};

void check_segment_map(Checker& c, const std::map<std::string, double>& m,
                       const std::set<std::string>& segment_ids, const std::string& path) {
  for (const auto& [id, value] : m) {
    c.require(segment_ids.count(id) > 0, path + "/" + id, "unknown segment id");
    c.require(std::isfinite(value) && value >= 0.0, path + "/" + id, "value must be >= 0");
  }
  for (const auto& id : segment_ids) {
    c.require(m.count(id) > 0, path + "/" + id, "missing entry for segment");
  }
}

void check_park(Checker& c, const ParkLocation& park, const std::set<std::string>& segment_ids,
                const std::string& path) {
  c.require(!park.designs.empty(), path + "/designs", "a park location needs at least one design");
  if (park.area_m2) {
    c.require(*park.area_m2 > 0.0, path + "/area_m2", "area must be > 0");
  } else {
    c.require(!park.is_existing(), path + "/area_m2", "existing parks must declare their area");
  }
  c.require(std::isfinite(park.alpha), path + "/alpha", "alpha must be finite");
  c.require(std::isfinite(park.lat) && std::isfinite(park.lon), path, "coordinates must be finite");
  for (std::size_t r = 0; r < park.designs.size(); ++r) {
    const DesignOption& d = park.designs[r];
    const std::string dpath = path + "/designs/" + std::to_string(r);
    c.require(d.rank == static_cast<int>(r) + 1, dpath + "/rank",
              "design ranks must form the sequence 1..|R(j)|");
    check_segment_map(c, d.theta, segment_ids, dpath + "/theta");
    if (d.cost_override) {
      c.require(*d.cost_override >= 0.0, dpath + "/cost_override", "cost must be >= 0");
    }
    if (r == 0 && park.is_existing()) {
      for (const auto& [sid, th] : d.theta) {
        c.require(th == 0.0, dpath + "/theta/" + sid,
                  "baseline design must have zero attraction increase");
      }
    }
    if (r > 0) {
      for (const auto& [sid, th] : d.theta) {
        auto prev = park.designs[r - 1].theta.find(sid);
        if (prev != park.designs[r - 1].theta.end()) {
          c.require(th >= prev->second, dpath + "/theta/" + sid,
                    "attraction increase must be non-decreasing in rank");
        }
      }
    }
  }
}

bool known_factor(const std::string& name) {
  return name == "density" || name == "social" || name == "material" || name == "smoke";
}

}  // namespace

const Neighborhood* Instance::find_neighborhood(std::string_view id) const {
  for (const auto& n : neighborhoods) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

double park_area_m2(const ParkLocation& park, const CostParams& cost) {
  return park.area_m2.value_or(cost.new_park_area_m2);
}

double design_cost(const ParkLocation& park, int rank, const CostParams& cost) {
  if (rank < 1 || rank > static_cast<int>(park.designs.size())) {
    throw Error(ErrorCode::kInvalidInput,
                "design rank " + std::to_string(rank) + " not offered at park " + park.id);
  }
  const DesignOption& d = park.designs[static_cast<std::size_t>(rank - 1)];
  if (d.cost_override) return *d.cost_override;
  const double base = park.is_existing() ? cost.maintenance_per_m2 : cost.new_park_per_m2;
  return base * park_area_m2(park, cost) * (1.0 + cost.design_step * (rank - 1));
}

double maintenance_floor(const Neighborhood& nbhd, const CostParams& cost) {
  double total = 0.0;
  for (const auto& park : nbhd.parks) {
    if (park.is_existing() && !park.designs.empty()) total += design_cost(park, 1, cost);
  }
  return total;
}

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  Checker c(report);

  c.require(inst.version == 1, "/version", "unsupported version");
  c.require(inst.delta >= 0.0 && inst.delta <= 1.0, "/delta", "delta must lie in [0, 1]");
  c.require(!inst.segments.empty(), "/segments", "at least one segment required");
  c.require(!inst.neighborhoods.empty(), "/neighborhoods", "at least one neighborhood required");

  std::set<std::string> segment_ids;
  for (std::size_t s = 0; s < inst.segments.size(); ++s) {
    const Segment& seg = inst.segments[s];
    const std::string path = "/segments/" + std::to_string(s);
    c.require(!seg.id.empty(), path + "/id", "segment id must be non-empty");
    c.require(segment_ids.insert(seg.id).second, path + "/id", "duplicate segment id");
    c.require(seg.beta > 0.0, path + "/beta", "beta must be > 0");
  }

  const SimParams& sp = inst.sim_params;
  for (auto [name, v] : {std::pair{"d_large_km", sp.d_large_km},
                         {"distance_adjust", sp.distance_adjust},
                         {"cap_child_m", sp.cap_child_m},
                         {"cap_small_m", sp.cap_small_m},
                         {"cap_large_m", sp.cap_large_m},
                         {"large_park_m2", sp.large_park_m2},
                         {"candidate_same_zone_m", sp.candidate_same_zone_m},
                         {"candidate_other_zone_m", sp.candidate_other_zone_m},
                         {"alpha_shift_eps", sp.alpha_shift_eps}}) {
    c.require(v > 0.0, std::string("/sim_params/") + name, "must be > 0");
  }
  c.require(sp.cap_small_m <= sp.cap_large_m, "/sim_params/cap_small_m",
            "cap_small_m must not exceed cap_large_m");

  const CostParams& cp = inst.cost_params;
  for (auto [name, v] : {std::pair{"maintenance_per_m2", cp.maintenance_per_m2},
                         {"new_park_per_m2", cp.new_park_per_m2},
                         {"design_step", cp.design_step},
                         {"new_park_area_m2", cp.new_park_area_m2},
                         {"per_capita", cp.per_capita},
                         {"horizon_years", static_cast<double>(cp.horizon_years)},
                         {"maintenance_margin", cp.maintenance_margin}}) {
    c.require(v > 0.0, std::string("/cost_params/") + name, "must be > 0");
  }

  std::set<std::string> nbhd_ids;
  std::set<std::string> point_ids;
  std::set<std::string> park_ids;
  double baseline_sum = 0.0;
  for (std::size_t n = 0; n < inst.neighborhoods.size(); ++n) {
    const Neighborhood& nb = inst.neighborhoods[n];
    const std::string path = "/neighborhoods/" + std::to_string(n);
    baseline_sum += nb.baseline_budget;
    c.require(!nb.id.empty(), path + "/id", "neighborhood id must be non-empty");
    c.require(nbhd_ids.insert(nb.id).second, path + "/id", "duplicate neighborhood id");
    c.require(nb.population > 0, path + "/population", "population must be > 0");
    c.require(!nb.demand_points.empty(), path + "/demand_points",
              "at least one demand point required");
    c.require(!nb.parks.empty(), path + "/parks", "at least one park location required");
    if (nb.delta) {
      c.require(*nb.delta >= 0.0 && *nb.delta <= 1.0, path + "/delta",
                "delta must lie in [0, 1]");
    }

    double weight_sum = 0.0;
    for (std::size_t i = 0; i < nb.demand_points.size(); ++i) {
      const DemandPoint& dp = nb.demand_points[i];
      const std::string ppath = path + "/demand_points/" + std::to_string(i);
      c.require(point_ids.insert(dp.id).second, ppath + "/id", "duplicate demand point id");
      c.require(std::isfinite(dp.lat) && std::isfinite(dp.lon), ppath,
                "coordinates must be finite");
      check_segment_map(c, dp.weights, segment_ids, ppath + "/weights");
      for (const auto& [sid, w] : dp.weights) weight_sum += w;
    }
    c.require(std::abs(weight_sum - 1.0) <= kWeightSumTol, path + "/demand_points",
              "weights must sum to 1");

    for (std::size_t j = 0; j < nb.parks.size(); ++j) {
      const std::string jpath = path + "/parks/" + std::to_string(j);
      c.require(park_ids.insert(nb.parks[j].id).second, jpath + "/id", "duplicate park id");
      check_park(c, nb.parks[j], segment_ids, jpath);
    }

    std::set<std::string> factor_names;
    for (std::size_t f = 0; f < nb.rho_factors.size(); ++f) {
      const RhoFactor& rf = nb.rho_factors[f];
      const std::string fpath = path + "/rho_factors/" + std::to_string(f);
      c.require(known_factor(rf.name), fpath + "/name",
                "factor name must be one of density, social, material, smoke");
      c.require(factor_names.insert(rf.name).second, fpath + "/name", "duplicate factor");
      c.require(rf.value > 0.0, fpath + "/value", "factor must be > 0");
    }

    bool designs_ok = true;
    for (const auto& park : nb.parks) designs_ok = designs_ok && !park.designs.empty();
    if (designs_ok) {
      const double floor = maintenance_floor(nb, inst.cost_params);
      c.require(close_rel(nb.min_budget, floor, 1e-9), path + "/min_budget",
                "min_budget must equal the rank-1 maintenance cost of the existing parks (" +
                    std::to_string(floor) + ")");
    }
    c.require(nb.baseline_budget >= nb.min_budget, path + "/baseline_budget",
              "baseline budget is below the maintenance floor; apply the maintenance-margin "
              "adjustment (baseline = max(per-capita budget, margin x min_budget))");
  }

  c.require(std::abs(inst.total_budget - baseline_sum) <=
                std::max(kBudgetTol, 1e-12 * std::abs(baseline_sum)),
            "/B_T", "B_T must equal the sum of baseline budgets");
  return report;
}

}  // namespace ugsopt
