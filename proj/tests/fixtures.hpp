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

#ifndef UGSOPT_TESTS_FIXTURES_HPP_
#define UGSOPT_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugsopt/instance.hpp"
#include "ugsopt/rng.hpp"
#include "ugsopt/sim.hpp"

namespace fixture {

// One neighborhood, one segment, one demand point, one existing park with a
// single design.
inline const char* kMinimalDocument = R"({
  "version": 1,
  "city": "Tiny",
  "B_T": 65100.0,
  "delta": 0.3,
  "segments": [{"id": "all", "beta": 1.0, "child_like": false}],
  "sim_params": {"d_large_km": 1.0, "distance_adjust": 1.3, "cap_child_m": 500.0,
                 "cap_small_m": 500.0, "cap_large_m": 800.0, "large_park_m2": 50000.0,
                 "candidate_same_zone_m": 500.0, "candidate_other_zone_m": 1000.0,
                 "alpha_shift_eps": 0.01},
  "cost_params": {"maintenance_per_m2": 3.1, "new_park_per_m2": 15.0, "design_step": 0.8,
                  "new_park_area_m2": 50000.0, "per_capita": 42.0, "horizon_years": 5,
                  "maintenance_margin": 1.05},
  "neighborhoods": [{
    "id": "N1", "name": "Only", "population": 310,
    "demand_points": [{"id": "p1", "lat": 45.5, "lon": -73.6, "zone": "z1",
                       "weights": {"all": 1.0}}],
    "parks": [{"id": "e1", "kind": "existing", "lat": 45.501, "lon": -73.6,
               "area_m2": 20000.0, "alpha": 1.0, "zone": "z1",
               "designs": [{"rank": 1, "theta": {"all": 0.0}}]}],
    "rho_factors": [{"name": "density", "value": 1.0}],
    "baseline_budget": 65100.0,
    "min_budget": 62000.0
  }]
})";

struct SmallCase {
  ugsopt::Instance inst;
  double budget = 0.0;
};

// One neighborhood within the enumeration limits: <= 5 points, <= 2
// segments, <= 6 locations, <= 3 designs. The budget is drawn between the
// maintenance floor and the cost of the most expensive plan.
inline SmallCase small_case(std::uint64_t seed) {
  ugsopt::Rng rng(seed * 7919 + 13);
  ugsopt::GenConfig cfg;
  cfg.seed = seed;
  cfg.n_neighborhoods = 1;
  cfg.demand_points_per_nbhd = 1 + static_cast<int>(rng.index(5));
  const int locations = 1 + static_cast<int>(rng.index(6));
  cfg.candidates_per_nbhd = static_cast<int>(rng.index(static_cast<std::uint64_t>(locations) + 1));
  cfg.parks_per_nbhd = locations - cfg.candidates_per_nbhd;
  cfg.designs_per_location = 1 + static_cast<int>(rng.index(3));
  cfg.extent_km = 0.6 + 0.6 * rng.uniform();
  auto segs = ugsopt::default_segments();
  segs.resize(1 + rng.index(2));
  cfg.segment_spec = segs;
  SmallCase out{ugsopt::generate_synthetic(cfg), 0.0};
  const auto& nb = out.inst.neighborhoods.front();
  double max_cost = 0.0;
  for (const auto& park : nb.parks) {
    max_cost += ugsopt::design_cost(park, static_cast<int>(park.designs.size()), out.inst.cost_params);
  }
  out.budget = nb.min_budget + rng.uniform() * (max_cost - nb.min_budget);
  return out;
}

inline ugsopt::DemandPoint point(std::string id, double lat, double lon,
                                 std::map<std::string, double> weights, std::string zone = "z1") {
  ugsopt::DemandPoint p;
  p.id = std::move(id);
  p.lat = lat;
  p.lon = lon;
  p.zone = std::move(zone);
  p.weights = std::move(weights);
  return p;
}

// Park with one design per theta value; the same theta for every listed segment.
inline ugsopt::ParkLocation park(std::string id, ugsopt::ParkKind kind, double lat, double lon,
                                 std::vector<double> thetas, std::vector<std::string> segments,
                                 double alpha = 1.0, std::optional<double> area = std::nullopt,
                                 std::string zone = "z1") {
  ugsopt::ParkLocation j;
  j.id = std::move(id);
  j.kind = kind;
  j.lat = lat;
  j.lon = lon;
  j.area_m2 = area;
  j.alpha = alpha;
  j.zone = std::move(zone);
  for (std::size_t r = 0; r < thetas.size(); ++r) {
    ugsopt::DesignOption d;
    d.rank = static_cast<int>(r) + 1;
    for (const auto& s : segments) d.theta[s] = thetas[r];
    j.designs.push_back(std::move(d));
  }
  return j;
}

inline ugsopt::UtilityTable table(const ugsopt::Instance& inst, std::size_t n = 0) {
  return ugsopt::build_utility_table(inst.neighborhoods.at(n), inst.segments, inst.sim_params,
                                     inst.cost_params);
}

}  // namespace fixture

#endif  // UGSOPT_TESTS_FIXTURES_HPP_
