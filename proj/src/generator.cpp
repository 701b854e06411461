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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ugsopt/budget.hpp"
#include "ugsopt/error.hpp"
#include "ugsopt/instance.hpp"
#include "ugsopt/rng.hpp"

namespace ugsopt {

namespace {

constexpr double kKmPerDegreeLat = 111.19492664455873;  // 6371 km * pi / 180

// Attraction increase per rank, existing parks then candidates.
constexpr double kExistingTheta[] = {0.0, 0.5, 1.0};
constexpr double kCandidateTheta[] = {0.75, 1.5, 3.0};

std::string padded(const char* prefix, int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width, value);
  return buf;
}

double round_cents(double v) { return std::round(v * 100.0) / 100.0; }

std::vector<DesignOption> make_designs(bool existing, int count,
                                       const std::vector<Segment>& segments) {
  std::vector<DesignOption> designs;
  for (int r = 1; r <= count; ++r) {
    DesignOption d;
    d.rank = r;
    const double th = existing ? kExistingTheta[r - 1] : kCandidateTheta[r - 1];
    for (const auto& s : segments) d.theta[s.id] = th;
    designs.push_back(std::move(d));
  }
  return designs;
}

}  // namespace

std::vector<Segment> default_segments() {
  return {{"children", 1.5, true}, {"adults", 1.0, false}, {"elderly", 1.5, false}};
}

Instance generate_synthetic(const GenConfig& cfg) {
  if (cfg.n_neighborhoods < 1 || cfg.demand_points_per_nbhd < 1 || cfg.parks_per_nbhd < 0 ||
      cfg.candidates_per_nbhd < 0 || cfg.parks_per_nbhd + cfg.candidates_per_nbhd < 1) {
    throw Error(ErrorCode::kInvalidInput,
                "generator needs >= 1 neighborhood, >= 1 demand point and >= 1 park location");
  }
  if (cfg.designs_per_location < 1 || cfg.designs_per_location > 3) {
    throw Error(ErrorCode::kInvalidInput, "designs_per_location must lie in [1, 3]");
  }
  if (!(cfg.extent_km > 0.0) || !(cfg.density_min > 0.0) || cfg.density_max < cfg.density_min) {
    throw Error(ErrorCode::kInvalidInput, "invalid extent or density range");
  }

  Rng rng(cfg.seed);
  Instance inst;
  inst.city = cfg.city;
  inst.delta = 0.30;
  inst.seed = cfg.seed;
  inst.segments = cfg.segment_spec.empty() ? default_segments() : cfg.segment_spec;
  const CostParams& cost = inst.cost_params;

  const int cols = static_cast<int>(std::ceil(std::sqrt(cfg.n_neighborhoods)));
  const double km_per_deg_lon = kKmPerDegreeLat * std::cos(cfg.center_lat * std::numbers::pi / 180.0);
  const double span_lat = cfg.extent_km / kKmPerDegreeLat;
  const double span_lon = cfg.extent_km / km_per_deg_lon;
  const int grid = std::max(1, static_cast<int>(std::ceil(std::sqrt(cfg.candidates_per_nbhd))));

  double total = 0.0;
  for (int n = 0; n < cfg.n_neighborhoods; ++n) {
    Neighborhood nb;
    nb.id = padded("N", n + 1, 2);
    nb.name = cfg.city + " district " + std::to_string(n + 1);
    const double lat0 = cfg.center_lat + (n / cols) * span_lat;
    const double lon0 = cfg.center_lon + (n % cols) * span_lon;
    auto zone_of = [&](double lat, double lon) {
      const int gy = std::clamp(static_cast<int>((lat - lat0) / span_lat * grid), 0, grid - 1);
      const int gx = std::clamp(static_cast<int>((lon - lon0) / span_lon * grid), 0, grid - 1);
      return nb.id + "-z" + std::to_string(gy * grid + gx);
    };

    double weight_total = 0.0;
    for (int i = 0; i < cfg.demand_points_per_nbhd; ++i) {
      DemandPoint p;
      p.id = nb.id + padded("-p", i + 1, 3);
      p.lat = lat0 + rng.uniform() * span_lat;
      p.lon = lon0 + rng.uniform() * span_lon;
      p.zone = zone_of(p.lat, p.lon);
      for (const auto& s : inst.segments) {
        const double w = rng.uniform(0.2, 1.0);
        p.weights[s.id] = w;
        weight_total += w;
      }
      nb.demand_points.push_back(std::move(p));
    }
    for (auto& p : nb.demand_points) {
      for (auto& [sid, w] : p.weights) w /= weight_total;
    }

    for (int j = 0; j < cfg.parks_per_nbhd; ++j) {
      ParkLocation park;
      park.id = nb.id + padded("-e", j + 1, 2);
      park.kind = ParkKind::kExisting;
      park.lat = lat0 + rng.uniform() * span_lat;
      park.lon = lon0 + rng.uniform() * span_lon;
      // Log-uniform between 3 000 and 90 000 m^2 so both distance caps occur.
      park.area_m2 = std::round(std::exp(rng.uniform(std::log(3000.0), std::log(90000.0))) / 10.0) * 10.0;
      park.alpha = rng.normal(cfg.alpha_mean, cfg.alpha_sd);
      park.zone = zone_of(park.lat, park.lon);
      park.designs = make_designs(true, cfg.designs_per_location, inst.segments);
      nb.parks.push_back(std::move(park));
    }
    for (int c = 0; c < cfg.candidates_per_nbhd; ++c) {
      ParkLocation park;
      park.id = nb.id + padded("-c", c + 1, 2);
      park.kind = ParkKind::kCandidate;
      const int gy = c / grid;
      const int gx = c % grid;
      park.lat = lat0 + (gy + 0.5) / grid * span_lat;
      park.lon = lon0 + (gx + 0.5) / grid * span_lon;
      park.alpha = rng.normal(cfg.alpha_mean, cfg.alpha_sd);
      park.zone = nb.id + "-z" + std::to_string(gy * grid + gx);
      park.designs = make_designs(false, cfg.designs_per_location, inst.segments);
      nb.parks.push_back(std::move(park));
    }

    const double density = rng.uniform(cfg.density_min, cfg.density_max);
    nb.population = std::max<std::int64_t>(
        1, std::llround(density * cfg.extent_km * cfg.extent_km));
    nb.rho_factors = {{"density", round_cents(rng.uniform(0.90, 1.10))},
                      {"social", round_cents(rng.uniform(0.95, 1.05))},
                      {"material", round_cents(rng.uniform(0.95, 1.05))},
                      {"smoke", round_cents(rng.uniform(0.95, 1.05))}};
    nb.min_budget = maintenance_floor(nb, cost);
    nb.baseline_budget = derive_baseline_budget(nb.population, cost, nb.min_budget);
    total += nb.baseline_budget;
    inst.neighborhoods.push_back(std::move(nb));
  }
  inst.total_budget = total;
  return inst;
}

}  // namespace ugsopt
