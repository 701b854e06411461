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
#include <numbers>

#include "ugsopt/error.hpp"
#include "ugsopt/sim.hpp"

namespace ugsopt {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double theta_for(const ParkLocation& park, int rank, const Segment& segment) {
  const auto& theta = park.designs.at(static_cast<std::size_t>(rank - 1)).theta;
  auto it = theta.find(segment.id);
  return it == theta.end() ? 0.0 : it->second;
}

}  // namespace

double travel_distance_m(GeoPoint a, GeoPoint b, double adjust) {
  const double phi_mid = 0.5 * (a.lat + b.lat) * kDegToRad;
  const double x = (b.lon - a.lon) * kDegToRad * std::cos(phi_mid);
  const double y = (b.lat - a.lat) * kDegToRad;
  return kEarthRadiusM * std::sqrt(x * x + y * y) * adjust;
}

EffectiveDistance effective_distance(const DemandPoint& point, const ParkLocation& park,
                                     const Segment& segment, const SimParams& sim,
                                     const CostParams& cost) {
  double meters = 0.0;
  if (park.is_existing()) {
    meters = travel_distance_m({point.lat, point.lon}, {park.lat, park.lon}, sim.distance_adjust);
  } else {
    const bool same_zone = !park.zone.empty() && park.zone == point.zone;
    meters = same_zone ? sim.candidate_same_zone_m : sim.candidate_other_zone_m;
  }
  double cap = sim.cap_large_m;
  if (segment.child_like) {
    cap = sim.cap_child_m;
  } else if (park_area_m2(park, cost) < sim.large_park_m2) {
    cap = sim.cap_small_m;
  }
  return {meters / 1000.0, meters > cap};
}

AlphaShift shift_alphas(std::span<const double> alphas, double eps) {
  AlphaShift out{{alphas.begin(), alphas.end()}, 0.0};
  if (alphas.empty()) return out;
  const double lo = *std::min_element(alphas.begin(), alphas.end());
  out.offset = std::max(0.0, eps - lo);
  if (out.offset > 0.0) {
    for (double& a : out.alphas) a += out.offset;
  }
  return out;
}

double utility_value(double alpha, double theta, double distance_km, double beta) {
  const double attractiveness = alpha * (1.0 + theta);
  return attractiveness / std::pow(1.0 + distance_km, beta);
}

double utility(const DemandPoint& point, const Segment& segment, const ParkLocation& park,
               int rank, const SimParams& sim, const CostParams& cost, double alpha_offset) {
  const EffectiveDistance d = effective_distance(point, park, segment, sim, cost);
  if (d.blocked) return 0.0;
  return utility_value(park.alpha + alpha_offset, theta_for(park, rank, segment), d.km,
                       segment.beta);
}

double no_choice_utility(const Segment& segment, std::span<const double> shifted_alphas,
                         const SimParams& sim) {
  if (shifted_alphas.empty()) {
    throw Error(ErrorCode::kInvalidInput, "no-choice utility needs at least one park location");
  }
  double sum = 0.0;
  for (double a : shifted_alphas) sum += a;
  const double mean = sum / static_cast<double>(shifted_alphas.size());
  return mean / std::pow(1.0 + sim.d_large_km, segment.beta);
}

UtilityTable UtilityTable::with_no_choice_scaled(double multiplier) const {
  UtilityTable out = *this;
  for (double& v : out.u0) v *= multiplier;
  return out;
}

UtilityTable build_utility_table(const Neighborhood& nbhd, std::span<const Segment> segments,
                                 const SimParams& sim, const CostParams& cost) {
  if (nbhd.parks.empty()) {
    throw Error(ErrorCode::kInvalidInput, "neighborhood " + nbhd.id + " has no park locations");
  }
  UtilityTable t;
  t.n_points = nbhd.demand_points.size();
  t.n_segments = segments.size();
  t.n_parks = nbhd.parks.size();
  for (std::size_t j = 0; j < t.n_parks; ++j) {
    t.park_first_option.push_back(t.option_park.size());
    for (const auto& d : nbhd.parks[j].designs) {
      t.option_park.push_back(j);
      t.option_rank.push_back(d.rank);
    }
  }
  t.n_options = t.option_park.size();

  std::vector<double> raw;
  raw.reserve(t.n_parks);
  for (const auto& park : nbhd.parks) raw.push_back(park.alpha);
  AlphaShift shift = shift_alphas(raw, sim.alpha_shift_eps);
  t.alpha = std::move(shift.alphas);
  t.alpha_offset = shift.offset;

  const std::size_t pairs = t.n_points * t.n_segments;
  t.u.assign(pairs * t.n_options, 0.0);
  t.u0.assign(pairs, 0.0);
  t.weight.assign(pairs, 0.0);
  t.blocked.assign(pairs * t.n_parks, 0);
  t.distance_km.assign(t.n_points * t.n_parks, 0.0);

  std::vector<double> u0_by_segment;
  for (const auto& seg : segments) u0_by_segment.push_back(no_choice_utility(seg, t.alpha, sim));

  for (std::size_t i = 0; i < t.n_points; ++i) {
    const DemandPoint& point = nbhd.demand_points[i];
    for (std::size_t s = 0; s < t.n_segments; ++s) {
      const Segment& seg = segments[s];
      const std::size_t p = t.pair(i, s);
      auto w = point.weights.find(seg.id);
      t.weight[p] = w == point.weights.end() ? 0.0 : w->second;
      t.u0[p] = u0_by_segment[s];
      for (std::size_t j = 0; j < t.n_parks; ++j) {
        const ParkLocation& park = nbhd.parks[j];
        const EffectiveDistance d = effective_distance(point, park, seg, sim, cost);
        t.distance_km[i * t.n_parks + j] = d.km;
        t.blocked[p * t.n_parks + j] = d.blocked ? 1 : 0;
        if (d.blocked) continue;
        for (const auto& design : park.designs) {
          const std::size_t k = t.option_index(j, design.rank);
          t.u[p * t.n_options + k] =
              utility_value(t.alpha[j], theta_for(park, design.rank, seg), d.km, seg.beta);
        }
      }
    }
  }
  return t;
}

}  // namespace ugsopt
