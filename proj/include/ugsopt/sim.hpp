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

#ifndef UGSOPT_SIM_HPP_
#define UGSOPT_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ugsopt/instance.hpp"

// Spatial-interaction (gravity) choice kernel: distances, attractiveness,
// park utilities and the no-choice utility.

namespace ugsopt {

inline constexpr double kEarthRadiusM = 6371000.0;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

// Equirectangular approximation of the great-circle distance, times `adjust`.
double travel_distance_m(GeoPoint a, GeoPoint b, double adjust);

struct EffectiveDistance {
  double km = 0.0;
  bool blocked = false;
};

// Existing parks use the adjusted travel distance; candidates use the fixed
// same-zone / other-zone distances. Blocked when the distance exceeds the cap
// that applies to the segment and park size.
EffectiveDistance effective_distance(const DemandPoint& point, const ParkLocation& park,
                                     const Segment& segment, const SimParams& sim,
                                     const CostParams& cost);

struct AlphaShift {
  std::vector<double> alphas;
  double offset = 0.0;
};

// offset = max(0, eps - min alpha); every alpha moves by the same offset.
AlphaShift shift_alphas(std::span<const double> alphas, double eps);

// A / (1 + d)^beta with A = alpha * (1 + theta); d in km.
double utility_value(double alpha, double theta, double distance_km, double beta);

// u_isjr for one (point, segment, park, rank). `alpha_offset` is the shift
// already decided for the neighborhood; 0 when blocked.
double utility(const DemandPoint& point, const Segment& segment, const ParkLocation& park,
               int rank, const SimParams& sim, const CostParams& cost, double alpha_offset);

// mean(alpha) / (1 + d_large)^beta over already shifted alphas.
double no_choice_utility(const Segment& segment, std::span<const double> shifted_alphas,
                         const SimParams& sim);

// Dense utilities for one neighborhood. Design options are flattened: option
// k belongs to park option_park[k] with rank option_rank[k].
struct UtilityTable {
  std::size_t n_points = 0;
  std::size_t n_segments = 0;
  std::size_t n_parks = 0;
  std::size_t n_options = 0;

  std::vector<std::size_t> option_park;
  std::vector<int> option_rank;
  std::vector<std::size_t> park_first_option;

  std::vector<double> u;            // [(i * S + s) * K + k]
  std::vector<double> u0;           // [i * S + s]
  std::vector<double> weight;       // [i * S + s]
  std::vector<std::uint8_t> blocked;  // [(i * S + s) * J + j]
  std::vector<double> distance_km;  // [i * J + j], reported even when blocked
  std::vector<double> alpha;        // shifted, per park
  double alpha_offset = 0.0;

  std::size_t pair(std::size_t i, std::size_t s) const { return i * n_segments + s; }
  std::size_t n_pairs() const { return n_points * n_segments; }
  double utility_at(std::size_t i, std::size_t s, std::size_t k) const {
    return u[pair(i, s) * n_options + k];
  }
  std::size_t option_index(std::size_t park, int rank) const {
    return park_first_option[park] + static_cast<std::size_t>(rank - 1);
  }

  // Copy with every u0 multiplied by `multiplier`.
  UtilityTable with_no_choice_scaled(double multiplier) const;
};

UtilityTable build_utility_table(const Neighborhood& nbhd, std::span<const Segment> segments,
                                 const SimParams& sim, const CostParams& cost);

}  // namespace ugsopt

#endif  // UGSOPT_SIM_HPP_
