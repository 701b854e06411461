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

#ifndef UGSOPT_INSTANCE_HPP_
#define UGSOPT_INSTANCE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ugsopt {

// Age group with its own distance-decay exponent.
struct Segment {
  std::string id;
  double beta = 1.0;
  // Child-like segments use the stricter distance cap.
  bool child_like = false;

  bool operator==(const Segment&) const = default;
};

struct DemandPoint {
  std::string id;
  double lat = 0.0;
  double lon = 0.0;
  // Zone used for the fixed candidate-park distances (same zone vs other zone).
  std::string zone;
  // segment id -> share of the neighborhood population at this point.
  std::map<std::string, double> weights;

  bool operator==(const DemandPoint&) const = default;
};

struct DesignOption {
  int rank = 1;
  // segment id -> fractional attraction increase.
  std::map<std::string, double> theta;
  std::optional<double> cost_override;

  bool operator==(const DesignOption&) const = default;
};

enum class ParkKind { kExisting, kCandidate };

struct ParkLocation {
  std::string id;
  ParkKind kind = ParkKind::kExisting;
  double lat = 0.0;
  double lon = 0.0;
  // Unset only for candidates, which then use CostParams::new_park_area_m2.
  std::optional<double> area_m2;
  // Baseline attractiveness as ingested; may be negative before shifting.
  double alpha = 1.0;
  std::string zone;
  std::vector<DesignOption> designs;

  bool is_existing() const { return kind == ParkKind::kExisting; }
  bool operator==(const ParkLocation&) const = default;
};

struct RhoFactor {
  std::string name;  // density | social | material | smoke
  double value = 1.0;

  bool operator==(const RhoFactor&) const = default;
};

struct Neighborhood {
  std::string id;
  std::string name;
  std::int64_t population = 0;
  std::vector<DemandPoint> demand_points;
  std::vector<ParkLocation> parks;
  std::vector<RhoFactor> rho_factors;
  double baseline_budget = 0.0;
  // Sum of rank-1 (maintenance) costs of the existing parks.
  double min_budget = 0.0;
  // Per-neighborhood deviation threshold; falls back to Instance::delta.
  std::optional<double> delta;

  bool operator==(const Neighborhood&) const = default;
};

struct SimParams {
  double d_large_km = 1.0;
  double distance_adjust = 1.3;
  double cap_child_m = 500.0;
  double cap_small_m = 500.0;
  double cap_large_m = 800.0;
  double large_park_m2 = 50000.0;
  double candidate_same_zone_m = 500.0;
  double candidate_other_zone_m = 1000.0;
  double alpha_shift_eps = 0.01;

  bool operator==(const SimParams&) const = default;
};

struct CostParams {
  double maintenance_per_m2 = 3.10;
  double new_park_per_m2 = 15.0;
  double design_step = 0.8;
  double new_park_area_m2 = 50000.0;
  double per_capita = 42.0;
  int horizon_years = 5;
  double maintenance_margin = 1.05;

  bool operator==(const CostParams&) const = default;
};

struct Instance {
  int version = 1;
  std::string city;
  double total_budget = 0.0;  // B_T
  double delta = 0.30;
  std::vector<Segment> segments;
  SimParams sim_params;
  CostParams cost_params;
  std::vector<Neighborhood> neighborhoods;
  std::optional<std::uint64_t> seed;

  const Neighborhood* find_neighborhood(std::string_view id) const;
  bool operator==(const Instance&) const = default;
};

double park_area_m2(const ParkLocation& park, const CostParams& cost);

// c_jr: cost_override, else base * area * (1 + design_step * (r - 1)) with the
// maintenance rate for existing parks and the new-park rate for candidates.
// Throws Error(kInvalidInput) when the rank is not offered at the location.
double design_cost(const ParkLocation& park, int rank, const CostParams& cost);

// Sum of rank-1 costs over the existing parks of a neighborhood.
double maintenance_floor(const Neighborhood& nbhd, const CostParams& cost);

struct Violation {
  std::string path;
  std::string message;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

// Pure; an empty report means every instance invariant holds.
ValidationReport validate(const Instance& inst);

// Parses and validates the canonical JSON document. Throws Error(kInvalidInput)
// carrying the offending field path on schema or invariant violations.
Instance parse_instance(std::string_view text);

// Schema checks only; the caller runs validate().
Instance parse_instance_unvalidated(std::string_view text);

// Canonical form: sorted keys, two-space indent, shortest round-trip floats.
std::string serialize_instance(const Instance& inst);

struct GenConfig {
  std::uint64_t seed = 1;
  int n_neighborhoods = 3;
  int demand_points_per_nbhd = 20;
  int parks_per_nbhd = 3;
  int candidates_per_nbhd = 2;
  // Empty means the default children / adults / elderly split.
  std::vector<Segment> segment_spec;
  int designs_per_location = 3;
  double extent_km = 2.0;
  double density_min = 1500.0;  // people per km^2
  double density_max = 6000.0;
  double alpha_mean = 1.0;
  double alpha_sd = 0.6;
  std::string city = "Synthetic";
  double center_lat = 45.55;
  double center_lon = -73.60;
};

std::vector<Segment> default_segments();

// Deterministic synthetic city; every output passes validate().
Instance generate_synthetic(const GenConfig& cfg);

GenConfig parse_gen_config(std::string_view text);

}  // namespace ugsopt

#endif  // UGSOPT_INSTANCE_HPP_
