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

#ifndef UGSOPT_METRICS_HPP_
#define UGSOPT_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugsopt/plan.hpp"
#include "ugsopt/sim.hpp"

namespace ugsopt {

// Expected distance per pair (i * S + s): sum over parks of p_isj * d_ij, in km.
std::vector<double> expected_distances(const PlanSolution& plan, const UtilityTable& table);

double weighted_mean_distance(std::span<const double> expected, std::span<const double> weight);

double l1_norm(std::span<const double> expected, std::span<const double> weight);

// Not reported by default; the square-root analogue of the L1 norm.
double l2_norm(std::span<const double> expected, std::span<const double> weight);

// Largest expected distance among pairs with positive weight.
double minmax_distance(std::span<const double> expected, std::span<const double> weight);

struct MetricReport {
  double visit_share_pct = 0.0;
  double l1_norm = 0.0;
  double minmax_distance = 0.0;
  double mean_distance = 0.0;
  std::vector<double> expected_distance;
  std::optional<double> l2_norm;

  bool operator==(const MetricReport&) const = default;
};

MetricReport compute_metrics(const PlanSolution& plan, const UtilityTable& table,
                             bool include_l2 = false);

struct CityRow {
  std::string neighborhood_id;
  std::int64_t population = 0;
  double budget = 0.0;
  double gap_pct = 0.0;
  double runtime_s = 0.0;
  double share_pct = 0.0;
  double l1_norm = 0.0;

  bool operator==(const CityRow&) const = default;
};

struct CitySummary {
  std::vector<CityRow> rows;
  // Population-weighted mean visiting share, in percent.
  double weighted_share_pct = 0.0;
  double weighted_l1 = 0.0;

  bool operator==(const CitySummary&) const = default;
};

struct NeighborhoodResult {
  const PlanSolution* plan = nullptr;
  const MetricReport* metrics = nullptr;
  std::int64_t population = 0;
};

CitySummary city_report(std::span<const NeighborhoodResult> results);

std::string format_city_table(const CitySummary& summary);

struct SensitivityPoint {
  double multiplier = 1.0;
  double share = 0.0;
  MipStatus status = MipStatus::kOptimal;
  DesignAssignment ranks;
};

std::vector<double> default_u0_multipliers();

std::vector<SensitivityPoint> u0_sensitivity(const Neighborhood& nbhd, double budget,
                                             const UtilityTable& table, const CostParams& cost,
                                             std::span<const double> multipliers,
                                             const SolveOptions& opts = {});

}  // namespace ugsopt

#endif  // UGSOPT_METRICS_HPP_
