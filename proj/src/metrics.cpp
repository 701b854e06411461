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

#include "ugsopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ugsopt/error.hpp"

namespace ugsopt {

std::vector<double> expected_distances(const PlanSolution& plan, const UtilityTable& table) {
  const std::size_t pairs = table.n_pairs();
  const std::size_t parks = table.n_parks;
  if (plan.p.size() != pairs * parks) {
    throw Error(ErrorCode::kInvalidInput, "plan probabilities do not match the utility table",
                plan.neighborhood_id);
  }
  std::vector<double> out(pairs, 0.0);
  for (std::size_t pr = 0; pr < pairs; ++pr) {
    const std::size_t i = pr / table.n_segments;
    double d = 0.0;
    for (std::size_t j = 0; j < parks; ++j) {
      d += plan.p[pr * parks + j] * table.distance_km[i * parks + j];
    }
    out[pr] = d;
  }
  return out;
}

double weighted_mean_distance(std::span<const double> expected, std::span<const double> weight) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    num += weight[k] * expected[k];
    den += weight[k];
  }
  return den > 0.0 ? num / den : 0.0;
}

double l1_norm(std::span<const double> expected, std::span<const double> weight) {
  const double mean = weighted_mean_distance(expected, weight);
  double total = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    total += weight[k] * std::abs(expected[k] - mean);
  }
  return total;
}

double l2_norm(std::span<const double> expected, std::span<const double> weight) {
  const double mean = weighted_mean_distance(expected, weight);
  double total = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const double dev = expected[k] - mean;
    total += weight[k] * dev * dev;
  }
  return std::sqrt(total);
}

double minmax_distance(std::span<const double> expected, std::span<const double> weight) {
  double worst = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (weight[k] > 0.0) worst = std::max(worst, expected[k]);
  }
  return worst;
}

MetricReport compute_metrics(const PlanSolution& plan, const UtilityTable& table,
                             bool include_l2) {
  MetricReport r;
  r.expected_distance = expected_distances(plan, table);
  r.visit_share_pct = 100.0 * plan.objective;
  r.mean_distance = weighted_mean_distance(r.expected_distance, table.weight);
  r.l1_norm = l1_norm(r.expected_distance, table.weight);
  r.minmax_distance = minmax_distance(r.expected_distance, table.weight);
  if (include_l2) r.l2_norm = l2_norm(r.expected_distance, table.weight);
  return r;
}

CitySummary city_report(std::span<const NeighborhoodResult> results) {
  CitySummary out;
  double pop_total = 0.0;
  for (const NeighborhoodResult& res : results) {
    if (res.plan == nullptr || res.metrics == nullptr) {
      throw Error(ErrorCode::kInvalidInput, "missing neighborhood result");
    }
    CityRow row;
    row.neighborhood_id = res.plan->neighborhood_id;
    row.population = res.population;
    row.budget = res.plan->budget;
    if (res.plan->solver) {
      row.gap_pct = 100.0 * res.plan->solver->gap;
      row.runtime_s = res.plan->solver->wall_seconds;
    }
    row.share_pct = res.metrics->visit_share_pct;
    row.l1_norm = res.metrics->l1_norm;
    const auto pop = static_cast<double>(res.population);
    pop_total += pop;
    out.weighted_share_pct += pop * row.share_pct;
    out.weighted_l1 += pop * row.l1_norm;
    out.rows.push_back(std::move(row));
  }
  if (pop_total > 0.0) {
    out.weighted_share_pct /= pop_total;
    out.weighted_l1 /= pop_total;
  }
  return out;
}

std::string format_city_table(const CitySummary& summary) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %16s %9s %12s %11s %9s\n", "Neighborhood", "Budget ($)",
                "GAP (%)", "RunTime (s)", "ObjVal (%)", "L1-norm");
  out += line;
  for (const CityRow& r : summary.rows) {
    std::snprintf(line, sizeof line, "%-16s %16.2f %9.2f %12.2f %11.1f %9.4f\n",
                  r.neighborhood_id.c_str(), r.budget, r.gap_pct, r.runtime_s, r.share_pct,
                  r.l1_norm);
    out += line;
  }
  std::snprintf(line, sizeof line, "%-16s %16s %9s %12s %11.1f %9.4f\n", "Weighted average", "",
                "", "", summary.weighted_share_pct, summary.weighted_l1);
  out += line;
  return out;
}

std::vector<double> default_u0_multipliers() { return {1.1, 1.0, 0.9, 0.8, 0.7}; }

std::vector<SensitivityPoint> u0_sensitivity(const Neighborhood& nbhd, double budget,
                                             const UtilityTable& table, const CostParams& cost,
                                             std::span<const double> multipliers,
                                             const SolveOptions& opts) {
  std::vector<SensitivityPoint> out;
  for (double m : multipliers) {
    if (!(m > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "u0 multiplier must be > 0", "multipliers");
    }
    const UtilityTable scaled = table.with_no_choice_scaled(m);
    const PlanSolution s = solve_neighborhood(nbhd, budget, scaled, cost, opts);
    out.push_back({m, s.objective, s.solver->status, s.ranks});
  }
  return out;
}

}  // namespace ugsopt
