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

#include "ugsopt/plan.hpp"

#include <algorithm>
#include <cmath>

#include "ugsopt/error.hpp"

namespace ugsopt {

namespace {

constexpr double kBudgetTol = 1e-6;

bool within_budget(double spend, double budget) {
  return spend <= budget + std::max(kBudgetTol, 1e-12 * std::abs(budget));
}

void check_table(const Neighborhood& nbhd, const UtilityTable& table) {
  if (table.n_parks != nbhd.parks.size() || table.n_points != nbhd.demand_points.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "utility table does not match neighborhood " + nbhd.id);
  }
}

double rank_one_floor(const Neighborhood& nbhd, const CostParams& cost) {
  double floor = 0.0;
  for (const auto& park : nbhd.parks) {
    if (park.is_existing()) floor += design_cost(park, 1, cost);
  }
  return floor;
}

}  // namespace

PlanModel build_milp(const Neighborhood& nbhd, double budget, const UtilityTable& table,
                     const CostParams& cost, const BuildOptions& opts) {
  check_table(nbhd, table);
  if (!within_budget(rank_one_floor(nbhd, cost), budget)) {
    throw Error(ErrorCode::kInfeasible,
                "budget is below the maintenance floor of neighborhood " + nbhd.id, nbhd.id);
  }
  PlanModel m;
  m.budget = budget;
  LinearProgram& lp = m.program.lp;
  const std::size_t pairs = table.n_pairs();
  const std::size_t opts_n = table.n_options;

  for (std::size_t k = 0; k < opts_n; ++k) {
    m.x.push_back(lp.add_variable(0.0, 1.0, 0.0));
    m.program.binaries.push_back(m.x.back());
  }
  m.big_m.resize(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    double total = table.u0[p];
    for (std::size_t k = 0; k < opts_n; ++k) total += table.u[p * opts_n + k];
    m.big_m[p] = 1.0 / table.u0[p];
    m.v.push_back(lp.add_variable(1.0 / total, m.big_m[p], 0.0));
  }
  m.z.assign(pairs * opts_n, -1);
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t k = 0; k < opts_n; ++k) {
      const double u = table.u[p * opts_n + k];
      if (u == 0.0 && !opts.keep_blocked_terms) continue;
      m.z[p * opts_n + k] = lp.add_variable(0.0, m.big_m[p], table.weight[p] * u);
    }
  }

  std::vector<Term> spend;
  for (std::size_t k = 0; k < opts_n; ++k) {
    const ParkLocation& park = nbhd.parks[table.option_park[k]];
    spend.push_back({m.x[k], design_cost(park, table.option_rank[k], cost)});
  }
  lp.add_constraint(std::move(spend), Relation::kLessEqual, budget);

  for (std::size_t j = 0; j < table.n_parks; ++j) {
    std::vector<Term> row;
    const std::size_t first = table.park_first_option[j];
    for (std::size_t r = 0; r < nbhd.parks[j].designs.size(); ++r) row.push_back({m.x[first + r], 1.0});
    lp.add_constraint(std::move(row), nbhd.parks[j].is_existing() ? Relation::kEqual : Relation::kLessEqual,
                      1.0);
  }

  for (std::size_t p = 0; p < pairs; ++p) {
    std::vector<Term> link{{m.v[p], table.u0[p]}};
    for (std::size_t k = 0; k < opts_n; ++k) {
      const int z = m.z[p * opts_n + k];
      if (z >= 0) link.push_back({z, table.u[p * opts_n + k]});
    }
    lp.add_constraint(std::move(link), Relation::kEqual, 1.0);
  }

  for (std::size_t p = 0; p < pairs; ++p) {
    const double big = m.big_m[p];
    for (std::size_t k = 0; k < opts_n; ++k) {
      const int z = m.z[p * opts_n + k];
      if (z < 0) continue;
      lp.add_constraint({{z, 1.0}, {m.v[p], -1.0}}, Relation::kLessEqual, 0.0);
      lp.add_constraint({{z, 1.0}, {m.x[k], -big}}, Relation::kLessEqual, 0.0);
      lp.add_constraint({{z, 1.0}, {m.v[p], -1.0}, {m.x[k], -big}}, Relation::kGreaterEqual, -big);
    }
  }
  return m;
}

std::vector<double> implied_solution(const PlanModel& model, const UtilityTable& table,
                                     const DesignAssignment& ranks) {
  std::vector<double> values(model.program.lp.num_variables(), 0.0);
  std::vector<double> chosen(table.n_options, 0.0);
  for (std::size_t j = 0; j < table.n_parks; ++j) {
    if (ranks[j] > 0) chosen[table.option_index(j, ranks[j])] = 1.0;
  }
  for (std::size_t k = 0; k < table.n_options; ++k) values[model.x[k]] = chosen[k];
  for (std::size_t p = 0; p < table.n_pairs(); ++p) {
    double denom = table.u0[p];
    for (std::size_t k = 0; k < table.n_options; ++k) denom += table.u[p * table.n_options + k] * chosen[k];
    const double v = 1.0 / denom;
    values[model.v[p]] = v;
    for (std::size_t k = 0; k < table.n_options; ++k) {
      const int z = model.z[p * table.n_options + k];
      if (z >= 0) values[z] = chosen[k] * v;
    }
  }
  return values;
}

void check_assignment(const Neighborhood& nbhd, const DesignAssignment& ranks) {
  if (ranks.size() != nbhd.parks.size()) {
    throw Error(ErrorCode::kInvalidInput, "malformed assignment: expected one rank per park location",
                nbhd.id);
  }
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    const ParkLocation& park = nbhd.parks[j];
    const int max_rank = static_cast<int>(park.designs.size());
    const int min_rank = park.is_existing() ? 1 : 0;
    if (ranks[j] < min_rank || ranks[j] > max_rank) {
      throw Error(ErrorCode::kInvalidInput,
                  "malformed assignment: rank " + std::to_string(ranks[j]) + " for " + park.id,
                  park.id);
    }
  }
}

double assignment_spend(const Neighborhood& nbhd, const DesignAssignment& ranks,
                        const CostParams& cost) {
  double spend = 0.0;
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    if (ranks[j] > 0) spend += design_cost(nbhd.parks[j], ranks[j], cost);
  }
  return spend;
}

PlanSolution evaluate_plan(const Neighborhood& nbhd, const DesignAssignment& ranks,
                           const UtilityTable& table, const CostParams& cost, double budget) {
  check_table(nbhd, table);
  check_assignment(nbhd, ranks);
  PlanSolution s;
  s.neighborhood_id = nbhd.id;
  for (const auto& park : nbhd.parks) s.park_ids.push_back(park.id);
  s.ranks = ranks;
  s.budget = budget;
  s.spend = assignment_spend(nbhd, ranks, cost);
  s.n_points = table.n_points;
  s.n_segments = table.n_segments;
  const std::size_t pairs = table.n_pairs();
  const std::size_t parks = table.n_parks;
  s.p0.assign(pairs, 0.0);
  s.p.assign(pairs * parks, 0.0);
  std::vector<double> u(parks);
  for (std::size_t pr = 0; pr < pairs; ++pr) {
    double denom = table.u0[pr];
    for (std::size_t j = 0; j < parks; ++j) {
      u[j] = ranks[j] > 0 ? table.utility_at(pr / table.n_segments, pr % table.n_segments,
                                             table.option_index(j, ranks[j]))
                          : 0.0;
      denom += u[j];
    }
    s.p0[pr] = table.u0[pr] / denom;
    double visit = 0.0;
    for (std::size_t j = 0; j < parks; ++j) {
      s.p[pr * parks + j] = u[j] / denom;
      visit += s.p[pr * parks + j];
    }
    s.objective += table.weight[pr] * visit;
  }
  return s;
}

PlanSolution solve_neighborhood(const Neighborhood& nbhd, double budget,
                                const UtilityTable& table, const CostParams& cost,
                                const SolveOptions& opts) {
  const PlanModel model = build_milp(nbhd, budget, table, cost, opts.build);
  const MipSolution mip = bb_solve(model.program, opts.bb);
  if (!mip.has_incumbent) {
    if (mip.status == MipStatus::kInfeasible) {
      throw Error(ErrorCode::kInfeasible, "no feasible design plan for neighborhood " + nbhd.id,
                  nbhd.id);
    }
    throw Error(ErrorCode::kSolverFailure,
                std::string("solver stopped without a plan: ") + mip_status_name(mip.status),
                nbhd.id);
  }
  DesignAssignment ranks(table.n_parks, 0);
  for (std::size_t k = 0; k < table.n_options; ++k) {
    if (mip.values[model.x[k]] > 0.5) ranks[table.option_park[k]] = table.option_rank[k];
  }
  PlanSolution s = evaluate_plan(nbhd, ranks, table, cost, budget);
  SolverInfo info;
  info.status = mip.status;
  info.gap = mip.gap;
  info.best_bound = mip.best_bound;
  info.milp_objective = mip.objective;
  info.nodes = mip.nodes;
  info.wall_seconds = mip.wall_seconds;
  s.solver = info;
  return s;
}

PlanSolution brute_force_optimum(const Neighborhood& nbhd, double budget,
                                 const UtilityTable& table, const CostParams& cost) {
  check_table(nbhd, table);
  std::vector<int> lo(nbhd.parks.size());
  std::vector<int> hi(nbhd.parks.size());
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < nbhd.parks.size(); ++j) {
    lo[j] = nbhd.parks[j].is_existing() ? 1 : 0;
    hi[j] = static_cast<int>(nbhd.parks[j].designs.size());
    count *= static_cast<std::uint64_t>(hi[j] - lo[j] + 1);
    if (count > kEnumerationLimit) {
      throw Error(ErrorCode::kInvalidInput, "instance too large for enumeration", nbhd.id);
    }
  }
  if (!within_budget(rank_one_floor(nbhd, cost), budget)) {
    throw Error(ErrorCode::kInfeasible,
                "budget is below the maintenance floor of neighborhood " + nbhd.id, nbhd.id);
  }
  DesignAssignment ranks = lo;
  std::optional<PlanSolution> best;
  while (true) {
    if (within_budget(assignment_spend(nbhd, ranks, cost), budget)) {
      PlanSolution s = evaluate_plan(nbhd, ranks, table, cost, budget);
      if (!best || s.objective > best->objective) best = std::move(s);
    }
    std::size_t j = 0;
    while (j < ranks.size() && ranks[j] == hi[j]) {
      ranks[j] = lo[j];
      ++j;
    }
    if (j == ranks.size()) break;
    ++ranks[j];
  }
  return *best;
}

}  // namespace ugsopt
