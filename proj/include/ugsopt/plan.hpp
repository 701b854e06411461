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

#ifndef UGSOPT_PLAN_HPP_
#define UGSOPT_PLAN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugsopt/instance.hpp"
#include "ugsopt/milp.hpp"
#include "ugsopt/sim.hpp"

namespace ugsopt {

// Chosen rank per park location, in neighborhood order; 0 leaves a
// candidate unbuilt.
using DesignAssignment = std::vector<int>;

struct BuildOptions {
  // Keep z variables for (i, s, j, r) entries with zero utility. They never
  // affect the objective or the linking rows.
  bool keep_blocked_terms = false;
};

struct PlanModel {
  MixedProgram program;
  double budget = 0.0;
  std::vector<int> x;      // per option k
  std::vector<int> v;      // per pair (i, s)
  std::vector<int> z;      // per (pair, option); -1 when pruned
  std::vector<double> big_m;  // per pair, 1 / u0
};

PlanModel build_milp(const Neighborhood& nbhd, double budget, const UtilityTable& table,
                     const CostParams& cost, const BuildOptions& opts = {});

// Values of x, v and z implied by an integral assignment.
std::vector<double> implied_solution(const PlanModel& model, const UtilityTable& table,
                                     const DesignAssignment& ranks);

struct SolverInfo {
  MipStatus status = MipStatus::kOptimal;
  double gap = 0.0;
  double best_bound = 0.0;
  double milp_objective = 0.0;
  std::int64_t nodes = 0;
  double wall_seconds = 0.0;

  bool operator==(const SolverInfo&) const = default;
};

struct PlanSolution {
  std::string neighborhood_id;
  std::vector<std::string> park_ids;
  DesignAssignment ranks;
  double budget = 0.0;
  double spend = 0.0;
  // Expected visiting share in [0, 1).
  double objective = 0.0;
  std::size_t n_points = 0;
  std::size_t n_segments = 0;
  // Per pair (i * S + s): no-choice probability, and the visit probability of
  // each park at its chosen rank ([pair * J + j], zero when unchosen).
  std::vector<double> p0;
  std::vector<double> p;
  std::optional<SolverInfo> solver;

  bool operator==(const PlanSolution&) const = default;
};

void check_assignment(const Neighborhood& nbhd, const DesignAssignment& ranks);

double assignment_spend(const Neighborhood& nbhd, const DesignAssignment& ranks,
                        const CostParams& cost);

PlanSolution evaluate_plan(const Neighborhood& nbhd, const DesignAssignment& ranks,
                           const UtilityTable& table, const CostParams& cost, double budget = kInf);

struct SolveOptions {
  BbOptions bb;
  BuildOptions build;
};

PlanSolution solve_neighborhood(const Neighborhood& nbhd, double budget,
                                const UtilityTable& table, const CostParams& cost,
                                const SolveOptions& opts = {});

inline constexpr std::uint64_t kEnumerationLimit = 1000000;

PlanSolution brute_force_optimum(const Neighborhood& nbhd, double budget,
                                 const UtilityTable& table, const CostParams& cost);

}  // namespace ugsopt

#endif  // UGSOPT_PLAN_HPP_
