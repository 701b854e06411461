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

#ifndef UGSOPT_BUDGET_HPP_
#define UGSOPT_BUDGET_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugsopt/instance.hpp"

namespace ugsopt {

// Admissible range for one named fairness factor.
struct FactorClamp {
  std::string name;
  double lo = 1.0;
  double hi = 1.0;

  bool operator==(const FactorClamp&) const = default;
};

// density within +-10 %, deprivation (social, material) and smoke within +-5 %.
std::vector<FactorClamp> default_factor_clamps();

// rho_n as the product of the factors. Throws Error(kInvalidInput) naming the
// factor when it is non-positive, unknown, or outside its clamp.
double compose_weights(std::span<const RhoFactor> factors,
                       std::span<const FactorClamp> clamps);

// max(per_capita * horizon_years * population, maintenance_margin * min_budget)
double derive_baseline_budget(std::int64_t population, const CostParams& cost,
                              double min_budget);

enum class AllocationMode { kBaseline, kFair };
enum class BoundStatus { kAtLower, kAtUpper, kInterior };

const char* allocation_mode_name(AllocationMode mode);
AllocationMode parse_allocation_mode(const std::string& name);
const char* bound_status_name(BoundStatus status);

// The data the fair-weighted budget problem actually depends on.
struct BudgetProblem {
  std::vector<std::string> ids;
  std::vector<double> baseline;  // b-bar
  std::vector<double> minimum;   // b-underline
  std::vector<double> delta;     // per-neighborhood deviation threshold
  std::vector<double> rho;
  double total = 0.0;            // B_T

  std::size_t size() const { return ids.size(); }
  double lower(std::size_t n) const;
  double upper(std::size_t n) const;
};

struct AllocationOptions {
  // Replaces every neighborhood's delta when set.
  std::optional<double> delta;
  std::vector<FactorClamp> clamps = default_factor_clamps();
};

BudgetProblem make_budget_problem(const Instance& inst, const AllocationOptions& opts = {});

struct AllocationEntry {
  std::string id;
  double budget = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double rho = 1.0;
  BoundStatus binding = BoundStatus::kInterior;

  bool operator==(const AllocationEntry&) const = default;
};

struct Allocation {
  AllocationMode mode = AllocationMode::kFair;
  std::vector<AllocationEntry> entries;
  double objective = 0.0;  // sum of b_n * rho_n

  double budget_of(const std::string& id) const;
  bool operator==(const Allocation&) const = default;
};

// Greedy optimum: start every budget at its lower bound, then hand out the
// residual in strictly descending rho (ties by ascending id), filling each
// neighborhood to its upper bound. Throws Error(kInfeasible) when some
// lower bound exceeds its upper bound or the lower bounds exceed B_T.
Allocation allocate_fair(const BudgetProblem& problem);
Allocation allocate_fair(const Instance& inst, const AllocationOptions& opts = {});

// The same problem stated as a linear program and handed to lp_solve.
Allocation allocate_lp_oracle(const BudgetProblem& problem);
Allocation allocate_lp_oracle(const Instance& inst, const AllocationOptions& opts = {});

// b = b-bar.
Allocation allocate_baseline(const BudgetProblem& problem);
Allocation allocate_baseline(const Instance& inst, const AllocationOptions& opts = {});

Allocation allocate(const Instance& inst, AllocationMode mode, const AllocationOptions& opts = {});

}  // namespace ugsopt

#endif  // UGSOPT_BUDGET_HPP_
