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

#include "ugsopt/budget.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ugsopt/error.hpp"
#include "ugsopt/milp.hpp"

namespace ugsopt {

namespace {

constexpr double kBoundTol = 1e-6;

const FactorClamp* find_clamp(std::span<const FactorClamp> clamps, const std::string& name) {
  for (const FactorClamp& c : clamps) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void check_feasible(const BudgetProblem& p) {
  double sum_lower = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p.delta[n] < 0.0 || p.delta[n] > 1.0) {
      throw Error(ErrorCode::kInvalidInput, "delta must lie in [0, 1]", p.ids[n]);
    }
    if (!(p.rho[n] > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "rho must be > 0", p.ids[n]);
    }
    if (p.lower(n) > p.upper(n) + kBoundTol) {
      throw Error(ErrorCode::kInfeasible,
                  "maintenance floor exceeds the upper deviation bound (1 + delta) * baseline",
                  p.ids[n]);
    }
    sum_lower += p.lower(n);
  }
  if (sum_lower > p.total + kBoundTol * std::max(1.0, std::abs(p.total))) {
    throw Error(ErrorCode::kInfeasible,
                "sum of lower bounds max(min_budget, (1 - delta) * baseline) exceeds B_T");
  }
}

Allocation finish(const BudgetProblem& p, AllocationMode mode, std::vector<double> budgets) {
  Allocation a;
  a.mode = mode;
  for (std::size_t n = 0; n < p.size(); ++n) {
    AllocationEntry e;
    e.id = p.ids[n];
    e.budget = budgets[n];
    e.lower = p.lower(n);
    e.upper = p.upper(n);
    e.rho = p.rho[n];
    const double tol = kBoundTol * std::max(1.0, std::abs(e.upper));
    if (std::abs(e.budget - e.lower) <= tol) {
      e.binding = BoundStatus::kAtLower;
    } else if (std::abs(e.budget - e.upper) <= tol) {
      e.binding = BoundStatus::kAtUpper;
    } else {
      e.binding = BoundStatus::kInterior;
    }
    a.objective += e.budget * e.rho;
    a.entries.push_back(std::move(e));
  }
  return a;
}

}  // namespace

std::vector<FactorClamp> default_factor_clamps() {
  return {{"density", 0.90, 1.10}, {"social", 0.95, 1.05}, {"material", 0.95, 1.05},
          {"smoke", 0.95, 1.05}};
}

double compose_weights(std::span<const RhoFactor> factors, std::span<const FactorClamp> clamps) {
  double rho = 1.0;
  for (const RhoFactor& f : factors) {
    if (!(f.value > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "factor " + f.name + " must be > 0", f.name);
    }
    const FactorClamp* c = find_clamp(clamps, f.name);
    if (c == nullptr) {
      throw Error(ErrorCode::kInvalidInput, "unknown factor " + f.name, f.name);
    }
    if (f.value < c->lo - 1e-12 || f.value > c->hi + 1e-12) {
      throw Error(ErrorCode::kInvalidInput, "factor " + f.name + " outside its clamp range", f.name);
    }
    rho *= f.value;
  }
  return rho;
}

double derive_baseline_budget(std::int64_t population, const CostParams& cost,
                              double min_budget) {
  if (population <= 0) {
    throw Error(ErrorCode::kInvalidInput, "population must be > 0");
  }
  const double per_capita =
      cost.per_capita * cost.horizon_years * static_cast<double>(population);
  return std::max(per_capita, cost.maintenance_margin * min_budget);
}

const char* allocation_mode_name(AllocationMode mode) {
  return mode == AllocationMode::kBaseline ? "baseline" : "fair";
}

AllocationMode parse_allocation_mode(const std::string& name) {
  if (name == "baseline") return AllocationMode::kBaseline;
  if (name == "fair") return AllocationMode::kFair;
  throw Error(ErrorCode::kInvalidInput, "allocation mode must be baseline or fair", "mode");
}

const char* bound_status_name(BoundStatus status) {
  switch (status) {
    case BoundStatus::kAtLower:
      return "at-lower";
    case BoundStatus::kAtUpper:
      return "at-upper";
    case BoundStatus::kInterior:
      return "interior";
  }
  return "interior";
}

double BudgetProblem::lower(std::size_t n) const {
  return std::max(minimum[n], (1.0 - delta[n]) * baseline[n]);
}

double BudgetProblem::upper(std::size_t n) const { return (1.0 + delta[n]) * baseline[n]; }

BudgetProblem make_budget_problem(const Instance& inst, const AllocationOptions& opts) {
  BudgetProblem p;
  p.total = inst.total_budget;
  for (std::size_t n = 0; n < inst.neighborhoods.size(); ++n) {
    const Neighborhood& nb = inst.neighborhoods[n];
    p.ids.push_back(nb.id);
    p.baseline.push_back(nb.baseline_budget);
    p.minimum.push_back(nb.min_budget);
    p.delta.push_back(opts.delta ? *opts.delta : nb.delta.value_or(inst.delta));
    try {
      p.rho.push_back(compose_weights(nb.rho_factors, opts.clamps));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(),
                  "/neighborhoods/" + std::to_string(n) + "/rho_factors/" + e.path());
    }
  }
  return p;
}

double Allocation::budget_of(const std::string& id) const {
  for (const AllocationEntry& e : entries) {
    if (e.id == id) return e.budget;
  }
  throw Error(ErrorCode::kNotFound, "no allocation for neighborhood " + id, id);
}

Allocation allocate_fair(const BudgetProblem& p) {
  check_feasible(p);
  std::vector<double> b(p.size());
  double residual = p.total;
  for (std::size_t n = 0; n < p.size(); ++n) {
    b[n] = p.lower(n);
    residual -= b[n];
  }
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    if (p.rho[a] != p.rho[c]) return p.rho[a] > p.rho[c];
    return p.ids[a] < p.ids[c];
  });
  for (std::size_t n : order) {
    if (residual <= 0.0) break;
    const double add = std::min(residual, std::max(0.0, p.upper(n) - b[n]));
    b[n] += add;
    residual -= add;
  }
  return finish(p, AllocationMode::kFair, std::move(b));
}

Allocation allocate_lp_oracle(const BudgetProblem& p) {
  check_feasible(p);
  LinearProgram lp;
  std::vector<Term> total;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const int var = lp.add_variable(0.0, kInf, p.rho[n]);
    total.push_back({var, 1.0});
    lp.add_constraint({{var, 1.0}}, Relation::kGreaterEqual, p.minimum[n]);
    lp.add_constraint({{var, 1.0}}, Relation::kLessEqual, (1.0 + p.delta[n]) * p.baseline[n]);
    lp.add_constraint({{var, 1.0}}, Relation::kGreaterEqual, (1.0 - p.delta[n]) * p.baseline[n]);
  }
  lp.add_constraint(std::move(total), Relation::kLessEqual, p.total);
  const LpSolution s = lp_solve(lp);
  if (s.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasible, "budget linear program is infeasible");
  }
  if (s.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kSolverFailure,
                std::string("budget linear program failed: ") + lp_status_name(s.status));
  }
  return finish(p, AllocationMode::kFair, s.values);
}

Allocation allocate_baseline(const BudgetProblem& p) {
  return finish(p, AllocationMode::kBaseline, p.baseline);
}

Allocation allocate_fair(const Instance& inst, const AllocationOptions& opts) {
  return allocate_fair(make_budget_problem(inst, opts));
}

Allocation allocate_lp_oracle(const Instance& inst, const AllocationOptions& opts) {
  return allocate_lp_oracle(make_budget_problem(inst, opts));
}

Allocation allocate_baseline(const Instance& inst, const AllocationOptions& opts) {
  return allocate_baseline(make_budget_problem(inst, opts));
}

Allocation allocate(const Instance& inst, AllocationMode mode, const AllocationOptions& opts) {
  return mode == AllocationMode::kBaseline ? allocate_baseline(inst, opts)
                                           : allocate_fair(inst, opts);
}

}  // namespace ugsopt
