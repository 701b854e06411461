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

#ifndef UGSOPT_MILP_HPP_
#define UGSOPT_MILP_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

// Exact optimization engine: a dense bounded-variable primal simplex for
// linear programs and best-bound branch-and-bound for programs mixing
// continuous and binary variables. Everything maximizes.

namespace ugsopt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Constraint> constraints;

  int add_variable(double lo, double hi, double obj) {
    objective.push_back(obj);
    lower.push_back(lo);
    upper.push_back(hi);
    return static_cast<int>(objective.size()) - 1;
  }
  void add_constraint(std::vector<Term> terms, Relation relation, double rhs) {
    constraints.push_back({std::move(terms), relation, rhs});
  }
  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
};

// Throws Error(kInvalidInput) on mismatched sizes, out-of-range indices,
// non-finite coefficients or lower > upper.
void check_well_formed(const LinearProgram& lp);

// Largest violation of any row or bound at `x`; rows are measured relative to
// max(1, |rhs|).
double max_violation(const LinearProgram& lp, std::span<const double> x);
double max_row_violation(const LinearProgram& lp, std::span<const double> x);
double objective_value(const LinearProgram& lp, std::span<const double> x);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure, kIterationLimit };

const char* lp_status_name(LpStatus status);

struct LpOptions {
  int max_iterations = 0;  // 0 picks a limit from the problem size
  double feasibility_tol = 1e-7;
  // Use Bland's rule throughout instead of only on degenerate stalls.
  bool bland_only = false;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;  // empty unless optimal
  double objective = 0.0;
  int iterations = 0;
  double max_violation = 0.0;
};

LpSolution lp_solve(const LinearProgram& lp, const LpOptions& opts = {});

// Same program with the variable bounds replaced.
LpSolution lp_solve(const LinearProgram& lp, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& opts = {});

struct MixedProgram {
  LinearProgram lp;
  // Indices of the variables restricted to {0, 1}; their bounds must be [0, 1].
  std::vector<int> binaries;
};

enum class MipStatus {
  kOptimal,
  kFeasibleGap,  // node limit reached with an incumbent
  kInfeasible,
  kUnbounded,
  kTimeLimit,
  kNodeLimit,  // node limit reached without an incumbent
  kNumericalFailure,
};

const char* mip_status_name(MipStatus status);
MipStatus parse_mip_status(const std::string& name);

struct BbOptions {
  double gap_tol = 1e-6;
  double time_limit_s = kInf;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  double integrality_tol = 1e-6;
  bool keep_trace = false;
};

struct BbTracePoint {
  std::int64_t nodes = 0;
  double incumbent = -kInf;
  double bound = kInf;
};

struct MipSolution {
  MipStatus status = MipStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> values;
  double objective = -kInf;
  double best_bound = kInf;
  double gap = kInf;
  std::int64_t nodes = 0;
  double wall_seconds = 0.0;
  std::vector<BbTracePoint> trace;
};

double relative_gap(double bound, double objective);

// Best-bound search with depth-first dives, branching on the most fractional
// binary (ties: lowest index). The root relaxation is rounded and greedily
// repaired to seed the incumbent.
MipSolution bb_solve(const MixedProgram& mp, const BbOptions& opts = {});

}  // namespace ugsopt

#endif  // UGSOPT_MILP_HPP_
