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
#include <cstdint>
#include <string>
#include <vector>

#include "ugsopt/error.hpp"
#include "ugsopt/kernels.hpp"
#include "ugsopt/milp.hpp"

namespace ugsopt {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptimalityTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr int kDegenerateStallLimit = 50;

// How one original variable is expressed through non-negative tableau columns:
// x = offset + sign * y[col] - y[col2].
struct ColumnMap {
  int col = -1;
  double sign = 1.0;
  double offset = 0.0;
  int col2 = -1;
};

enum class ColStatus : std::uint8_t { kBasic, kAtLower, kAtUpper };

class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::span<const double> lower, std::span<const double> upper,
          const LpOptions& opts)
      : lp_(lp), lower_(lower), upper_in_(upper), opts_(opts) {
    build(lower, upper);
  }

  LpSolution solve() {
    LpSolution out;
    if (trivially_infeasible_) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    if (num_artificial_ > 0) {
      set_phase_one_costs();
      const LpStatus s = iterate(/*phase_one=*/true);
      out.iterations = iterations_;
      if (s != LpStatus::kOptimal) {
        out.status = s == LpStatus::kUnbounded ? LpStatus::kNumericalFailure : s;
        return out;
      }
      double infeasibility = 0.0;
      for (int c = first_artificial_; c < ncols_; ++c) {
        if (status_[c] == ColStatus::kBasic) infeasibility += value_[c];
      }
      if (infeasibility > opts_.feasibility_tol * rhs_scale_) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      drive_out_artificials();
    }
    set_phase_two_costs();
    const LpStatus s = iterate(/*phase_one=*/false);
    out.iterations = iterations_;
    if (s != LpStatus::kOptimal) {
      out.status = s;
      return out;
    }
    out.values = extract();
    out.max_violation = max_row_violation(lp_, out.values);
    for (int v = 0; v < lp_.num_variables(); ++v) {
      out.max_violation = std::max(out.max_violation,
                                   std::max(lower_[v] - out.values[v], out.values[v] - upper_in_[v]));
    }
    out.objective = objective_value(lp_, out.values);
    out.status = out.max_violation <= opts_.feasibility_tol ? LpStatus::kOptimal
                                                            : LpStatus::kNumericalFailure;
    return out;
  }

 private:
  double* row(int i) { return tab_.data() + static_cast<std::size_t>(i) * ncols_; }

  void build(std::span<const double> lower, std::span<const double> upper) {
    const int n = lp_.num_variables();
    maps_.resize(n);
    int ncol = 0;
    std::vector<double> col_upper;
    for (int v = 0; v < n; ++v) {
      const double lo = lower[v];
      const double hi = upper[v];
      ColumnMap& m = maps_[v];
      if (lo > hi) {
        trivially_infeasible_ = true;
      }
      if (std::isfinite(lo)) {
        m = {ncol++, 1.0, lo, -1};
        col_upper.push_back(std::isfinite(hi) ? std::max(0.0, hi - lo) : kInf);
      } else if (std::isfinite(hi)) {
        m = {ncol++, -1.0, hi, -1};
        col_upper.push_back(kInf);
      } else {
        m = {ncol, 1.0, 0.0, ncol + 1};
        ncol += 2;
        col_upper.push_back(kInf);
        col_upper.push_back(kInf);
      }
    }
    num_structural_ = ncol;

    // Rows in tableau-column space, equilibrated by their largest coefficient.
    struct Row {
      std::vector<std::pair<int, double>> entries;
      Relation rel;
      double rhs;
    };
    std::vector<Row> rows;
    rows.reserve(lp_.constraints.size());
    std::vector<double> dense(static_cast<std::size_t>(ncol), 0.0);
    std::vector<int> touched;
    for (const Constraint& con : lp_.constraints) {
      double rhs = con.rhs;
      touched.clear();
      auto add = [&](int c, double a) {
        if (dense[c] == 0.0) touched.push_back(c);
        dense[c] += a;
        if (dense[c] == 0.0) dense[c] = 1e-300;  // keep the slot marked
      };
      for (const Term& t : con.terms) {
        const ColumnMap& m = maps_[t.var];
        rhs -= t.coef * m.offset;
        add(m.col, t.coef * m.sign);
        if (m.col2 >= 0) add(m.col2, -t.coef);
      }
      Row r{{}, con.relation, rhs};
      double scale = 0.0;
      for (int c : touched) {
        const double a = dense[c] == 1e-300 ? 0.0 : dense[c];
        dense[c] = 0.0;
        if (a != 0.0) {
          r.entries.emplace_back(c, a);
          scale = std::max(scale, std::abs(a));
        }
      }
      if (scale > 0.0) {
        for (auto& e : r.entries) e.second /= scale;
        r.rhs /= scale;
      }
      rows.push_back(std::move(r));
    }

    // Slack, then artificial columns where no slack can start basic.
    m_ = static_cast<int>(rows.size());
    std::vector<int> slack_col(m_, -1);
    std::vector<double> row_sign(m_, 1.0);
    std::vector<bool> needs_artificial(m_, false);
    int next = ncol;
    for (int i = 0; i < m_; ++i) {
      const Row& r = rows[i];
      if (r.rel != Relation::kEqual) slack_col[i] = next++;
      if (r.rel == Relation::kLessEqual && r.rhs >= 0.0) continue;
      if (r.rel == Relation::kGreaterEqual && r.rhs <= 0.0) {
        row_sign[i] = -1.0;
        continue;
      }
      needs_artificial[i] = true;
      if (r.rhs < 0.0) row_sign[i] = -1.0;
    }
    first_artificial_ = next;
    for (int i = 0; i < m_; ++i) {
      if (needs_artificial[i]) ++next;
    }
    ncols_ = next;
    num_artificial_ = ncols_ - first_artificial_;

    upper_.assign(ncols_, kInf);
    std::copy(col_upper.begin(), col_upper.end(), upper_.begin());
    excluded_.assign(ncols_, 0);
    value_.assign(ncols_, 0.0);
    status_.assign(ncols_, ColStatus::kAtLower);
    basis_.assign(m_, -1);
    tab_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);

    int art = first_artificial_;
    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) {
      const Row& r = rows[i];
      double* t = row(i);
      const double sg = row_sign[i];
      for (const auto& [c, a] : r.entries) t[c] = sg * a;
      if (slack_col[i] >= 0) {
        const double slack_coef = r.rel == Relation::kLessEqual ? 1.0 : -1.0;
        t[slack_col[i]] = sg * slack_coef;
      }
      const double b = sg * r.rhs;
      rhs_scale_ = std::max(rhs_scale_, std::abs(b));
      int basic = -1;
      if (needs_artificial[i]) {
        basic = art++;
        t[basic] = 1.0;
      } else {
        basic = slack_col[i];
      }
      basis_[i] = basic;
      status_[basic] = ColStatus::kBasic;
      value_[basic] = b;
    }
  }

  void set_phase_one_costs() {
    cost_.assign(ncols_, 0.0);
    for (int c = first_artificial_; c < ncols_; ++c) cost_[c] = -1.0;
    recompute_reduced_costs();
  }

  void set_phase_two_costs() {
    cost_.assign(ncols_, 0.0);
    for (int v = 0; v < lp_.num_variables(); ++v) {
      const ColumnMap& m = maps_[v];
      cost_[m.col] += lp_.objective[v] * m.sign;
      if (m.col2 >= 0) cost_[m.col2] -= lp_.objective[v];
    }
    for (int c = first_artificial_; c < ncols_; ++c) {
      excluded_[c] = 1;
      upper_[c] = 0.0;
    }
    recompute_reduced_costs();
  }

  void recompute_reduced_costs() {
    reduced_ = cost_;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb != 0.0) kernels::axpy({reduced_.data(), static_cast<std::size_t>(ncols_)}, -cb,
                                   {row(i), static_cast<std::size_t>(ncols_)});
    }
    for (int i = 0; i < m_; ++i) reduced_[basis_[i]] = 0.0;
  }

  int choose_entering(bool bland) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < ncols_; ++j) {
      if (status_[j] == ColStatus::kBasic || excluded_[j] || !(upper_[j] > 0.0)) continue;
      const double d = reduced_[j];
      double score = 0.0;
      if (status_[j] == ColStatus::kAtLower && d > kOptimalityTol) {
        score = d;
      } else if (status_[j] == ColStatus::kAtUpper && d < -kOptimalityTol) {
        score = -d;
      } else {
        continue;
      }
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  LpStatus iterate(bool phase_one) {
    const int limit = opts_.max_iterations > 0 ? opts_.max_iterations
                                               : std::max(20000, 20 * (m_ + ncols_));
    bool bland = opts_.bland_only;
    int stalled = 0;
    while (true) {
      if (iterations_ >= limit) return LpStatus::kIterationLimit;
      const int q = choose_entering(bland);
      if (q < 0) return LpStatus::kOptimal;
      ++iterations_;
      const double sigma = status_[q] == ColStatus::kAtLower ? 1.0 : -1.0;

      // Two-pass ratio test: the smallest step, then the most stable pivot
      // (or lowest basic index under Bland) among near-ties.
      double t_min = upper_[q];
      for (int i = 0; i < m_; ++i) {
        const double t = step_limit(i, sigma * row(i)[q]);
        if (t < t_min) t_min = t;
      }
      if (!std::isfinite(t_min)) {
        return phase_one ? LpStatus::kNumericalFailure : LpStatus::kUnbounded;
      }
      const double tie = t_min + 1e-12 * std::max(1.0, t_min);
      int leave = -1;
      double best_alpha = 0.0;
      if (!(upper_[q] <= tie)) {
        for (int i = 0; i < m_; ++i) {
          const double alpha = sigma * row(i)[q];
          const double t = step_limit(i, alpha);
          if (!(t <= tie)) continue;
          if (bland) {
            if (leave < 0 || basis_[i] < basis_[leave]) leave = i;
          } else if (std::abs(alpha) > best_alpha) {
            best_alpha = std::abs(alpha);
            leave = i;
          }
        }
      }

      const double step = leave < 0 ? upper_[q] : std::max(0.0, step_limit(leave, sigma * row(leave)[q]));
      if (step <= 1e-12) {
        if (++stalled > kDegenerateStallLimit) bland = true;
      } else {
        stalled = 0;
        bland = opts_.bland_only;
      }

      if (step != 0.0) {
        for (int i = 0; i < m_; ++i) {
          const double a = row(i)[q];
          if (a == 0.0) continue;
          double& xb = value_[basis_[i]];
          xb -= sigma * step * a;
          if (xb < 0.0 && xb > -1e-11) xb = 0.0;
        }
      }

      if (leave < 0) {
        status_[q] = sigma > 0 ? ColStatus::kAtUpper : ColStatus::kAtLower;
        value_[q] = sigma > 0 ? upper_[q] : 0.0;
        continue;
      }

      const int out = basis_[leave];
      const double alpha = sigma * row(leave)[q];
      if (alpha > 0.0) {
        status_[out] = ColStatus::kAtLower;
        value_[out] = 0.0;
      } else {
        status_[out] = ColStatus::kAtUpper;
        value_[out] = upper_[out];
      }
      value_[q] = (sigma > 0 ? 0.0 : upper_[q]) + sigma * step;
      status_[q] = ColStatus::kBasic;
      pivot(leave, q);
    }
  }

  // How far the entering variable may move before basic row i hits a bound,
  // given the signed column entry alpha (positive: the basic value decreases).
  double step_limit(int i, double alpha) const {
    const int b = basis_[i];
    if (alpha > kPivotTol) return std::max(0.0, value_[b]) / alpha;
    if (alpha < -kPivotTol && std::isfinite(upper_[b])) {
      return std::max(0.0, upper_[b] - value_[b]) / -alpha;
    }
    return kInf;
  }

  void pivot(int r, int q) {
    const std::size_t n = static_cast<std::size_t>(ncols_);
    double* pr = row(r);
    kernels::scale({pr, n}, 1.0 / pr[q]);
    pr[q] = 1.0;

    nz_.clear();
    for (int j = 0; j < ncols_; ++j) {
      if (pr[j] != 0.0) nz_.push_back(j);
    }
    const bool sparse = nz_.size() * 4 < n;
    auto eliminate = [&](double* target) {
      const double f = target[q];
      if (f == 0.0) return;
      if (sparse) {
        for (int j : nz_) {
          const double v = target[j] - f * pr[j];
          target[j] = std::abs(v) < kDropTol ? 0.0 : v;
        }
      } else {
        kernels::axpy({target, n}, -f, {pr, n});
      }
      target[q] = 0.0;
    };
    for (int i = 0; i < m_; ++i) {
      if (i != r) eliminate(row(i));
    }
    eliminate(reduced_.data());
    basis_[r] = q;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      const double* t = row(i);
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < first_artificial_; ++j) {
        if (status_[j] == ColStatus::kBasic) continue;
        if (std::abs(t[j]) > best_abs) {
          best_abs = std::abs(t[j]);
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; the artificial stays basic at zero
      const int out = basis_[i];
      status_[out] = ColStatus::kAtLower;
      value_[out] = 0.0;
      status_[best] = ColStatus::kBasic;
      pivot(i, best);
    }
  }

  std::vector<double> extract() const {
    std::vector<double> y(ncols_, 0.0);
    for (int j = 0; j < ncols_; ++j) {
      if (status_[j] == ColStatus::kBasic) {
        y[j] = value_[j];
      } else if (status_[j] == ColStatus::kAtUpper) {
        y[j] = upper_[j];
      }
    }
    std::vector<double> x(lp_.num_variables());
    for (int v = 0; v < lp_.num_variables(); ++v) {
      const ColumnMap& m = maps_[v];
      double val = m.offset + m.sign * y[m.col];
      if (m.col2 >= 0) val -= y[m.col2];
      x[v] = val;
    }
    return x;
  }

  const LinearProgram& lp_;
  std::span<const double> lower_;
  std::span<const double> upper_in_;
  LpOptions opts_;
  std::vector<ColumnMap> maps_;
  int num_structural_ = 0;
  int m_ = 0;
  int ncols_ = 0;
  int first_artificial_ = 0;
  int num_artificial_ = 0;
  bool trivially_infeasible_ = false;
  double rhs_scale_ = 1.0;
  int iterations_ = 0;

  // Dense rows live in a per-thread buffer; branch-and-bound solves many LPs
  // of the same shape back to back.
  std::vector<double>& tab_ = scratch();

  static std::vector<double>& scratch() {
    thread_local std::vector<double> buffer;
    return buffer;
  }
  std::vector<double> upper_;
  std::vector<std::uint8_t> excluded_;
  std::vector<double> value_;
  std::vector<ColStatus> status_;
  std::vector<int> basis_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<int> nz_;
};

}  // namespace

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNumericalFailure:
      return "numerical-failure";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

void check_well_formed(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.lower.size() != n || lp.upper.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "bound vectors do not match the variable count");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::isfinite(lp.objective[v])) {
      throw Error(ErrorCode::kInvalidInput, "non-finite objective coefficient",
                  "/objective/" + std::to_string(v));
    }
    if (std::isnan(lp.lower[v]) || std::isnan(lp.upper[v]) || lp.lower[v] == kInf ||
        lp.upper[v] == -kInf) {
      throw Error(ErrorCode::kInvalidInput, "invalid bound", "/bounds/" + std::to_string(v));
    }
  }
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Constraint& c = lp.constraints[i];
    if (!std::isfinite(c.rhs)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite rhs",
                  "/constraints/" + std::to_string(i));
    }
    for (const Term& t : c.terms) {
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= n || !std::isfinite(t.coef)) {
        throw Error(ErrorCode::kInvalidInput, "bad term",
                    "/constraints/" + std::to_string(i));
      }
    }
  }
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = max_row_violation(lp, x);
  for (int v = 0; v < lp.num_variables(); ++v) {
    worst = std::max(worst, lp.lower[v] - x[v]);
    worst = std::max(worst, x[v] - lp.upper[v]);
  }
  return worst;
}

double max_row_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (const Constraint& c : lp.constraints) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * x[t.var];
    const double scale = std::max(1.0, std::abs(c.rhs));
    double viol = 0.0;
    switch (c.relation) {
      case Relation::kLessEqual:
        viol = lhs - c.rhs;
        break;
      case Relation::kGreaterEqual:
        viol = c.rhs - lhs;
        break;
      case Relation::kEqual:
        viol = std::abs(lhs - c.rhs);
        break;
    }
    worst = std::max(worst, viol / scale);
  }
  return worst;
}

double objective_value(const LinearProgram& lp, std::span<const double> x) {
  return kernels::dot(lp.objective, x);
}

LpSolution lp_solve(const LinearProgram& lp, const LpOptions& opts) {
  return lp_solve(lp, lp.lower, lp.upper, opts);
}

LpSolution lp_solve(const LinearProgram& lp, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& opts) {
  check_well_formed(lp);
  if (lower.size() != lp.objective.size() || upper.size() != lp.objective.size()) {
    throw Error(ErrorCode::kInvalidInput, "bound overrides do not match the variable count");
  }
  Tableau tableau(lp, lower, upper, opts);
  return tableau.solve();
}

}  // namespace ugsopt
