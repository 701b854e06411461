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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "ugsopt/error.hpp"
#include "ugsopt/milp.hpp"

namespace ugsopt {

namespace {

using Clock = std::chrono::steady_clock;

// -1 free, otherwise the fixed value of each binary (indexed like mp.binaries).
using Fixing = std::vector<std::int8_t>;

struct Node {
  Fixing fixing;
  double bound = kInf;
  std::vector<double> values;
  std::int64_t id = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

enum class NodeOutcome { kPruned, kIntegral, kFractional, kFailed };

class BranchAndBound {
 public:
  BranchAndBound(const MixedProgram& mp, const BbOptions& opts)
      : mp_(mp), opts_(opts), start_(Clock::now()) {}

  MipSolution run() {
    check_well_formed(mp_.lp);
    for (int b : mp_.binaries) {
      if (b < 0 || b >= mp_.lp.num_variables() || mp_.lp.lower[b] != 0.0 ||
          mp_.lp.upper[b] != 1.0) {
        throw Error(ErrorCode::kInvalidInput, "binary variables must have bounds [0, 1]");
      }
    }

    Node root;
    root.fixing.assign(mp_.binaries.size(), -1);
    root.id = next_id_++;
    const LpSolution rlp = solve_relaxation(root.fixing);
    ++sol_.nodes;
    if (rlp.status == LpStatus::kInfeasible) return finish(MipStatus::kInfeasible);
    if (rlp.status == LpStatus::kUnbounded) return finish(MipStatus::kUnbounded);
    if (rlp.status != LpStatus::kOptimal) return finish(MipStatus::kNumericalFailure);
    root.bound = rlp.objective;
    root.values = rlp.values;
    reported_bound_ = root.bound;

    if (branch_index(root) < 0) {
      polish(root.fixing, root.values);
      return finish_search(false);
    }
    seed_incumbent(root);
    open_.push(std::move(root));

    while (!open_.empty()) {
      if (limit_hit()) return finish_search(true);
      Node node = open_.top();
      open_.pop();
      if (!improves(node.bound)) continue;
      dive(std::move(node));
      update_bound();
      if (sol_.has_incumbent && relative_gap(reported_bound_, sol_.objective) <= opts_.gap_tol) {
        break;
      }
    }
    return finish_search(limit_hit());
  }

 private:
  LpSolution solve_relaxation(const Fixing& fixing) {
    lower_ = mp_.lp.lower;
    upper_ = mp_.lp.upper;
    for (std::size_t k = 0; k < fixing.size(); ++k) {
      if (fixing[k] >= 0) {
        lower_[mp_.binaries[k]] = fixing[k];
        upper_[mp_.binaries[k]] = fixing[k];
      }
    }
    LpSolution s = lp_solve(mp_.lp, lower_, upper_);
    if (s.status == LpStatus::kNumericalFailure || s.status == LpStatus::kIterationLimit) {
      LpOptions bland;
      bland.bland_only = true;
      s = lp_solve(mp_.lp, lower_, upper_, bland);
    }
    return s;
  }

  bool improves(double bound) const {
    if (!sol_.has_incumbent) return true;
    return bound - sol_.objective > opts_.gap_tol * std::max(1e-10, std::abs(sol_.objective));
  }

  // Most fractional free binary, or -1 when the relaxation is integral.
  int branch_index(const Node& node) const {
    int best = -1;
    double best_frac = opts_.integrality_tol;
    for (std::size_t k = 0; k < mp_.binaries.size(); ++k) {
      if (node.fixing[k] >= 0) continue;
      const double v = node.values[mp_.binaries[k]];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac + 1e-15) {
        best_frac = frac;
        best = static_cast<int>(k);
      }
    }
    return best;
  }

  // Re-solves with every binary fixed at its rounded value so the incumbent
  // is exactly integral and row-feasible.
  bool polish(const Fixing& base, const std::vector<double>& values) {
    Fixing f = base;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] < 0) f[k] = values[mp_.binaries[k]] >= 0.5 ? 1 : 0;
    }
    const LpSolution s = solve_relaxation(f);
    if (s.status != LpStatus::kOptimal) return false;
    offer(s);
    return true;
  }

  void offer(const LpSolution& s) {
    if (sol_.has_incumbent && s.objective <= sol_.objective) return;
    sol_.has_incumbent = true;
    sol_.objective = s.objective;
    sol_.values = s.values;
    for (int b : mp_.binaries) sol_.values[b] = std::round(sol_.values[b]);
    record();
  }

  void seed_incumbent(const Node& root) {
    Fixing rounded(mp_.binaries.size());
    for (std::size_t k = 0; k < rounded.size(); ++k) {
      rounded[k] = root.values[mp_.binaries[k]] >= 0.5 ? 1 : 0;
    }
    LpSolution s = solve_relaxation(rounded);
    if (s.status == LpStatus::kOptimal) {
      offer(s);
      return;
    }
    // Greedy repair: flip the most fractional roundings first, one at a time.
    std::vector<std::size_t> order(rounded.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    auto frac = [&](std::size_t k) { return std::abs(root.values[mp_.binaries[k]] - 0.5); };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac(a) < frac(b); });
    const std::size_t attempts = std::min<std::size_t>(order.size(), 32);
    for (std::size_t a = 0; a < attempts && !limit_hit(); ++a) {
      Fixing trial = rounded;
      trial[order[a]] = static_cast<std::int8_t>(1 - trial[order[a]]);
      s = solve_relaxation(trial);
      if (s.status == LpStatus::kOptimal) {
        offer(s);
        return;
      }
    }
  }

  NodeOutcome evaluate(Node& child) {
    const LpSolution s = solve_relaxation(child.fixing);
    ++sol_.nodes;
    if (s.status == LpStatus::kInfeasible) return NodeOutcome::kPruned;
    if (s.status != LpStatus::kOptimal) return NodeOutcome::kFailed;
    child.bound = std::min(child.bound, s.objective);
    child.values = s.values;
    if (!improves(child.bound)) return NodeOutcome::kPruned;
    if (branch_index(child) < 0) {
      polish(child.fixing, child.values);
      return NodeOutcome::kIntegral;
    }
    return NodeOutcome::kFractional;
  }

  void dive(Node node) {
    while (true) {
      diving_bound_ = node.bound;
      const int k = branch_index(node);
      const bool up_first = node.values[mp_.binaries[k]] >= 0.5;
      Node down{node.fixing, node.bound, {}, next_id_++};
      Node up{node.fixing, node.bound, {}, next_id_++};
      down.fixing[k] = 0;
      up.fixing[k] = 1;
      node.values.clear();

      std::vector<Node> live;
      for (Node* child : up_first ? std::vector<Node*>{&up, &down} : std::vector<Node*>{&down, &up}) {
        switch (evaluate(*child)) {
          case NodeOutcome::kFractional:
            live.push_back(std::move(*child));
            break;
          case NodeOutcome::kFailed:
            lost_bound_ = std::max(lost_bound_, child->bound);
            break;
          default:
            break;
        }
      }
      diving_bound_ = -kInf;
      if (live.empty()) return;
      for (std::size_t c = 1; c < live.size(); ++c) open_.push(std::move(live[c]));
      node = std::move(live.front());
      if (!improves(node.bound)) return;
      if (limit_hit()) {
        open_.push(std::move(node));
        return;
      }
      update_bound(node.bound);
    }
  }

  void update_bound(double extra = -kInf) {
    double bound = std::max({extra, lost_bound_, diving_bound_});
    if (!open_.empty()) bound = std::max(bound, open_.top().bound);
    if (sol_.has_incumbent) bound = std::max(bound, sol_.objective);
    if (bound < reported_bound_) {
      reported_bound_ = bound;
      record();
    }
  }

  void record() {
    if (!opts_.keep_trace) return;
    sol_.trace.push_back({sol_.nodes, sol_.has_incumbent ? sol_.objective : -kInf,
                          reported_bound_});
  }

  bool limit_hit() const {
    if (sol_.nodes >= opts_.node_limit) return true;
    return elapsed() >= opts_.time_limit_s;
  }

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  MipSolution finish_search(bool stopped_early) {
    update_bound();
    if (!stopped_early && open_.empty() && lost_bound_ == -kInf && sol_.has_incumbent) {
      reported_bound_ = std::min(reported_bound_, sol_.objective);
      record();
    }
    if (!sol_.has_incumbent) {
      if (!stopped_early && open_.empty() && lost_bound_ == -kInf) {
        return finish(MipStatus::kInfeasible);
      }
      if (lost_bound_ > -kInf && !stopped_early) return finish(MipStatus::kNumericalFailure);
      return finish(elapsed() >= opts_.time_limit_s ? MipStatus::kTimeLimit : MipStatus::kNodeLimit);
    }
    sol_.best_bound = reported_bound_;
    sol_.gap = relative_gap(sol_.best_bound, sol_.objective);
    if (sol_.gap <= opts_.gap_tol) return finish(MipStatus::kOptimal);
    if (elapsed() >= opts_.time_limit_s) return finish(MipStatus::kTimeLimit);
    return finish(MipStatus::kFeasibleGap);
  }

  MipSolution finish(MipStatus status) {
    sol_.status = status;
    sol_.best_bound = reported_bound_;
    if (sol_.has_incumbent) sol_.gap = relative_gap(sol_.best_bound, sol_.objective);
    sol_.wall_seconds = elapsed();
    return std::move(sol_);
  }

  const MixedProgram& mp_;
  BbOptions opts_;
  Clock::time_point start_;
  MipSolution sol_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::int64_t next_id_ = 0;
  double reported_bound_ = kInf;
  double lost_bound_ = -kInf;
  double diving_bound_ = -kInf;
};

}  // namespace

double relative_gap(double bound, double objective) {
  return std::abs(bound - objective) / std::max(1e-10, std::abs(objective));
}

const char* mip_status_name(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kFeasibleGap:
      return "feasible-gap";
    case MipStatus::kInfeasible:
      return "infeasible";
    case MipStatus::kUnbounded:
      return "unbounded";
    case MipStatus::kTimeLimit:
      return "time-limit";
    case MipStatus::kNodeLimit:
      return "node-limit";
    case MipStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

MipStatus parse_mip_status(const std::string& name) {
  for (MipStatus s : {MipStatus::kOptimal, MipStatus::kFeasibleGap, MipStatus::kInfeasible,
                      MipStatus::kUnbounded, MipStatus::kTimeLimit, MipStatus::kNodeLimit,
                      MipStatus::kNumericalFailure}) {
    if (name == mip_status_name(s)) return s;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown solver status \"" + name + "\"");
}

MipSolution bb_solve(const MixedProgram& mp, const BbOptions& opts) {
  return BranchAndBound(mp, opts).run();
}

}  // namespace ugsopt
