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

#include "ugsopt/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "ugsopt/error.hpp"
#include "ugsopt/kernels.hpp"
#include "ugsopt/rng.hpp"

namespace ugsopt {

namespace {

class Lloyd {
 public:
  Lloyd(std::span<const GeoPoint> points, int k)
      : n_(points.size()), k_(static_cast<std::size_t>(k)), xs_(n_), ys_(n_), best_(n_),
        scratch_(n_), assign_(n_, -1) {
    for (std::size_t i = 0; i < n_; ++i) {
      xs_[i] = points[i].lat;
      ys_[i] = points[i].lon;
    }
  }

  void seed_plus_plus(Rng& rng) {
    std::vector<bool> chosen(n_, false);
    std::size_t first = rng.index(n_);
    add_center(first, chosen);
    std::fill(best_.begin(), best_.end(), 0.0);
    kernels::sq_dist_2d(xs_, ys_, cx_[0], cy_[0], best_);
    while (cx_.size() < k_) {
      double total = 0.0;
      for (std::size_t i = 0; i < n_; ++i) total += chosen[i] ? 0.0 : best_[i];
      std::size_t pick = n_;
      if (total > 0.0) {
        const double target = rng.uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
          if (chosen[i] || best_[i] == 0.0) continue;
          acc += best_[i];
          pick = i;
          if (acc > target) break;
        }
      } else {
        for (std::size_t i = 0; i < n_ && pick == n_; ++i) {
          if (!chosen[i]) pick = i;
        }
      }
      add_center(pick, chosen);
      kernels::sq_dist_2d(xs_, ys_, cx_.back(), cy_.back(), scratch_);
      for (std::size_t i = 0; i < n_; ++i) best_[i] = std::min(best_[i], scratch_[i]);
    }
  }

  // Nearest-centroid assignment, lowest index on ties. Returns true when
  // nothing moved.
  bool assign() {
    std::fill(best_.begin(), best_.end(), kInf);
    std::vector<int> next(n_, 0);
    for (std::size_t c = 0; c < k_; ++c) {
      kernels::sq_dist_2d(xs_, ys_, cx_[c], cy_[c], scratch_);
      for (std::size_t i = 0; i < n_; ++i) {
        if (scratch_[i] < best_[i]) {
          best_[i] = scratch_[i];
          next[i] = static_cast<int>(c);
        }
      }
    }
    repair_empty(next);
    const bool same = next == assign_;
    assign_ = std::move(next);
    return same;
  }

  void update() {
    std::vector<double> sx(k_, 0.0);
    std::vector<double> sy(k_, 0.0);
    std::vector<std::size_t> count(k_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto c = static_cast<std::size_t>(assign_[i]);
      sx[c] += xs_[i];
      sy[c] += ys_[i];
      ++count[c];
    }
    for (std::size_t c = 0; c < k_; ++c) {
      cx_[c] = sx[c] / static_cast<double>(count[c]);
      cy_[c] = sy[c] / static_cast<double>(count[c]);
    }
  }

  double inertia() const {
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto c = static_cast<std::size_t>(assign_[i]);
      const double dx = xs_[i] - cx_[c];
      const double dy = ys_[i] - cy_[c];
      total += dx * dx + dy * dy;
    }
    return total;
  }

  const std::vector<int>& assignment() const { return assign_; }
  GeoPoint centroid(std::size_t c) const { return {cx_[c], cy_[c]}; }

 private:
  void add_center(std::size_t i, std::vector<bool>& chosen) {
    chosen[i] = true;
    cx_.push_back(xs_[i]);
    cy_.push_back(ys_[i]);
  }

  void repair_empty(std::vector<int>& next) {
    std::vector<std::size_t> count(k_, 0);
    for (int c : next) ++count[static_cast<std::size_t>(c)];
    for (std::size_t c = 0; c < k_; ++c) {
      if (count[c] > 0) continue;
      // Farthest point from its centroid among clusters that can spare one.
      std::size_t far = n_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (count[static_cast<std::size_t>(next[i])] < 2) continue;
        if (far == n_ || best_[i] > best_[far]) far = i;
      }
      --count[static_cast<std::size_t>(next[far])];
      next[far] = static_cast<int>(c);
      ++count[c];
      best_[far] = 0.0;
      cx_[c] = xs_[far];
      cy_[c] = ys_[far];
    }
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> cx_;
  std::vector<double> cy_;
  std::vector<double> best_;
  std::vector<double> scratch_;
  std::vector<int> assign_;
};

}  // namespace

Clustering kmeans(std::span<const GeoPoint> points, int k, std::uint64_t seed, int max_iter) {
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "cluster count k must lie in [1, " + std::to_string(points.size()) + "]", "k");
  }
  if (max_iter < 1) {
    throw Error(ErrorCode::kInvalidInput, "max_iter must be >= 1", "max_iter");
  }
  Rng rng(seed);
  Lloyd lloyd(points, k);
  lloyd.seed_plus_plus(rng);
  lloyd.assign();

  Clustering out;
  out.k = k;
  out.seed = seed;
  for (int it = 0; it < max_iter; ++it) {
    lloyd.update();
    out.inertia_history.push_back(lloyd.inertia());
    out.iterations = it + 1;
    if (lloyd.assign()) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) lloyd.update();
  out.assignment = lloyd.assignment();
  out.inertia = lloyd.inertia();
  for (int c = 0; c < k; ++c) out.centroids.push_back(lloyd.centroid(static_cast<std::size_t>(c)));
  return out;
}

Clustering cluster_neighborhood(const Neighborhood& nbhd, int k, std::uint64_t seed, int max_iter) {
  std::vector<GeoPoint> points;
  points.reserve(nbhd.demand_points.size());
  for (const auto& p : nbhd.demand_points) points.push_back({p.lat, p.lon});
  Clustering c = kmeans(points, k, seed, max_iter);
  for (const auto& p : nbhd.demand_points) c.point_ids.push_back(p.id);
  return c;
}

int default_cluster_count(std::size_t n_points) {
  const auto by_ratio = static_cast<std::size_t>((n_points + 11) / 12);
  return static_cast<int>(std::min(n_points, std::max<std::size_t>(25, by_ratio)));
}

Neighborhood aggregate_demand(const Neighborhood& nbhd, const Clustering& clustering) {
  const std::size_t n = nbhd.demand_points.size();
  if (clustering.assignment.size() != n || clustering.point_ids.size() != n) {
    throw Error(ErrorCode::kInvalidInput,
                "clustering does not cover the demand points of " + nbhd.id, nbhd.id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = clustering.assignment[i];
    if (clustering.point_ids[i] != nbhd.demand_points[i].id || c < 0 || c >= clustering.k) {
      throw Error(ErrorCode::kInvalidInput,
                  "clustering does not cover the demand points of " + nbhd.id, nbhd.id);
    }
  }
  const auto k = static_cast<std::size_t>(clustering.k);
  std::vector<DemandPoint> merged(k);
  std::vector<std::map<std::string, double>> zone_weight(k);
  std::vector<bool> used(k, false);
  for (std::size_t i = 0; i < n; ++i) {
    const DemandPoint& p = nbhd.demand_points[i];
    const auto c = static_cast<std::size_t>(clustering.assignment[i]);
    used[c] = true;
    double total = 0.0;
    for (const auto& [seg, w] : p.weights) {
      merged[c].weights[seg] += w;
      total += w;
    }
    zone_weight[c][p.zone] += total;
  }
  Neighborhood out = nbhd;
  out.demand_points.clear();
  for (std::size_t c = 0; c < k; ++c) {
    if (!used[c]) continue;
    DemandPoint& d = merged[c];
    char id[16];
    std::snprintf(id, sizeof id, "k%03zu", c + 1);
    d.id = nbhd.id + "-" + id;
    d.lat = clustering.centroids[c].lat;
    d.lon = clustering.centroids[c].lon;
    double best = -1.0;
    for (const auto& [zone, w] : zone_weight[c]) {
      if (w > best) {
        best = w;
        d.zone = zone;
      }
    }
    out.demand_points.push_back(std::move(d));
  }
  return out;
}

double evaluate_cross(const PlanSolution& plan, const Neighborhood& fine,
                      std::span<const Segment> segments, const SimParams& sim,
                      const CostParams& cost) {
  bool same = plan.park_ids.size() == fine.parks.size();
  for (std::size_t j = 0; same && j < fine.parks.size(); ++j) {
    same = plan.park_ids[j] == fine.parks[j].id;
  }
  if (!same) {
    throw Error(ErrorCode::kInvalidInput, "park-set mismatch between plan and neighborhood",
                fine.id);
  }
  const UtilityTable table = build_utility_table(fine, segments, sim, cost);
  return evaluate_plan(fine, plan.ranks, table, cost, plan.budget).objective;
}

}  // namespace ugsopt
