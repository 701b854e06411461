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

#ifndef UGSOPT_CLUSTER_HPP_
#define UGSOPT_CLUSTER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ugsopt/instance.hpp"
#include "ugsopt/plan.hpp"
#include "ugsopt/sim.hpp"

namespace ugsopt {

struct Clustering {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> point_ids;  // parallel to assignment
  std::vector<int> assignment;
  std::vector<GeoPoint> centroids;
  // Sum of squared coordinate distances to the assigned centroid (degrees^2).
  double inertia = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> inertia_history;

  bool operator==(const Clustering&) const = default;
};

inline constexpr int kDefaultMaxIter = 300;

// k-means++ seeding followed by Lloyd iterations on (lat, lon).
Clustering kmeans(std::span<const GeoPoint> points, int k, std::uint64_t seed,
                  int max_iter = kDefaultMaxIter);

Clustering cluster_neighborhood(const Neighborhood& nbhd, int k, std::uint64_t seed,
                                int max_iter = kDefaultMaxIter);

int default_cluster_count(std::size_t n_points);

// Replaces the demand points by cluster centroids carrying the summed weights.
Neighborhood aggregate_demand(const Neighborhood& nbhd, const Clustering& clustering);

// Visiting share of a fixed plan on another demand granularity of the same
// neighborhood.
double evaluate_cross(const PlanSolution& plan, const Neighborhood& fine,
                      std::span<const Segment> segments, const SimParams& sim,
                      const CostParams& cost);

}  // namespace ugsopt

#endif  // UGSOPT_CLUSTER_HPP_
