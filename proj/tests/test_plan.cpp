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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ugsopt/error.hpp"
#include "ugsopt/plan.hpp"

using namespace ugsopt;

namespace {

Instance one_segment(std::vector<DemandPoint> points, std::vector<ParkLocation> parks) {
  Instance inst;
  inst.segments = {{"all", 1.0, false}};
  Neighborhood nb;
  nb.id = "N";
  nb.population = 1000;
  nb.demand_points = std::move(points);
  nb.parks = std::move(parks);
  nb.min_budget = maintenance_floor(nb, inst.cost_params);
  inst.neighborhoods = {nb};
  return inst;
}

DesignAssignment random_assignment(const Neighborhood& nb, Rng& rng) {
  DesignAssignment ranks;
  for (const auto& p : nb.parks) {
    const int lo = p.is_existing() ? 1 : 0;
    const int hi = static_cast<int>(p.designs.size());
    ranks.push_back(lo + static_cast<int>(rng.index(static_cast<std::uint64_t>(hi - lo + 1))));
  }
  return ranks;
}

double solve_objective(const fixture::SmallCase& c, double budget, const UtilityTable& t) {
  const PlanSolution s =
      solve_neighborhood(c.inst.neighborhoods[0], budget, t, c.inst.cost_params);
  REQUIRE(s.solver->status == MipStatus::kOptimal);
  return s.objective;
}

}  // namespace

TEST_CASE("plan: model structure") {
  Instance inst = one_segment({fixture::point("p", 45.5, -73.6, {{"all", 1.0}})},
                              {fixture::park("e", ParkKind::kExisting, 45.501, -73.6, {0.0, 0.5},
                                             {"all"}, 1.0, 20000.0)});
  const auto& nb = inst.neighborhoods[0];
  const UtilityTable t = fixture::table(inst);
  const PlanModel m = build_milp(nb, 1e9, t, inst.cost_params);
  CHECK(m.x.size() == 2);
  CHECK(m.v.size() == 1);
  CHECK(m.z.size() == 2);
  CHECK(m.program.binaries.size() == 2);
  CHECK(m.program.lp.num_variables() == 5);
  // budget, one design row, one link, three rows per z
  CHECK(m.program.lp.num_constraints() == 1 + 1 + 1 + 6);
  CHECK(m.program.lp.constraints[1].relation == Relation::kEqual);
  for (int z : m.z) CHECK(m.program.lp.upper[z] == doctest::Approx(1.0 / t.u0[0]).epsilon(1e-15));
  CHECK(m.big_m[0] == 1.0 / t.u0[0]);
  CHECK_THROWS_AS(build_milp(nb, nb.min_budget - 1.0, t, inst.cost_params), Error);
}

TEST_CASE("plan: blocked terms are pruned unless kept") {
  Instance inst = one_segment(
      {fixture::point("p", 45.5, -73.6, {{"all", 1.0}})},
      {fixture::park("e", ParkKind::kExisting, 45.5, -73.6, {0.0, 0.5}, {"all"}, 1.0, 20000.0),
       fixture::park("far", ParkKind::kExisting, 45.6, -73.6, {0.0}, {"all"}, 1.0, 20000.0)});
  const UtilityTable t = fixture::table(inst);
  const auto& nb = inst.neighborhoods[0];
  const PlanModel pruned = build_milp(nb, 1e9, t, inst.cost_params);
  BuildOptions keep;
  keep.keep_blocked_terms = true;
  const PlanModel full = build_milp(nb, 1e9, t, inst.cost_params, keep);
  CHECK(pruned.z[2] == -1);
  CHECK(full.z[2] >= 0);
  const MipSolution a = bb_solve(pruned.program);
  const MipSolution b = bb_solve(full.program);
  CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
}

TEST_CASE("plan: evaluation examples") {
  Instance inst = one_segment({fixture::point("p", 45.5, -73.6, {{"all", 1.0}})},
                              {fixture::park("e", ParkKind::kExisting, 45.5, -73.6, {0.0},
                                             {"all"}, 1.0, 20000.0)});
  UtilityTable t = fixture::table(inst);
  t.u[0] = 0.5;
  t.u0[0] = 0.5;
  const PlanSolution s = evaluate_plan(inst.neighborhoods[0], {1}, t, inst.cost_params);
  CHECK(s.objective == doctest::Approx(0.5));
  CHECK(s.p0[0] == doctest::Approx(0.5));
  CHECK(s.spend == doctest::Approx(62000.0));

  Instance blocked = one_segment(
      {fixture::point("p", 45.5, -73.6, {{"all", 1.0}}, "z1")},
      {fixture::park("far", ParkKind::kExisting, 45.52, -73.6, {0.0}, {"all"}, 1.0, 20000.0),
       fixture::park("c", ParkKind::kCandidate, 45.5, -73.6, {0.75}, {"all"}, 1.0, std::nullopt, "z2")});
  const UtilityTable tb = fixture::table(blocked);
  const PlanSolution sb = evaluate_plan(blocked.neighborhoods[0], {1, 1}, tb, blocked.cost_params);
  CHECK(sb.objective == 0.0);
  CHECK(sb.p0[0] == 1.0);

  CHECK_THROWS_AS(evaluate_plan(inst.neighborhoods[0], {0}, t, inst.cost_params), Error);
  CHECK_THROWS_AS(evaluate_plan(inst.neighborhoods[0], {2}, t, inst.cost_params), Error);
  CHECK_THROWS_AS(evaluate_plan(inst.neighborhoods[0], {1, 1}, t, inst.cost_params), Error);
}

TEST_CASE("plan: forced maintenance plan") {
  Instance inst = one_segment({fixture::point("p", 45.5, -73.6, {{"all", 1.0}})},
                              {fixture::park("e", ParkKind::kExisting, 45.501, -73.6,
                                             {0.0, 0.5, 1.0}, {"all"}, 1.0, 20000.0)});
  const auto& nb = inst.neighborhoods[0];
  const UtilityTable t = fixture::table(inst);
  const PlanSolution s = solve_neighborhood(nb, nb.min_budget, t, inst.cost_params);
  CHECK(s.ranks == DesignAssignment{1});
  CHECK(s.objective == doctest::Approx(evaluate_plan(nb, {1}, t, inst.cost_params).objective));

  const PlanSolution rich = solve_neighborhood(nb, 1e9, t, inst.cost_params);
  const PlanSolution brute = brute_force_optimum(nb, 1e9, t, inst.cost_params);
  CHECK(rich.ranks == DesignAssignment{3});
  CHECK(brute.ranks == DesignAssignment{3});
  CHECK_THROWS_AS(solve_neighborhood(nb, nb.min_budget - 1.0, t, inst.cost_params), Error);
}

TEST_CASE("plan: budget for exactly one candidate") {
  Instance inst = one_segment(
      {fixture::point("p", 45.5, -73.6, {{"all", 1.0}})},
      {fixture::park("e", ParkKind::kExisting, 45.501, -73.6, {0.0}, {"all"}, 1.0, 20000.0),
       fixture::park("c1", ParkKind::kCandidate, 45.5, -73.6, {0.75}, {"all"}, 1.0),
       fixture::park("c2", ParkKind::kCandidate, 45.5, -73.6, {0.75}, {"all"}, 2.0)});
  const auto& nb = inst.neighborhoods[0];
  const UtilityTable t = fixture::table(inst);
  const double budget = nb.min_budget + 750000.0 + 1.0;
  const PlanSolution s = solve_neighborhood(nb, budget, t, inst.cost_params);
  CHECK(s.ranks == DesignAssignment{1, 0, 1});
  CHECK(s.objective == doctest::Approx(brute_force_optimum(nb, budget, t, inst.cost_params).objective)
                           .epsilon(1e-9));
  CHECK(s.spend <= budget);
}

TEST_CASE("plan: empty candidate set at the floor has a unique plan") {
  Instance inst = one_segment(
      {fixture::point("p", 45.5, -73.6, {{"all", 0.4}}), fixture::point("q", 45.502, -73.6, {{"all", 0.6}})},
      {fixture::park("e1", ParkKind::kExisting, 45.501, -73.6, {0.0, 0.5}, {"all"}, 1.0, 20000.0),
       fixture::park("e2", ParkKind::kExisting, 45.5, -73.601, {0.0, 0.5}, {"all"}, 0.5, 9000.0)});
  const auto& nb = inst.neighborhoods[0];
  const UtilityTable t = fixture::table(inst);
  const PlanSolution b = brute_force_optimum(nb, nb.min_budget, t, inst.cost_params);
  CHECK(b.ranks == DesignAssignment{1, 1});
}

TEST_CASE("plan: probabilities normalize and the linearization is exact") {
  Rng rng(11);
  int plans = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const fixture::SmallCase c = fixture::small_case(seed);
    const auto& nb = c.inst.neighborhoods[0];
    const UtilityTable t = fixture::table(c.inst);
    for (int rep = 0; rep < 10; ++rep, ++plans) {
      const DesignAssignment ranks = random_assignment(nb, rng);
      const PlanSolution s = evaluate_plan(nb, ranks, t, c.inst.cost_params);
      for (std::size_t pr = 0; pr < t.n_pairs(); ++pr) {
        double total = s.p0[pr];
        for (std::size_t j = 0; j < t.n_parks; ++j) total += s.p[pr * t.n_parks + j];
        CHECK(std::abs(total - 1.0) <= 1e-9);
      }
      CHECK(s.objective >= 0.0);
      CHECK(s.objective < 1.0);
      for (bool keep : {false, true}) {
        BuildOptions opts;
        opts.keep_blocked_terms = keep;
        const PlanModel m =
            build_milp(nb, std::max(s.spend, nb.min_budget), t, c.inst.cost_params, opts);
        const std::vector<double> x = implied_solution(m, t, ranks);
        CHECK(max_violation(m.program.lp, x) <= 1e-9);
        CHECK(std::abs(objective_value(m.program.lp, x) - s.objective) <= 1e-9);
      }
    }
  }
  CHECK(plans == 500);
}

TEST_CASE("plan: branch and bound matches enumeration") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    const fixture::SmallCase c = fixture::small_case(seed);
    const auto& nb = c.inst.neighborhoods[0];
    const UtilityTable t = fixture::table(c.inst);
    const PlanSolution bb = solve_neighborhood(nb, c.budget, t, c.inst.cost_params);
    const PlanSolution brute = brute_force_optimum(nb, c.budget, t, c.inst.cost_params);
    CHECK(bb.solver->status == MipStatus::kOptimal);
    CHECK(std::abs(bb.objective - brute.objective) <= 1e-6);
    CHECK(bb.spend <= c.budget + 1e-6);
    CHECK(std::abs(bb.solver->milp_objective - bb.objective) <= 1e-7);
  }
}

TEST_CASE("plan: more budget never hurts") {
  for (std::uint64_t seed = 200; seed < 225; ++seed) {
    const fixture::SmallCase c = fixture::small_case(seed);
    const UtilityTable t = fixture::table(c.inst);
    const double lo = solve_objective(c, c.budget, t);
    const double hi = solve_objective(c, c.budget * 1.5, t);
    CHECK(hi >= lo - 1e-9);
  }
}

TEST_CASE("plan: larger no-choice utility lowers a fixed plan's share") {
  Rng rng(3);
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const fixture::SmallCase c = fixture::small_case(seed);
    const auto& nb = c.inst.neighborhoods[0];
    const UtilityTable t = fixture::table(c.inst);
    const DesignAssignment ranks = random_assignment(nb, rng);
    const double base = evaluate_plan(nb, ranks, t, c.inst.cost_params).objective;
    const double scaled =
        evaluate_plan(nb, ranks, t.with_no_choice_scaled(1.25), c.inst.cost_params).objective;
    if (base > 0.0) {
      CHECK(scaled < base);
    } else {
      CHECK(scaled == 0.0);
    }
  }
}

TEST_CASE("plan: enumeration limit") {
  std::vector<ParkLocation> parks;
  for (int j = 0; j < 11; ++j) {
    parks.push_back(fixture::park("c" + std::to_string(j), ParkKind::kCandidate, 45.5, -73.6,
                                  {0.75, 1.5, 3.0}, {"all"}));
  }
  Instance inst = one_segment({fixture::point("p", 45.5, -73.6, {{"all", 1.0}})}, parks);
  const UtilityTable t = fixture::table(inst);
  CHECK_THROWS_WITH_AS(brute_force_optimum(inst.neighborhoods[0], 1e9, t, inst.cost_params),
                       "instance too large for enumeration", Error);
}
