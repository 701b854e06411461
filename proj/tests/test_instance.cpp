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
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "ugsopt/error.hpp"
#include "ugsopt/instance.hpp"

using namespace ugsopt;
using nlohmann::json;

namespace {

bool has_violation(const ValidationReport& report, const std::string& fragment) {
  for (const Violation& v : report) {
    if (v.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

json minimal() { return json::parse(fixture::kMinimalDocument); }

ValidationReport report_for(const json& doc) {
  return validate(parse_instance_unvalidated(doc.dump()));
}

GenConfig config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n_neighborhoods = 2;
  cfg.demand_points_per_nbhd = 10;
  cfg.parks_per_nbhd = 3;
  cfg.candidates_per_nbhd = 2;
  return cfg;
}

}  // namespace

TEST_CASE("instance: minimal document") {
  const Instance inst = parse_instance(fixture::kMinimalDocument);
  REQUIRE(inst.neighborhoods.size() == 1);
  CHECK(inst.total_budget == inst.neighborhoods[0].baseline_budget);
  CHECK(inst.segments.size() == 1);
  CHECK(inst.neighborhoods[0].parks[0].designs.size() == 1);
  CHECK(validate(inst).empty());
}

TEST_CASE("instance: weights must sum to one") {
  json doc = minimal();
  doc["neighborhoods"][0]["demand_points"][0]["weights"]["all"] = 0.9;
  CHECK(has_violation(report_for(doc), "weights must sum to 1"));
  try {
    parse_instance(doc.dump());
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidInput);
    CHECK(std::string(e.what()).find("weights must sum to 1") != std::string::npos);
    CHECK(e.path().find("/neighborhoods/0") == 0);
  }
}

TEST_CASE("instance: baseline design of an existing park has zero attraction increase") {
  json doc = minimal();
  doc["neighborhoods"][0]["parks"][0]["designs"][0]["theta"]["all"] = 0.2;
  CHECK(has_violation(report_for(doc), "baseline design must have zero attraction increase"));
}

TEST_CASE("instance: baseline below the maintenance floor names the margin adjustment") {
  json doc = minimal();
  doc["neighborhoods"][0]["baseline_budget"] = 50000.0;
  doc["B_T"] = 50000.0;
  const ValidationReport report = report_for(doc);
  CHECK(has_violation(report, "maintenance-margin"));
  CHECK_FALSE(has_violation(report, "B_T must equal"));
}

TEST_CASE("instance: total budget must equal the sum of baselines") {
  json doc = minimal();
  doc["B_T"] = 65100.5;
  CHECK(has_violation(report_for(doc), "B_T must equal the sum of baseline budgets"));
}

TEST_CASE("instance: min_budget must equal the rank-1 maintenance cost") {
  json doc = minimal();
  doc["neighborhoods"][0]["min_budget"] = 61000.0;
  CHECK(has_violation(report_for(doc), "min_budget must equal"));
}

TEST_CASE("instance: design ranks and monotone attraction") {
  json doc = minimal();
  auto& designs = doc["neighborhoods"][0]["parks"][0]["designs"];
  designs.push_back({{"rank", 3}, {"theta", {{"all", 0.5}}}});
  CHECK(has_violation(report_for(doc), "design ranks must form the sequence"));
  designs[1]["rank"] = 2;
  designs.push_back({{"rank", 3}, {"theta", {{"all", 0.25}}}});
  CHECK(has_violation(report_for(doc), "non-decreasing in rank"));
}

TEST_CASE("instance: schema errors carry the field path") {
  json doc = minimal();
  doc["neighborhoods"][0]["parks"][0]["colour"] = "green";
  try {
    parse_instance(doc.dump());
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.path() == "/neighborhoods/0/parks/0/colour");
  }
  json missing = minimal();
  missing.erase("B_T");
  CHECK_THROWS_WITH_AS(parse_instance(missing.dump()), "missing required key", Error);
  CHECK_THROWS_AS(parse_instance("{not json"), Error);
  json kind = minimal();
  kind["neighborhoods"][0]["parks"][0]["kind"] = "planned";
  CHECK_THROWS_AS(parse_instance(kind.dump()), Error);
}

TEST_CASE("instance: duplicate ids are reported") {
  json doc = minimal();
  auto point = doc["neighborhoods"][0]["demand_points"][0];
  point["weights"]["all"] = 0.0;
  doc["neighborhoods"][0]["demand_points"].push_back(point);
  CHECK_FALSE(report_for(doc).empty());
}

TEST_CASE("instance: serialize and parse round-trip generated instances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    GenConfig cfg = config(seed);
    cfg.n_neighborhoods = 1 + static_cast<int>(seed % 3);
    cfg.candidates_per_nbhd = static_cast<int>(seed % 4);
    const Instance inst = generate_synthetic(cfg);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("instance: generator is deterministic and seed-sensitive") {
  const Instance a = generate_synthetic(config(1));
  const Instance b = generate_synthetic(config(1));
  const Instance c = generate_synthetic(config(2));
  CHECK(serialize_instance(a) == serialize_instance(b));
  CHECK(serialize_instance(a) != serialize_instance(c));
  CHECK(a.neighborhoods.size() == 2);
  CHECK(a.neighborhoods[0].demand_points.size() == 10);
  CHECK(a.neighborhoods[0].parks.size() == 5);
}

TEST_CASE("instance: generated instances validate and satisfy the budget identity") {
  bool saw_negative_alpha = false;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenConfig cfg = config(seed);
    cfg.n_neighborhoods = 1 + static_cast<int>(seed % 5);
    cfg.parks_per_nbhd = static_cast<int>(seed % 4);
    cfg.candidates_per_nbhd = 1 + static_cast<int>(seed % 3);
    cfg.designs_per_location = 1 + static_cast<int>(seed % 3);
    const Instance inst = generate_synthetic(cfg);
    CAPTURE(seed);
    CHECK(validate(inst).empty());
    double sum = 0.0;
    for (const Neighborhood& nb : inst.neighborhoods) {
      sum += nb.baseline_budget;
      CHECK(nb.baseline_budget >= nb.min_budget);
      for (const ParkLocation& p : nb.parks) saw_negative_alpha = saw_negative_alpha || p.alpha < 0.0;
    }
    CHECK(std::abs(inst.total_budget - sum) <= 1e-6);
  }
  CHECK(saw_negative_alpha);
}

TEST_CASE("instance: generator defaults use the reference parameterization") {
  const Instance inst = generate_synthetic(config(4));
  REQUIRE(inst.segments.size() == 3);
  CHECK(inst.segments[0].beta == 1.5);
  CHECK(inst.segments[0].child_like);
  CHECK(inst.segments[1].beta == 1.0);
  CHECK(inst.segments[2].beta == 1.5);
  CHECK(inst.delta == 0.30);
  for (const ParkLocation& p : inst.neighborhoods[0].parks) {
    const std::vector<double> expected =
        p.is_existing() ? std::vector<double>{0.0, 0.5, 1.0} : std::vector<double>{0.75, 1.5, 3.0};
    for (std::size_t r = 0; r < p.designs.size(); ++r) {
      for (const auto& [seg, th] : p.designs[r].theta) CHECK(th == expected[r]);
    }
  }
}

TEST_CASE("instance: design costs") {
  const CostParams cost;
  ParkLocation existing;
  existing.kind = ParkKind::kExisting;
  existing.area_m2 = 10000.0;
  existing.designs = {{1, {}, std::nullopt}, {2, {}, std::nullopt}, {3, {}, std::nullopt}};
  CHECK(design_cost(existing, 1, cost) == doctest::Approx(31000.0).epsilon(1e-15));
  CHECK(design_cost(existing, 2, cost) == doctest::Approx(55800.0).epsilon(1e-15));
  CHECK(design_cost(existing, 3, cost) == doctest::Approx(80600.0).epsilon(1e-15));

  ParkLocation candidate;
  candidate.kind = ParkKind::kCandidate;
  candidate.designs = existing.designs;
  CHECK(design_cost(candidate, 1, cost) == 750000.0);
  CHECK(park_area_m2(candidate, cost) == 50000.0);

  candidate.designs[1].cost_override = 1234.0;
  CHECK(design_cost(candidate, 2, cost) == 1234.0);
  CHECK_THROWS_AS(design_cost(candidate, 4, cost), Error);
  CHECK_THROWS_AS(design_cost(candidate, 0, cost), Error);
}

TEST_CASE("instance: generator rejects invalid counts") {
  GenConfig cfg;
  cfg.n_neighborhoods = 0;
  CHECK_THROWS_AS(generate_synthetic(cfg), Error);
  cfg = GenConfig{};
  cfg.parks_per_nbhd = 0;
  cfg.candidates_per_nbhd = 0;
  CHECK_THROWS_AS(generate_synthetic(cfg), Error);
  cfg = GenConfig{};
  cfg.designs_per_location = 4;
  CHECK_THROWS_AS(generate_synthetic(cfg), Error);
}

TEST_CASE("instance: generator config document") {
  const GenConfig cfg = parse_gen_config(R"({"seed": 9, "n_neighborhoods": 4, "extent_km": 1.5})");
  CHECK(cfg.seed == 9);
  CHECK(cfg.n_neighborhoods == 4);
  CHECK(cfg.extent_km == 1.5);
  CHECK(cfg.parks_per_nbhd == GenConfig{}.parks_per_nbhd);
  CHECK_THROWS_AS(parse_gen_config(R"({"sed": 9})"), Error);
}
