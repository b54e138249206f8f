/*
 * Copyright (C) 2026 The ComSat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <catch2/catch_amalgamated.hpp>

#include <comsat/oracle.hpp>
#include <comsat/orchestrator.hpp>

#include "support/fixtures.hpp"

using namespace comsat;
using namespace comsat::testing;

//==============================================================================
TEST_CASE("one hop to a task with an open window is feasible")
{
  const auto inst = InstanceBuilder({0, 1}, 0, 10)
    .segment(0, 1, 1)
    .vehicles({"v"})
    .visit("j", 1, 0, std::nullopt, {"v"})
    .build();
  CHECK(brute_oracle(inst) == Feasibility::Feasible);
}

TEST_CASE("a zero-time window one hop away is infeasible")
{
  const auto inst = InstanceBuilder({0, 1}, 0, 10)
    .segment(0, 1, 1)
    .vehicles({"v"})
    .visit("j", 1, 0, 0, {"v"})
    .build();
  CHECK(brute_oracle(inst) == Feasibility::Infeasible);
}

TEST_CASE("one vehicle cannot be at two distant tasks at once")
{
  const auto inst = InstanceBuilder({0, 1, 2}, 0, 15)
    .segment(0, 1, 3)
    .segment(0, 2, 3)
    .vehicles({"v"})
    .visit("left", 1, 3, 4, {"v"})
    .visit("right", 2, 3, 4, {"v"})
    .build();
  CHECK(brute_oracle(inst) == Feasibility::Infeasible);
  const auto result = solve(inst);
  CHECK(result.status != SolveStatus::Sat);

  // A second vehicle makes it possible.
  auto doc = InstanceBuilder({0, 1, 2}, 0, 15)
    .segment(0, 1, 3)
    .segment(0, 2, 3)
    .vehicles({"v", "w"})
    .visit("left", 1, 3, 4, {"v", "w"})
    .visit("right", 2, 3, 4, {"v", "w"})
    .build();
  CHECK(brute_oracle(doc) == Feasibility::Feasible);
}

TEST_CASE("a single-lane corridor makes simultaneous deliveries infeasible")
{
  auto corridor = [](std::int64_t cap)
    {
      auto b = InstanceBuilder({0, 1, 2, 3}, 0, 12);
      b.segment(0, 1, 1, cap).segment(1, 2, 1, cap).segment(1, 3, 1, cap)
        .vehicles({"a", "b"})
        .visit("x", 2, 2, 2, {"a"})
        .visit("y", 3, 2, 2, {"b"});
      return b;
    };
  // Both have to pass node 1 at time 1.
  CHECK(brute_oracle(corridor(1).build()) == Feasibility::Infeasible);

  auto wide = corridor(2);
  auto doc = wide.doc();
  doc["node_capacity"] = {{"1", 2}};
  CHECK(brute_oracle(parse_instance(doc.dump())) == Feasibility::Feasible);
}

TEST_CASE("a second route waits for its recharge")
{
  // Each round trip has length 4, which is also the range, so the two jobs
  // need two routes; with C = 1 the second may leave 4 steps after the first
  // returns at 4, reaching its task at 10.
  auto build = [](Time due)
    {
      return InstanceBuilder({0, 1, 2}, 0, 15)
        .segment(0, 1, 2)
        .segment(0, 2, 2)
        .vehicles({"v"})
        .range(4)
        .charge(1, 1)
        .visit("first", 1, 2, 2, {"v"})
        .visit("second", 2, due, due, {"v"})
        .build();
    };
  CHECK(brute_oracle(build(10)) == Feasibility::Feasible);
  CHECK(brute_oracle(build(9)) == Feasibility::Infeasible);
  CHECK(solve(build(10)).status == SolveStatus::Sat);
  CHECK(solve(build(9)).status != SolveStatus::Sat);
}

TEST_CASE("pickup before delivery and eligibility are respected")
{
  auto build = [](std::vector<VehicleId> eligible, Time hi)
    {
      return InstanceBuilder({0, 1, 2}, 0, 15)
        .segment(0, 1, 1)
        .segment(1, 2, 1)
        .vehicles({"a", "b"})
        .transport("t", 2, 1, 0, hi, eligible)
        .build();
    };
  // Reaching 2 takes 2, coming back to 1 takes 1 more.
  CHECK(brute_oracle(build({"b"}, 3)) == Feasibility::Feasible);
  CHECK(brute_oracle(build({"b"}, 2)) == Feasibility::Infeasible);
}

TEST_CASE("instances above the caps are refused")
{
  const auto inst = InstanceBuilder({0, 1, 2, 3, 4, 5, 6}, 0, 10)
    .segment(0, 1, 1).segment(1, 2, 1).segment(2, 3, 1).segment(3, 4, 1)
    .segment(4, 5, 1).segment(5, 6, 1)
    .vehicles({"v"})
    .visit("j", 1, 0, std::nullopt, {"v"})
    .build();
  CHECK_THROWS_AS(brute_oracle(inst), OracleRefused);

  const auto long_horizon = InstanceBuilder({0, 1}, 0, 16)
    .segment(0, 1, 1)
    .vehicles({"v"})
    .visit("j", 1, 0, std::nullopt, {"v"})
    .build();
  CHECK_THROWS_AS(brute_oracle(long_horizon), OracleRefused);
}

TEST_CASE("solve never contradicts the oracle on tiny instances")
{
  RandomShape shape;
  shape.max_nodes = 5;
  shape.max_jobs = 2;
  shape.min_horizon = 6;
  shape.max_horizon = 12;
  shape.max_capacity = 2;

  std::mt19937_64 rng(101);
  int sat = 0;
  int unsat = 0;
  for (int trial = 0; trial < 60; ++trial)
  {
    const auto inst = random_instance(rng, shape);
    const auto truth = brute_oracle(inst);
    SolverConfig config;
    config.timeout = 10;
    const auto result = solve(inst, config);
    INFO(serialize_instance(inst));
    if (result.status == SolveStatus::Sat)
    {
      ++sat;
      CHECK(truth == Feasibility::Feasible);
    }
    else if (result.status == SolveStatus::Unsat)
    {
      ++unsat;
      CHECK(truth == Feasibility::Infeasible);
    }
  }
  CHECK(sat > 5);
  CHECK(unsat > 5);
}
