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

#include <comsat/io.hpp>

#include <json.hpp>

using namespace comsat;

//==============================================================================
TEST_CASE("results of the figure example round-trip through JSON")
{
  const auto inst = load_instance(COMSAT_DATA_DIR "/fig1.json");
  const auto result = solve(inst);
  REQUIRE(result.status == SolveStatus::Sat);

  CHECK(parse_routes(inst, serialize_routes(*result.routes)) == *result.routes);
  CHECK(parse_assignment(serialize_assignment(*result.assignment)) == *result.assignment);
  CHECK(parse_schedule(serialize_schedule(*result.schedule)) == *result.schedule);

  const auto stats = nlohmann::json::parse(serialize_stats(result.stats));
  CHECK(stats["router_iterations"] == result.stats.router_iterations);
  CHECK(stats["scheduler"]["sat"] == 1);
}

TEST_CASE("malformed result documents are reported")
{
  const auto inst = load_instance(COMSAT_DATA_DIR "/fig1.json");
  CHECK_THROWS_AS(parse_schedule("{\"traces\": ["), ParseError);
  CHECK_THROWS_AS(parse_schedule("{\"traces\": []}"), InstanceError);
  CHECK_THROWS_AS(parse_assignment("{\"assignments\": [{\"route\": 0}]}"), InstanceError);
  CHECK_THROWS_AS(
    parse_routes(inst,
      R"({"routes": [{"visits": [{"job": "Z", "task": "1", "arrival": 0}],
          "length": 0, "latest_start": 0}]})"),
    InstanceError);
  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), InstanceError);
}
