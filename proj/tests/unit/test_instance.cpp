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

#include <comsat/instance.hpp>

#include <random>

using namespace comsat;

namespace {

const std::string small_instance = R"({
  "nodes": [0, 1, 2],
  "depot": 0,
  "edges": [
    {"u": 0, "v": 1, "len": 2, "cap": 1},
    {"u": 1, "v": 2, "len": 1, "cap": 2}
  ],
  "horizon": 20,
  "vehicles": ["a", "b"],
  "operating_range": 30,
  "charge_coeff": 0.5,
  "discharge_coeff": 1,
  "jobs": {
    "J": {
      "eligible": ["b"],
      "tasks": {
        "1": {"location": 1, "window": [0, null], "precedes": []},
        "2": {"location": 2, "window": [3, 9], "precedes": ["1"]}
      }
    }
  }
})";

std::string replace(std::string text, const std::string& from, const std::string& to)
{
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  return text;
}

std::string error_of(const std::string& text)
{
  try
  {
    parse_instance(text);
  }
  catch (const InstanceError& e)
  {
    return e.what();
  }
  return {};
}

// Reachability from every node, computed by a closure over the edge list.
bool strongly_connected_oracle(int n, const std::vector<Edge>& edges)
{
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    reach[i][i] = 1;
  for (const auto& e : edges)
    reach[e.source][e.sink] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j])
          reach[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!reach[i][j])
        return false;
  return true;
}

Instance random_instance(std::mt19937_64& rng)
{
  auto draw = [&](int lo, int hi)
    {
      return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

  const int n = draw(2, 7);
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i)
    nodes.push_back(i);

  // A ring keeps the graph strongly connected; chords may be one-way.
  std::vector<Edge> edges;
  for (int i = 0; i < (n == 2 ? 1 : n); ++i)
  {
    const int len = draw(1, 5);
    const int cap = draw(1, 2);
    edges.push_back({i, (i + 1) % n, len, cap});
    edges.push_back({(i + 1) % n, i, len, cap});
  }
  for (int k = 0; k < n; ++k)
  {
    const int u = draw(0, n - 1);
    const int v = draw(0, n - 1);
    if (u == v)
      continue;
    bool exists = false;
    for (const auto& e : edges)
      exists = exists || (e.source == u && e.sink == v);
    if (!exists)
      edges.push_back({u, v, draw(1, 5), draw(1, 3)});
  }

  std::map<NodeId, std::int64_t> caps;
  if (draw(0, 1))
    caps[n - 1] = draw(1, 3);

  Instance inst;
  inst.graph = Graph(nodes, 0, edges, caps);
  inst.horizon = draw(10, 60);
  const int m = draw(1, 4);
  for (int i = 0; i < m; ++i)
    inst.fleet.vehicles.push_back("v" + std::to_string(i));
  inst.fleet.operating_range = draw(5, 80);
  inst.fleet.charge_coeff = {draw(0, 3), draw(1, 4)};
  inst.fleet.discharge_coeff = {draw(1, 3), 1};

  const int jobs = draw(0, 4);
  for (int j = 0; j < jobs; ++j)
  {
    Job job;
    job.id = "job" + std::to_string(j);
    for (const auto& v : inst.fleet.vehicles)
    {
      if (draw(0, 1))
        job.eligible.push_back(v);
    }
    if (job.eligible.empty())
      job.eligible.push_back(inst.fleet.vehicles.front());

    const int tasks = draw(1, 3);
    for (int t = 1; t <= tasks; ++t)
    {
      Task task;
      task.job = job.id;
      task.id = std::to_string(t);
      task.location = draw(0, n - 1);
      task.window_lo = draw(0, 5);
      task.window_hi = draw(0, 1) ? inst.horizon : task.window_lo + draw(0, 10);
      if (t == tasks)
      {
        for (int p = 1; p < tasks; ++p)
          task.predecessors.push_back(std::to_string(p));
      }
      job.tasks.push_back(task);
    }
    inst.jobs.push_back(job);
  }
  return finalize_instance(inst);
}

} // anonymous namespace

//==============================================================================
TEST_CASE("worked example loads with synthetic jobs")
{
  const auto inst = load_instance(COMSAT_DATA_DIR "/fig1.json");
  CHECK(inst.graph.nodes().size() == 21);
  CHECK(inst.graph.depot() == 19);
  CHECK(inst.graph.edges().size() == 48);
  CHECK(inst.graph.strongly_connected());
  REQUIRE(inst.jobs.size() == 6);
  CHECK(inst.jobs.front().id == "start");
  CHECK(inst.jobs.back().id == "end");
  CHECK(inst.regular_jobs().size() == 4);

  const auto& start = inst.start_job();
  REQUIRE(start.tasks.size() == 1);
  CHECK(start.tasks[0].location == 19);
  CHECK(start.tasks[0].window_lo == 0);
  CHECK(start.tasks[0].window_hi == inst.horizon);
  CHECK(start.eligible == inst.fleet.vehicles);

  const auto& a = inst.job("A");
  CHECK(a.task("2").window_lo == 7);
  CHECK(a.task("2").window_hi == 12);
  CHECK(a.task("1").window_hi == inst.horizon);
  CHECK(a.task("2").predecessors == std::vector<TaskId>{"1"});
  CHECK(inst.fleet.charge_coeff == Rational{1, 2});
}

TEST_CASE("zero jobs is a valid instance")
{
  auto text = replace(small_instance, R"("jobs": {)", R"("jobs": {}, "unused": {)");
  const auto inst = parse_instance(text);
  CHECK(inst.jobs.size() == 2);
  CHECK(inst.regular_jobs().empty());
}

TEST_CASE("node capacities")
{
  auto inst = parse_instance(small_instance);
  CHECK(inst.graph.node_capacity(0) > 1000000);
  CHECK(inst.graph.node_capacity(1) == 1);

  auto text = replace(small_instance, R"("horizon")", R"("node_capacity": {"2": 3}, "horizon")");
  inst = parse_instance(text);
  CHECK(inst.graph.node_capacity(2) == 3);
  CHECK(inst.graph.node_capacity(1) == 1);
}

TEST_CASE("undirected and directed edges")
{
  const auto inst = parse_instance(small_instance);
  CHECK(inst.graph.edges().size() == 4);
  REQUIRE(inst.graph.find_edge(1, 0));
  CHECK(inst.graph.find_edge(1, 0)->length == 2);
  CHECK(inst.graph.find_edge(0, 2) == nullptr);

  auto text = replace(small_instance, R"("cap": 2})", R"("cap": 2, "directed": true})");
  CHECK(error_of(text) == "graph not strongly connected");
}

TEST_CASE("invariant violations are reported by name")
{
  SECTION("unknown node in an edge")
  {
    auto text = replace(small_instance, R"("v": 2, "len")", R"("v": 7, "len")");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("unknown node"));
  }
  SECTION("task location outside the graph")
  {
    auto text = replace(small_instance, R"("location": 2)", R"("location": 22)");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("task location 22 not a node"));
  }
  SECTION("missing delivery")
  {
    auto text = replace(small_instance, R"("precedes": ["1"])", R"("precedes": [])");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("delivery"));
  }
  SECTION("cyclic precedence")
  {
    auto text = replace(small_instance, R"("precedes": [])", R"("precedes": ["2"])");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("cyclic"));
  }
  SECTION("ineligible vehicle")
  {
    auto text = replace(small_instance, R"("eligible": ["b"])", R"("eligible": ["z"])");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("unknown vehicle"));
  }
  SECTION("empty eligibility")
  {
    auto text = replace(small_instance, R"("eligible": ["b"])", R"("eligible": [])");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("no eligible"));
  }
  SECTION("empty window")
  {
    auto text = replace(small_instance, "[3, 9]", "[9, 3]");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("empty window"));
  }
  SECTION("fractional integer field")
  {
    auto text = replace(small_instance, R"("len": 2)", R"("len": 2.5)");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("integer"));
  }
  SECTION("duplicate ordered pair")
  {
    auto text = replace(small_instance, R"({"u": 1, "v": 2)", R"({"u": 1, "v": 0, "len": 1, "cap": 1}, {"u": 1, "v": 2)");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("more than one edge"));
  }
  SECTION("missing key")
  {
    auto text = replace(small_instance, R"("horizon": 20,)", "");
    CHECK_THAT(error_of(text), Catch::Matchers::ContainsSubstring("horizon"));
  }
}

TEST_CASE("syntax errors carry a position")
{
  try
  {
    parse_instance("{\"nodes\": [1, 2,, 3]}");
    FAIL("expected a parse error");
  }
  catch (const ParseError& e)
  {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("byte 17"));
  }
}

TEST_CASE("rational coefficients are exact")
{
  CHECK(Rational::from_double(0.5) == Rational{1, 2});
  CHECK(Rational::from_double(2.0) == Rational{2, 1});
  CHECK(Rational::from_double(0.25) == Rational{1, 4});
  CHECK(Rational::from_double(1.0 / 3.0) == Rational{1, 3});
  CHECK(Rational::from_double(0.0) == Rational{0, 1});
  CHECK(Rational::from_double(1.375) == Rational{11, 8});
}

TEST_CASE("task identifiers order numerically")
{
  CHECK(task_id_less("2", "10"));
  CHECK_FALSE(task_id_less("10", "2"));
  CHECK(task_id_less("a", "b"));
}

TEST_CASE("mutex sets on the worked example")
{
  const auto inst = load_instance(COMSAT_DATA_DIR "/fig1.json");
  const auto mutex = mutex_sets(inst);
  CHECK(mutex.at("A") == std::set<JobId>{"C"});
  CHECK(mutex.at("B").empty());
  CHECK(mutex.at("C") == std::set<JobId>{"A", "D"});
  CHECK(mutex.at("D") == std::set<JobId>{"C"});
}

//==============================================================================
TEST_CASE("property: serialization round trips")
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial)
  {
    const auto inst = random_instance(rng);
    const auto again = parse_instance(serialize_instance(inst));
    REQUIRE(again == inst);
  }
  const auto fig = load_instance(COMSAT_DATA_DIR "/fig1.json");
  CHECK(parse_instance(serialize_instance(fig)) == fig);
}

TEST_CASE("property: strong connectivity matches reachability from every node")
{
  std::mt19937_64 rng(11);
  int connected = 0;
  for (int trial = 0; trial < 500; ++trial)
  {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<NodeId> nodes;
    for (int i = 0; i < n; ++i)
      nodes.push_back(i);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && std::uniform_int_distribution<int>(0, 2)(rng) == 0)
          edges.push_back({u, v, 1, 1});
    const Graph g(nodes, std::uniform_int_distribution<int>(0, n - 1)(rng), edges);
    const bool expected = strongly_connected_oracle(n, edges);
    REQUIRE(g.strongly_connected() == expected);
    connected += expected;
  }
  CHECK(connected > 20);
  CHECK(connected < 480);
}

TEST_CASE("property: mutex sets are symmetric and exact")
{
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial)
  {
    const auto inst = random_instance(rng);
    const auto mutex = mutex_sets(inst);
    for (const auto& a : inst.regular_jobs())
    {
      for (const auto& b : inst.regular_jobs())
      {
        bool shared = false;
        for (const auto& v : a.eligible)
          for (const auto& w : b.eligible)
            shared = shared || v == w;
        const bool listed = mutex.at(a.id).count(b.id) > 0;
        REQUIRE(listed == (a.id != b.id && !shared));
        REQUIRE(listed == (mutex.at(b.id).count(a.id) > 0));
      }
    }
  }
}
