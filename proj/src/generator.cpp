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

#include <comsat/generator.hpp>
#include <comsat/path_planner.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace comsat {

//==============================================================================
std::size_t target_segments(const GenParams& p)
{
  const std::size_t n = p.nodes;
  const std::size_t tree = n - 1;
  const double reference = std::max<double>(
    static_cast<double>(tree), std::round(n * (n - 1) / 4.0));
  const double kept = std::round(reference * (1.0 - p.edge_reduction / 100.0));
  const std::size_t complete = n * (n - 1) / 2;
  return std::min(complete, std::max(tree, static_cast<std::size_t>(kept)));
}

//==============================================================================
Instance generate(const GenParams& p)
{
  if (p.nodes < 2 || p.vehicles < 1 || p.jobs < 1)
    throw std::invalid_argument("need at least 2 nodes, 1 vehicle and 1 job");
  if (p.edge_reduction < 0 || p.edge_reduction > 100)
    throw std::invalid_argument("edge reduction must be within [0, 100]");
  if (p.horizon < 4)
    throw std::invalid_argument("horizon must be at least 4");

  std::mt19937_64 rng(p.seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi)
    {
      return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };

  const auto n = static_cast<NodeId>(p.nodes);
  std::vector<NodeId> nodes(p.nodes);
  for (NodeId i = 0; i < n; ++i)
    nodes[i] = i + 1;
  const NodeId depot = 1;

  std::set<std::pair<NodeId, NodeId>> segments;
  std::vector<NodeId> order = nodes;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 1; i < order.size(); ++i)
  {
    const NodeId other = order[uniform(0, static_cast<std::int64_t>(i) - 1)];
    segments.insert(std::minmax(order[i], other));
  }

  const std::size_t target = target_segments(p);
  while (segments.size() < target)
  {
    const NodeId a = static_cast<NodeId>(uniform(1, n));
    const NodeId b = static_cast<NodeId>(uniform(1, n));
    if (a != b)
      segments.insert(std::minmax(a, b));
  }

  std::vector<Edge> edges;
  for (const auto& [a, b] : segments)
  {
    const Distance length = uniform(1, 4);
    const std::int64_t capacity = uniform(1, 2);
    edges.push_back({a, b, length, capacity});
    edges.push_back({b, a, length, capacity});
  }

  Instance inst;
  inst.graph = Graph(nodes, depot, edges);
  inst.horizon = p.horizon;

  for (std::size_t v = 0; v < p.vehicles; ++v)
    inst.fleet.vehicles.push_back("R" + std::to_string(v + 1));
  inst.fleet.discharge_coeff = {1, 1};
  inst.fleet.charge_coeff = {1, 2};

  // Enough range for one and a half times the longest round trip.
  const auto out = shortest_distances(inst.graph, depot);
  Distance round_trip = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
  {
    const auto back = shortest_distances(inst.graph, nodes[i]);
    round_trip = std::max(round_trip, out[i] + back[0]);
  }
  inst.fleet.operating_range = std::max<Distance>(1, (3 * round_trip + 1) / 2);

  for (std::size_t j = 0; j < p.jobs; ++j)
  {
    Job job;
    job.id = "J" + std::to_string(j + 1);

    const NodeId pickup = static_cast<NodeId>(uniform(1, n));
    NodeId delivery = pickup;
    while (delivery == pickup)
      delivery = static_cast<NodeId>(uniform(1, n));

    const Time width = uniform(p.horizon / 4, p.horizon / 2);
    const Time lo = uniform(0, p.horizon - width);
    job.tasks.push_back({job.id, "1", pickup, 0, p.horizon, {}});
    job.tasks.push_back({job.id, "2", delivery, lo, lo + width, {"1"}});

    while (job.eligible.empty())
    {
      for (const auto& v : inst.fleet.vehicles)
      {
        if (std::bernoulli_distribution(0.5)(rng))
          job.eligible.push_back(v);
      }
    }
    inst.jobs.push_back(std::move(job));
  }

  return finalize_instance(std::move(inst));
}

} // namespace comsat
