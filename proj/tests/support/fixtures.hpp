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

#ifndef COMSAT__TESTS__FIXTURES_HPP
#define COMSAT__TESTS__FIXTURES_HPP

#include <comsat/instance.hpp>

#include <json.hpp>

#include <random>

namespace comsat {
namespace testing {

//==============================================================================
/// Builds instance documents in the JSON exchange format.
class InstanceBuilder
{
public:

  InstanceBuilder(std::vector<NodeId> nodes, NodeId depot, Time horizon)
  {
    _doc["nodes"] = nodes;
    _doc["depot"] = depot;
    _doc["horizon"] = horizon;
    _doc["edges"] = nlohmann::json::array();
    _doc["vehicles"] = nlohmann::json::array();
    _doc["operating_range"] = 1000;
    _doc["charge_coeff"] = 0;
    _doc["discharge_coeff"] = 1;
    _doc["jobs"] = nlohmann::json::object();
  }

  InstanceBuilder& segment(NodeId u, NodeId v, Distance len, std::int64_t cap = 1)
  {
    _doc["edges"].push_back({{"u", u}, {"v", v}, {"len", len}, {"cap", cap}});
    return *this;
  }

  InstanceBuilder& arc(NodeId u, NodeId v, Distance len, std::int64_t cap = 1)
  {
    _doc["edges"].push_back(
      {{"u", u}, {"v", v}, {"len", len}, {"cap", cap}, {"directed", true}});
    return *this;
  }

  InstanceBuilder& vehicles(std::vector<VehicleId> ids)
  {
    _doc["vehicles"] = ids;
    return *this;
  }

  InstanceBuilder& range(Distance operating_range)
  {
    _doc["operating_range"] = operating_range;
    return *this;
  }

  InstanceBuilder& charge(double charge_coeff, double discharge_coeff)
  {
    _doc["charge_coeff"] = charge_coeff;
    _doc["discharge_coeff"] = discharge_coeff;
    return *this;
  }

  /// A job of a single task.
  InstanceBuilder& visit(
    const JobId& id, NodeId at, Time lo, std::optional<Time> hi,
    std::vector<VehicleId> eligible)
  {
    _doc["jobs"][id] = {
      {"eligible", eligible},
      {"tasks", {{"1", task(at, lo, hi, {})}}}};
    return *this;
  }

  /// A pickup with an open window followed by a delivery.
  InstanceBuilder& transport(
    const JobId& id, NodeId from, NodeId to, Time lo, std::optional<Time> hi,
    std::vector<VehicleId> eligible)
  {
    _doc["jobs"][id] = {
      {"eligible", eligible},
      {"tasks", {
         {"1", task(from, 0, std::nullopt, {})},
         {"2", task(to, lo, hi, {"1"})}}}};
    return *this;
  }

  Instance build() const { return parse_instance(_doc.dump()); }
  const nlohmann::json& doc() const { return _doc; }

private:
  static nlohmann::json task(
    NodeId at, Time lo, std::optional<Time> hi, std::vector<TaskId> preds)
  {
    nlohmann::json window = nlohmann::json::array({lo, nullptr});
    if (hi)
      window[1] = *hi;
    return {{"location", at}, {"window", window}, {"precedes", preds}};
  }

  nlohmann::json _doc;
};

//==============================================================================
/// Small random instances: a bidirectional ring with random chords, jobs of one
/// or two tasks, and random eligibility.
struct RandomShape
{
  int min_nodes = 3;
  int max_nodes = 6;
  int max_vehicles = 2;
  int max_jobs = 3;
  Time min_horizon = 10;
  Time max_horizon = 25;
  Distance max_length = 3;
  std::int64_t max_capacity = 1;
};

inline Instance random_instance(std::mt19937_64& rng, const RandomShape& shape = {})
{
  auto draw = [&](std::int64_t lo, std::int64_t hi)
    {
      return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };

  const int n = static_cast<int>(draw(shape.min_nodes, shape.max_nodes));
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i)
    nodes.push_back(i);
  const Time horizon = draw(shape.min_horizon, shape.max_horizon);
  InstanceBuilder b(nodes, 0, horizon);

  std::set<std::pair<int, int>> used;
  for (int i = 0; i + 1 < n; ++i)
  {
    b.segment(i, i + 1, draw(1, shape.max_length), draw(1, shape.max_capacity));
    used.insert({i, i + 1});
  }
  for (int k = 0; k < n / 2; ++k)
  {
    int u = static_cast<int>(draw(0, n - 1));
    int v = static_cast<int>(draw(0, n - 1));
    if (u > v)
      std::swap(u, v);
    if (u == v || used.count({u, v}))
      continue;
    used.insert({u, v});
    b.segment(u, v, draw(1, shape.max_length), draw(1, shape.max_capacity));
  }

  std::vector<VehicleId> fleet;
  const int m = static_cast<int>(draw(1, shape.max_vehicles));
  for (int i = 0; i < m; ++i)
    fleet.push_back("v" + std::to_string(i));
  b.vehicles(fleet);
  b.range(draw(6, 40));
  b.charge(draw(0, 2) * 0.5, 1);

  const int jobs = static_cast<int>(draw(1, shape.max_jobs));
  for (int j = 0; j < jobs; ++j)
  {
    std::vector<VehicleId> eligible;
    for (const auto& v : fleet)
    {
      if (draw(0, 1))
        eligible.push_back(v);
    }
    if (eligible.empty())
      eligible.push_back(fleet[draw(0, m - 1)]);

    const Time lo = draw(0, horizon / 2);
    std::optional<Time> hi;
    if (draw(0, 3) > 0)
      hi = std::min(horizon, lo + draw(0, horizon / 2));
    const JobId id = std::string(1, static_cast<char>('A' + j));
    const NodeId to = static_cast<NodeId>(draw(0, n - 1));
    if (draw(0, 1))
      b.visit(id, to, lo, hi, eligible);
    else
      b.transport(id, static_cast<NodeId>(draw(0, n - 1)), to, lo, hi, eligible);
  }
  return b.build();
}

} // namespace testing
} // namespace comsat

#endif // COMSAT__TESTS__FIXTURES_HPP
