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

#include <comsat/path_planner.hpp>

#include <algorithm>
#include <queue>
#include <set>

namespace comsat {

//==============================================================================
bool path_less(const Path& a, const Path& b)
{
  if (a.length != b.length)
    return a.length < b.length;
  return a.nodes < b.nodes;
}

namespace {

//==============================================================================
struct Restrictions
{
  std::set<NodeId> nodes;
  std::set<NodePair> edges;

  bool allows(const Edge& e) const
  {
    return !nodes.count(e.source) && !nodes.count(e.sink)
      && !edges.count({e.source, e.sink});
  }
};

/// Distances *to* `to` over the restricted graph. Unreachable nodes are absent.
std::map<NodeId, Distance> distances_to(
  const Graph& graph, NodeId to, const Restrictions& r)
{
  std::map<NodeId, std::vector<const Edge*>> incoming;
  for (const auto& e : graph.edges())
  {
    if (r.allows(e))
      incoming[e.sink].push_back(&e);
  }

  std::map<NodeId, Distance> dist;
  using Entry = std::pair<Distance, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[to] = 0;
  queue.push({0, to});
  while (!queue.empty())
  {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v])
      continue;
    for (const Edge* e : incoming[v])
    {
      const auto nd = d + e->length;
      const auto it = dist.find(e->source);
      if (it == dist.end() || nd < it->second)
      {
        dist[e->source] = nd;
        queue.push({nd, e->source});
      }
    }
  }
  return dist;
}

/// The lexicographically smallest among the shortest paths from `from` to
/// `to` that respect the restrictions.
std::optional<Path> best_path(
  const Graph& graph, NodeId from, NodeId to, const Restrictions& r)
{
  if (r.nodes.count(from) || r.nodes.count(to))
    return std::nullopt;
  const auto dist = distances_to(graph, to, r);
  if (!dist.count(from))
    return std::nullopt;

  // Every step strictly lowers the remaining distance, so the walk is simple.
  Path path;
  path.nodes.push_back(from);
  NodeId at = from;
  while (at != to)
  {
    const auto remaining = dist.at(at);
    for (auto i : graph.out_edges(at))
    {
      const auto& e = graph.edges()[i];
      if (!r.allows(e))
        continue;
      const auto it = dist.find(e.sink);
      if (it != dist.end() && it->second + e.length == remaining)
      {
        path.length += e.length;
        path.nodes.push_back(e.sink);
        at = e.sink;
        break;
      }
    }
  }
  return path;
}

} // anonymous namespace

//==============================================================================
std::vector<Path> k_shortest_paths(
  const Graph& graph, NodeId from, NodeId to, std::size_t max_paths)
{
  std::vector<Path> accepted;
  if (max_paths == 0 || from == to)
    return accepted;

  auto first = best_path(graph, from, to, {});
  if (!first)
    return accepted;
  accepted.push_back(*first);

  auto cmp = [](const Path& a, const Path& b) { return path_less(a, b); };
  std::set<Path, decltype(cmp)> candidates(cmp);

  while (accepted.size() < max_paths)
  {
    const Path& last = accepted.back();
    for (std::size_t i = 0; i + 1 < last.nodes.size(); ++i)
    {
      const NodeId spur = last.nodes[i];
      const std::vector<NodeId> root(last.nodes.begin(), last.nodes.begin() + i + 1);

      Restrictions r;
      for (const auto& p : accepted)
      {
        if (p.nodes.size() > i + 1 && std::equal(root.begin(), root.end(), p.nodes.begin()))
          r.edges.insert({p.nodes[i], p.nodes[i + 1]});
      }
      for (std::size_t k = 0; k < i; ++k)
        r.nodes.insert(root[k]);

      auto tail = best_path(graph, spur, to, r);
      if (!tail)
        continue;

      Path total;
      total.nodes = root;
      for (std::size_t k = 0; k < i; ++k)
        total.length += graph.find_edge(root[k], root[k + 1])->length;
      total.nodes.insert(total.nodes.end(), tail->nodes.begin() + 1, tail->nodes.end());
      total.length += tail->length;
      candidates.insert(std::move(total));
    }

    if (candidates.empty())
      break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return accepted;
}

//==============================================================================
std::vector<Distance> shortest_distances(const Graph& graph, NodeId from)
{
  const auto& nodes = graph.nodes();
  std::vector<Distance> dist(nodes.size(), -1);
  auto slot = [&](NodeId n)
    {
      return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), n) - nodes.begin());
    };

  using Entry = std::pair<Distance, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[slot(from)] = 0;
  queue.push({0, from});
  while (!queue.empty())
  {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[slot(v)])
      continue;
    for (auto i : graph.out_edges(v))
    {
      const auto& e = graph.edges()[i];
      const auto nd = d + e.length;
      auto& cur = dist[slot(e.sink)];
      if (cur < 0 || nd < cur)
      {
        cur = nd;
        queue.push({nd, e.sink});
      }
    }
  }
  return dist;
}

//==============================================================================
std::vector<NodeId> task_locations(const Instance& inst)
{
  std::set<NodeId> locations{inst.graph.depot()};
  for (const auto& j : inst.jobs)
  {
    for (const auto& t : j.tasks)
      locations.insert(t.location);
  }
  return {locations.begin(), locations.end()};
}

//==============================================================================
std::optional<std::size_t> PathTable::index_of(NodePair pair) const
{
  const auto it = std::lower_bound(pairs.begin(), pairs.end(), pair);
  if (it == pairs.end() || *it != pair)
    return std::nullopt;
  return static_cast<std::size_t>(it - pairs.begin());
}

//==============================================================================
PathTable enumerate_paths(const Instance& inst, std::size_t max_paths)
{
  if (max_paths == 0)
    throw std::invalid_argument("at least one path per pair is required");

  PathTable table;
  table.max_paths = max_paths;
  const auto locations = task_locations(inst);
  for (NodeId a : locations)
  {
    for (NodeId b : locations)
    {
      if (a == b)
        continue;
      table.pairs.push_back({a, b});
      table.candidates.push_back(k_shortest_paths(inst.graph, a, b, max_paths));
      if (table.candidates.back().empty())
        throw InstanceError("graph not strongly connected");
    }
  }
  return table;
}

//==============================================================================
const Path& PathCombination::path(const PathTable& table, NodePair pair) const
{
  const auto index = table.index_of(pair);
  if (!index)
  {
    throw std::out_of_range(
      "no candidate paths from " + std::to_string(pair.first) + " to "
      + std::to_string(pair.second));
  }
  return table.candidates[*index][selection[*index]];
}

//==============================================================================
PathCombination shortest_combination(const PathTable& table)
{
  PathCombination out;
  out.selection.assign(table.pairs.size(), 0);
  for (const auto& c : table.candidates)
    out.total_hops += c.front().hops();
  return out;
}

//==============================================================================
PathfinderResult pathfinder(
  const PathTable& table,
  const UsedPaths& used,
  const backend::Limits& limits)
{
  using namespace backend;
  if (table.pairs.empty())
    throw std::invalid_argument("path table is empty");

  Model model;
  std::vector<std::vector<BoolVar>> chosen(table.pairs.size());
  LinearExpr hops;
  for (std::size_t q = 0; q < table.pairs.size(); ++q)
  {
    std::vector<Literal> group;
    for (std::size_t r = 0; r < table.candidates[q].size(); ++r)
    {
      const auto var = model.new_bool(
        "path_" + std::to_string(table.pairs[q].first) + "_"
        + std::to_string(table.pairs[q].second) + "_" + std::to_string(r));
      chosen[q].push_back(var);
      group.push_back(var);
      hops += LinearExpr(var) * table.candidates[q][r].hops();
    }
    model.add(exactly_one(group));
  }

  for (const auto& combination : used.history)
  {
    std::vector<Literal> differs;
    for (std::size_t q = 0; q < combination.selection.size(); ++q)
      differs.push_back(!Literal(chosen[q][combination.selection[q]]));
    model.add(any_of(differs));
  }
  model.minimize(hops);

  const auto result = check_minimize(model, limits);
  PathfinderResult out;
  out.status = result.status;
  if (result.status != Status::Sat)
    return out;

  PathCombination combination;
  for (std::size_t q = 0; q < chosen.size(); ++q)
  {
    for (std::size_t r = 0; r < chosen[q].size(); ++r)
    {
      if (result.solution->value(chosen[q][r]))
        combination.selection.push_back(r);
    }
  }
  combination.total_hops = *result.objective;
  out.combination = std::move(combination);
  return out;
}

} // namespace comsat
