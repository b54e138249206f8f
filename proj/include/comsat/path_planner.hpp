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

#ifndef COMSAT__PATH_PLANNER_HPP
#define COMSAT__PATH_PLANNER_HPP

#include <comsat/backend/solver.hpp>
#include <comsat/instance.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace comsat {

//==============================================================================
/// A simple directed path through the graph.
struct Path
{
  std::vector<NodeId> nodes;
  Distance length = 0;

  /// Number of nodes visited, which is what combination selection minimizes.
  std::int64_t hops() const { return static_cast<std::int64_t>(nodes.size()); }

  NodeId source() const { return nodes.front(); }
  NodeId sink() const { return nodes.back(); }

  bool operator==(const Path&) const = default;
};

/// Orders by metric length, then by node sequence.
bool path_less(const Path& a, const Path& b);

/// The `max_paths` shortest simple paths from `from` to `to` in path_less
/// order. Fewer are returned only when fewer exist.
std::vector<Path> k_shortest_paths(
  const Graph& graph, NodeId from, NodeId to, std::size_t max_paths);

/// Single source shortest distances to every node. Unreachable nodes map to
/// a negative value.
std::vector<Distance> shortest_distances(const Graph& graph, NodeId from);

//==============================================================================
using NodePair = std::pair<NodeId, NodeId>;

/// Distinct task locations, the depot included, in ascending order.
std::vector<NodeId> task_locations(const Instance& inst);

/// Candidate paths for every ordered pair of distinct task locations.
struct PathTable
{
  std::vector<NodePair> pairs;
  std::vector<std::vector<Path>> candidates;
  std::size_t max_paths = 0;

  /// Position of `pair` in `pairs`, or nullopt.
  std::optional<std::size_t> index_of(NodePair pair) const;
};

PathTable enumerate_paths(const Instance& inst, std::size_t max_paths);

//==============================================================================
/// One chosen candidate per pair of a PathTable.
struct PathCombination
{
  std::vector<std::size_t> selection;
  std::int64_t total_hops = 0;

  /// The selected path between two distinct locations.
  const Path& path(const PathTable& table, NodePair pair) const;

  bool operator==(const PathCombination&) const = default;
};

/// Combinations that were already tried, in the order they were tried.
struct UsedPaths
{
  std::vector<PathCombination> history;
};

/// The combination built from the first (shortest) candidate of each pair.
PathCombination shortest_combination(const PathTable& table);

struct PathfinderResult
{
  /// Sat when a combination was found, Unsat when every combination has been
  /// used, Timeout when the limits ran out.
  backend::Status status = backend::Status::Timeout;
  std::optional<PathCombination> combination;
};

/// Picks the unused combination with the fewest total nodes visited.
PathfinderResult pathfinder(
  const PathTable& table,
  const UsedPaths& used,
  const backend::Limits& limits = {});

} // namespace comsat

#endif // COMSAT__PATH_PLANNER_HPP
