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

#ifndef COMSAT__INSTANCE_HPP
#define COMSAT__INSTANCE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace comsat {

using NodeId = int;
using Time = std::int64_t;
using Distance = std::int64_t;
using JobId = std::string;
using TaskId = std::string;
using VehicleId = std::string;

inline const JobId kStartJob = "start";
inline const JobId kEndJob = "end";

//==============================================================================
/// Thrown for malformed text. `what()` carries the byte offset.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a well-formed instance violates a structural invariant.
class InstanceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
/// Non-negative rational coefficient, kept exact so that charge arithmetic can
/// be scaled to integers.
struct Rational
{
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }

  /// Closest rational with denominator up to 10^6 that reproduces `x`.
  static Rational from_double(double x);

  bool operator==(const Rational&) const = default;
};

//==============================================================================
struct Edge
{
  NodeId source;
  NodeId sink;
  Distance length;
  std::int64_t capacity;

  bool operator==(const Edge&) const = default;
};

//==============================================================================
/// Weighted directed graph with a depot. Edges are kept sorted by
/// (source, sink); at most one edge exists per ordered pair.
class Graph
{
public:

  Graph() = default;

  /// Throws InstanceError on an unknown node, a self loop, a non-positive
  /// length or capacity, a duplicated ordered pair, or a depot that is not a
  /// node. Connectivity is not checked here.
  Graph(
    std::vector<NodeId> nodes,
    NodeId depot,
    std::vector<Edge> edges,
    std::map<NodeId, std::int64_t> node_capacity = {});

  const std::vector<NodeId>& nodes() const { return _nodes; }
  NodeId depot() const { return _depot; }
  const std::vector<Edge>& edges() const { return _edges; }
  const std::map<NodeId, std::int64_t>& node_capacity_overrides() const
  {
    return _node_capacity;
  }

  bool has_node(NodeId n) const;

  /// nullptr when there is no edge u -> v.
  const Edge* find_edge(NodeId u, NodeId v) const;

  /// Indices into edges() of the edges leaving `u`, by ascending sink.
  std::span<const std::size_t> out_edges(NodeId u) const;

  /// The depot accommodates any number of vehicles; other nodes hold one
  /// unless overridden.
  std::int64_t node_capacity(NodeId n) const;

  bool strongly_connected() const;

  bool operator==(const Graph& other) const
  {
    return _nodes == other._nodes && _depot == other._depot
      && _edges == other._edges && _node_capacity == other._node_capacity;
  }

private:
  std::size_t _slot(NodeId n) const;

  std::vector<NodeId> _nodes;
  NodeId _depot = 0;
  std::vector<Edge> _edges;
  std::map<NodeId, std::int64_t> _node_capacity;
  std::vector<std::vector<std::size_t>> _out;
};

//==============================================================================
struct Task
{
  JobId job;
  TaskId id;
  NodeId location;
  Time window_lo;
  /// An unbounded upper window is stored as the horizon.
  Time window_hi;
  /// Tasks of the same job that must be executed before this one.
  std::vector<TaskId> predecessors;

  bool operator==(const Task&) const = default;
};

struct Job
{
  JobId id;
  std::vector<Task> tasks;
  std::vector<VehicleId> eligible;

  bool synthetic() const { return id == kStartJob || id == kEndJob; }
  const Task& task(const TaskId& id) const;

  bool operator==(const Job&) const = default;
};

struct Fleet
{
  std::vector<VehicleId> vehicles;
  Distance operating_range = 1;
  Rational charge_coeff;
  Rational discharge_coeff{1, 1};

  bool operator==(const Fleet&) const = default;
};

//==============================================================================
/// A full problem. Jobs are ordered: the synthetic `start` job first, then the
/// regular jobs by identifier, then the synthetic `end` job.
struct Instance
{
  Graph graph;
  std::vector<Job> jobs;
  Fleet fleet;
  Time horizon = 0;

  const Job& job(const JobId& id) const;
  const Job& start_job() const { return jobs.front(); }
  const Job& end_job() const { return jobs.back(); }

  /// Jobs other than start and end.
  std::span<const Job> regular_jobs() const;

  bool operator==(const Instance&) const = default;
};

/// Checks every invariant, injects missing synthetic jobs and canonicalizes
/// job and task order. Throws InstanceError naming the violated invariant.
Instance finalize_instance(Instance inst);

/// Parse the instance JSON format. Throws ParseError or InstanceError.
Instance parse_instance(std::string_view text);

Instance load_instance(const std::string& path);

/// JSON text that parse_instance() maps back to an equal Instance.
std::string serialize_instance(const Instance& inst);

//==============================================================================
/// For each regular job, the jobs whose eligible-vehicle sets are disjoint
/// from its own.
using MutexSets = std::map<JobId, std::set<JobId>>;

MutexSets mutex_sets(const Instance& inst);

/// Orders task identifiers numerically when both are integers, otherwise
/// lexicographically.
bool task_id_less(const TaskId& a, const TaskId& b);

} // namespace comsat

#endif // COMSAT__INSTANCE_HPP
