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

#ifndef COMSAT__SCHEDULER_HPP
#define COMSAT__SCHEDULER_HPP

#include <comsat/assigner.hpp>

namespace comsat {

//==============================================================================
/// A task carried out when the vehicle enters the trace node at `position`.
struct TraceVisit
{
  JobId job;
  TaskId task;
  std::size_t position;

  bool operator==(const TraceVisit&) const = default;
};

/// The node-by-node itinerary of one assigned route.
struct RouteTrace
{
  std::size_t route = 0;
  VehicleId vehicle;
  /// Earliest departure from the depot.
  Time start = 0;
  std::vector<NodeId> nodes;
  /// edges[i] joins nodes[i] to nodes[i + 1].
  std::vector<Edge> edges;
  /// Entry window per position; intersections get [0, horizon].
  std::vector<Time> window_lo;
  std::vector<Time> window_hi;
  std::vector<TraceVisit> visits;

  Distance length() const;
};

/// Concatenate the selected paths between consecutive visits of every route.
std::vector<RouteTrace> expand_routes(
  const Instance& inst,
  const PathTable& table,
  const PathCombination& paths,
  const RouteSet& routes,
  const Assignment& assignment);

//==============================================================================
struct TimedNode
{
  NodeId node;
  /// Entry time.
  Time t;

  bool operator==(const TimedNode&) const = default;
};

struct TimedEdge
{
  NodeId u;
  NodeId v;
  /// Departure time from u.
  Time t;

  bool operator==(const TimedEdge&) const = default;
};

/// A vehicle is at nodes[i] from nodes[i].t through edges[i].t, and on
/// edges[i] from edges[i].t until edges[i].t + length.
struct ScheduledTrace
{
  std::size_t route = 0;
  VehicleId vehicle;
  std::vector<TimedNode> nodes;
  std::vector<TimedEdge> edges;
  std::vector<TraceVisit> visits;

  bool operator==(const ScheduledTrace&) const = default;
};

struct Schedule
{
  std::vector<ScheduledTrace> traces;
  Time makespan = 0;

  bool operator==(const Schedule&) const = default;
};

struct SchedulerOptions
{
  /// Treat every edge as holding a single vehicle at a time.
  bool strict_pairwise_edges = false;
};

struct ScheduleResult
{
  backend::Status status = backend::Status::Timeout;
  std::optional<Schedule> schedule;
};

/// Time every trace so that node and edge capacities are never exceeded,
/// vehicles never pass each other head-on, entry windows hold, and routes of
/// one vehicle leave time to recharge in between.
ScheduleResult scheduler(
  const Instance& inst,
  const std::vector<RouteTrace>& traces,
  const Assignment& assignment,
  const SchedulerOptions& options = {},
  const backend::Limits& limits = {});

} // namespace comsat

#endif // COMSAT__SCHEDULER_HPP
