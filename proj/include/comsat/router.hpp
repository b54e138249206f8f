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

#ifndef COMSAT__ROUTER_HPP
#define COMSAT__ROUTER_HPP

#include <comsat/path_planner.hpp>

namespace comsat {

//==============================================================================
struct Visit
{
  JobId job;
  TaskId task;
  NodeId location;
  Time arrival;

  bool operator==(const Visit&) const = default;
};

/// A depot-to-depot tour. The first visit is the start task and the last one
/// is the end task; arrivals assume the route leaves the depot at time 0.
struct Route
{
  std::vector<Visit> visits;
  Distance length = 0;
  Time latest_start = 0;

  /// Regular jobs served, in visiting order.
  std::vector<JobId> jobs() const;

  bool operator==(const Route&) const = default;
};

struct RouteSet
{
  std::vector<Route> routes;

  bool operator==(const RouteSet&) const = default;
};

/// Route sets already produced for the current path combination.
struct PreviousRoutes
{
  std::vector<RouteSet> history;
};

/// Travel distance between two locations under a path combination. Zero when
/// the locations coincide.
Distance travel_distance(
  const PathTable& table,
  const PathCombination& paths,
  NodeId from,
  NodeId to);

/// Distance from the depot to each visit along the route, the last entry
/// being the full route length.
std::vector<Distance> cumulative_distances(
  const Route& route,
  const PathTable& table,
  const PathCombination& paths);

/// Fill in length and latest start from the visits.
void finish_route(
  Route& route,
  const Instance& inst,
  const PathTable& table,
  const PathCombination& paths);

struct RouterResult
{
  /// Sat with a vehicle-minimal route set, Unsat when no route set exists,
  /// Timeout when the limits ran out. A Timeout may still carry a valid but
  /// possibly non-minimal route set.
  backend::Status status = backend::Status::Timeout;
  std::optional<RouteSet> routes;
};

/// Split all regular tasks into depot-to-depot routes that respect time
/// windows, precedence, job contiguity and the operating range, with a
/// vehicle eligible for every job on each route, using as few
/// routes as possible and differing from every route set in `previous`.
RouterResult router(
  const Instance& inst,
  const PathTable& table,
  const PathCombination& paths,
  const PreviousRoutes& previous,
  const backend::Limits& limits = {});

} // namespace comsat

#endif // COMSAT__ROUTER_HPP
