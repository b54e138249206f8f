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

#ifndef COMSAT__ASSIGNER_HPP
#define COMSAT__ASSIGNER_HPP

#include <comsat/router.hpp>

namespace comsat {

//==============================================================================
struct RouteAssignment
{
  /// Index into RouteSet::routes.
  std::size_t route;
  VehicleId vehicle;
  Time start;
  Time end;

  bool operator==(const RouteAssignment&) const = default;
};

/// One entry per route, in route order.
struct Assignment
{
  std::vector<RouteAssignment> assignments;

  bool operator==(const Assignment&) const = default;
};

/// Vehicles eligible for every job on the route, sorted.
std::vector<VehicleId> eligible_vehicles(const Instance& inst, const Route& route);

/// Minimum idle time at the depot before a route of `length` may start, so
/// the battery recovers the charge it will use.
Time recharge_time(const Instance& inst, Distance length);

struct AssignResult
{
  /// Sat with an assignment, Unsat when none exists, Timeout when the limits
  /// ran out.
  backend::Status status = backend::Status::Timeout;
  std::optional<Assignment> assignment;
};

/// Give every route an eligible vehicle and a start time no later than its
/// latest start, keeping routes of the same vehicle apart by their driving
/// and recharging time.
AssignResult assign(
  const Instance& inst,
  const RouteSet& routes,
  const backend::Limits& limits = {});

} // namespace comsat

#endif // COMSAT__ASSIGNER_HPP
