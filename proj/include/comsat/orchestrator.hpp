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

#ifndef COMSAT__ORCHESTRATOR_HPP
#define COMSAT__ORCHESTRATOR_HPP

#include <comsat/validator.hpp>

namespace comsat {

//==============================================================================
enum class SolveStatus
{
  Sat,
  Unsat,
  /// A cap or a timeout stopped the search before it could conclude.
  Unknown
};

const char* to_string(SolveStatus status);

struct SolverConfig
{
  /// Candidate paths per pair of task locations.
  std::size_t max_paths = 10;
  /// Route sets tried per path combination before moving to the next one.
  std::size_t max_route_iters = 10;
  /// Path combinations tried in total. Zero means no limit.
  std::size_t max_path_iters = 0;
  /// Seconds allowed for a single call to any stage.
  double stage_timeout = 60.0;
  /// Seconds allowed for the whole solve.
  double timeout = 300.0;
  bool strict_pairwise_edges = false;
};

struct StageStats
{
  std::size_t calls = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t timeouts = 0;
  double seconds = 0.0;
};

struct SolveStats
{
  StageStats paths;
  StageStats pathfinder;
  StageStats router;
  StageStats assigner;
  StageStats scheduler;
  StageStats validator;

  /// Route sets produced by the router across all path combinations.
  std::size_t router_iterations = 0;
  /// Route sets produced for the combination that was tried last.
  std::size_t last_combination_iterations = 0;
  std::size_t combinations = 0;
  /// The routing relaxation over shortest paths, run once before the loop.
  std::string relaxation = "not-run";
  /// Why the search ended.
  std::string stop_reason;
  double total_seconds = 0.0;
};

struct SolveResult
{
  SolveStatus status = SolveStatus::Unknown;
  /// Present when Sat.
  std::optional<Schedule> schedule;
  std::optional<Assignment> assignment;
  std::optional<RouteSet> routes;
  SolveStats stats;
};

/// Thrown when a schedule that the stages agreed on fails validation.
class InternalError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Search path combinations, route sets, assignments and schedules in turn,
/// falling back to the router whenever assignment or scheduling fails.
///
/// Unsat is reported only when, over the shortest paths between every pair
/// of locations, either no route set exists or every route set has been
/// enumerated and none can be given vehicles and start times. Every Sat
/// schedule has passed validate().
SolveResult solve(const Instance& inst, const SolverConfig& config = {});

} // namespace comsat

#endif // COMSAT__ORCHESTRATOR_HPP
