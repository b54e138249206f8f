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

#include <comsat/orchestrator.hpp>

#include <algorithm>
#include <chrono>

namespace comsat {

//==============================================================================
const char* to_string(SolveStatus status)
{
  switch (status)
  {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

//==============================================================================
class Stopwatch
{
public:
  explicit Stopwatch(StageStats& stats)
  : _stats(stats),
    _begin(Clock::now())
  {
    ++_stats.calls;
  }

  ~Stopwatch()
  {
    _stats.seconds +=
      std::chrono::duration<double>(Clock::now() - _begin).count();
  }

  void record(backend::Status status)
  {
    switch (status)
    {
      case backend::Status::Sat: ++_stats.sat; break;
      case backend::Status::Unsat: ++_stats.unsat; break;
      case backend::Status::Timeout: ++_stats.timeouts; break;
    }
  }

private:
  StageStats& _stats;
  Clock::time_point _begin;
};

Clock::duration seconds(double s)
{
  return std::chrono::duration_cast<Clock::duration>(
    std::chrono::duration<double>(std::max(0.0, s)));
}

} // anonymous namespace

//==============================================================================
SolveResult solve(const Instance& inst, const SolverConfig& config)
{
  const auto begin = Clock::now();
  const auto deadline = begin + seconds(config.timeout);
  auto stage = [&]() -> backend::Limits
    {
      return {std::min(deadline, Clock::now() + seconds(config.stage_timeout)), 0};
    };

  SolveResult result;
  auto& stats = result.stats;
  auto finish = [&](SolveStatus status, std::string reason) -> SolveResult
    {
      result.status = status;
      stats.stop_reason = std::move(reason);
      stats.total_seconds =
        std::chrono::duration<double>(Clock::now() - begin).count();
      return std::move(result);
    };

  PathTable table;
  {
    Stopwatch watch(stats.paths);
    table = enumerate_paths(inst, std::max<std::size_t>(config.max_paths, 1));
    watch.record(backend::Status::Sat);
  }

  // Distances over shortest paths are the smallest any combination can give,
  // so if no route set exists here then none exists at all.
  const auto shortest = shortest_combination(table);
  RouterResult relaxed;
  {
    Stopwatch watch(stats.router);
    relaxed = router(inst, table, shortest, {}, stage());
    watch.record(relaxed.status);
  }
  stats.relaxation = backend::to_string(relaxed.status);
  if (relaxed.status == backend::Status::Unsat)
    return finish(SolveStatus::Unsat, "no route set over shortest paths");

  UsedPaths used;
  while (true)
  {
    if (Clock::now() >= deadline)
      return finish(SolveStatus::Unknown, "timeout");
    if (config.max_path_iters > 0 && used.history.size() >= config.max_path_iters)
      return finish(SolveStatus::Unknown, "path combination limit");

    // Shortest paths first, then the pathfinder's combinations in order.
    PathCombination combination = shortest;
    if (!used.history.empty())
    {
      PathfinderResult pf;
      {
        Stopwatch watch(stats.pathfinder);
        pf = pathfinder(table, used, stage());
        watch.record(pf.status);
      }
      if (pf.status == backend::Status::Unsat)
        return finish(SolveStatus::Unknown, "path combinations exhausted");
      if (!pf.combination)
        return finish(SolveStatus::Unknown, "pathfinder timeout");
      combination = *pf.combination;
    }

    used.history.push_back(combination);
    ++stats.combinations;
    stats.last_combination_iterations = 0;

    // Over shortest paths, once every route set is known and none of them can
    // be assigned, no combination can do better: longer paths only make
    // routes later and longer.
    bool refuted = combination == shortest;

    PreviousRoutes previous;
    for (std::size_t it = 0; it < config.max_route_iters; ++it)
    {
      if (Clock::now() >= deadline)
        return finish(SolveStatus::Unknown, "timeout");

      RouterResult routed;
      if (previous.history.empty() && combination == shortest)
      {
        // Same question as the relaxation, already answered.
        routed = relaxed;
      }
      else
      {
        Stopwatch watch(stats.router);
        routed = router(inst, table, combination, previous, stage());
        watch.record(routed.status);
      }
      if (!routed.routes)
      {
        if (refuted && routed.status == backend::Status::Unsat)
          return finish(SolveStatus::Unsat, "no route set over shortest paths can be assigned");
        break;
      }

      const auto& routes = *routed.routes;
      previous.history.push_back(routes);
      ++stats.router_iterations;
      ++stats.last_combination_iterations;

      AssignResult assigned;
      {
        Stopwatch watch(stats.assigner);
        assigned = assign(inst, routes, stage());
        watch.record(assigned.status);
      }
      refuted = refuted && assigned.status == backend::Status::Unsat;
      if (!assigned.assignment)
        continue;

      const auto traces =
        expand_routes(inst, table, combination, routes, *assigned.assignment);
      ScheduleResult scheduled;
      {
        Stopwatch watch(stats.scheduler);
        scheduled = scheduler(
          inst, traces, *assigned.assignment,
          {config.strict_pairwise_edges}, stage());
        watch.record(scheduled.status);
      }
      if (scheduled.status != backend::Status::Sat || !scheduled.schedule)
        continue;

      ValidationReport report;
      {
        Stopwatch watch(stats.validator);
        report = validate(inst, *scheduled.schedule, *assigned.assignment);
        watch.record(
          report.ok() ? backend::Status::Sat : backend::Status::Unsat);
      }
      if (!report.ok())
      {
        const auto& v = report.violations.front();
        throw InternalError(
          std::string("schedule failed validation: ") + to_string(v.kind)
          + " at t=" + std::to_string(v.time) + ": " + v.entities);
      }

      result.schedule = std::move(*scheduled.schedule);
      result.assignment = std::move(*assigned.assignment);
      result.routes = routes;
      return finish(SolveStatus::Sat, "schedule found");
    }
  }
}

} // namespace comsat
