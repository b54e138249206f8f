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

#include <comsat/router.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace comsat {

using namespace backend;

//==============================================================================
std::vector<JobId> Route::jobs() const
{
  std::vector<JobId> out;
  for (const auto& v : visits)
  {
    if (v.job == kStartJob || v.job == kEndJob)
      continue;
    if (out.empty() || out.back() != v.job)
      out.push_back(v.job);
  }
  return out;
}

//==============================================================================
Distance travel_distance(
  const PathTable& table,
  const PathCombination& paths,
  NodeId from,
  NodeId to)
{
  if (from == to)
    return 0;
  return paths.path(table, {from, to}).length;
}

//==============================================================================
std::vector<Distance> cumulative_distances(
  const Route& route,
  const PathTable& table,
  const PathCombination& paths)
{
  std::vector<Distance> out;
  Distance total = 0;
  for (std::size_t i = 0; i < route.visits.size(); ++i)
  {
    if (i > 0)
    {
      total += travel_distance(
        table, paths, route.visits[i - 1].location, route.visits[i].location);
    }
    out.push_back(total);
  }
  return out;
}

//==============================================================================
void finish_route(
  Route& route,
  const Instance& inst,
  const PathTable& table,
  const PathCombination& paths)
{
  const auto dist = cumulative_distances(route, table, paths);
  route.length = dist.empty() ? 0 : dist.back();
  route.latest_start = inst.horizon - route.length;
  for (std::size_t i = 0; i < route.visits.size(); ++i)
  {
    const auto& v = route.visits[i];
    const auto& task = inst.job(v.job).task(v.task);
    route.latest_start = std::min(route.latest_start, task.window_hi - dist[i]);
  }
}

namespace {

/// Orderings of a job's tasks in which every task follows its predecessors.
std::vector<std::vector<std::size_t>> precedence_orders(const Job& job)
{
  std::vector<std::size_t> order(job.tasks.size());
  std::iota(order.begin(), order.end(), 0);
  auto position = [&](const TaskId& id)
    {
      for (std::size_t i = 0; i < job.tasks.size(); ++i)
      {
        if (job.tasks[i].id == id)
          return i;
      }
      return job.tasks.size();
    };

  std::vector<std::vector<std::size_t>> out;
  do
  {
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      rank[order[i]] = i;
    bool ok = true;
    for (std::size_t k = 0; k < job.tasks.size() && ok; ++k)
    {
      for (const auto& p : job.tasks[k].predecessors)
        ok = ok && rank[position(p)] < rank[k];
    }
    if (ok)
      out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

constexpr std::size_t kMaxEnumeratedTasks = 4;

} // anonymous namespace

//==============================================================================
RouterResult router(
  const Instance& inst,
  const PathTable& table,
  const PathCombination& paths,
  const PreviousRoutes& previous,
  const Limits& limits)
{
  // Task indexing: start first, regular tasks in job order, end last.
  std::vector<const Task*> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> job_span;
  for (const auto& j : inst.jobs)
  {
    job_span.push_back({tasks.size(), tasks.size() + j.tasks.size()});
    for (const auto& t : j.tasks)
      tasks.push_back(&t);
  }
  const std::size_t n = tasks.size();
  const std::size_t start = 0;
  const std::size_t end = n - 1;

  std::vector<std::vector<Distance>> dist(n, std::vector<Distance>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
  {
    for (std::size_t b = 0; b < n; ++b)
    {
      dist[a][b] = travel_distance(
        table, paths, tasks[a]->location, tasks[b]->location);
    }
  }

  const auto& fleet = inst.fleet;
  const std::int64_t charge_den = fleet.discharge_coeff.den;
  const std::int64_t charge_num = fleet.discharge_coeff.num;
  const std::int64_t full_charge = charge_den * fleet.operating_range;

  // Job of each task, as an index into inst.jobs.
  std::vector<std::size_t> job_of(n);
  for (std::size_t j = 0; j < job_span.size(); ++j)
  {
    for (std::size_t i = job_span[j].first; i < job_span[j].second; ++i)
      job_of[i] = j;
  }

  auto eligible = [&](std::size_t j, const VehicleId& v)
    {
      const auto& e = inst.jobs[j].eligible;
      return std::find(e.begin(), e.end(), v) != e.end();
    };
  auto compatible = [&](std::size_t a, std::size_t b)
    {
      const auto ja = job_of[a];
      const auto jb = job_of[b];
      if (ja == jb || inst.jobs[ja].synthetic() || inst.jobs[jb].synthetic())
        return true;
      for (const auto& v : fleet.vehicles)
      {
        if (eligible(ja, v) && eligible(jb, v))
          return true;
      }
      return false;
    };

  Model model;
  std::vector<std::vector<std::optional<BoolVar>>> dir(
    n, std::vector<std::optional<BoolVar>>(n));

  auto name = [&](std::size_t i)
    {
      return tasks[i]->job + "." + tasks[i]->id;
    };

  auto make_arc = [&](std::size_t a, std::size_t b)
    {
      dir[a][b] = model.new_bool("dir_" + name(a) + "_" + name(b));
    };

  // Arcs out of regular tasks, nearest successors first, so that the first
  // descent follows a nearest-neighbour tour.
  for (std::size_t a = 1; a < end; ++a)
  {
    std::vector<std::size_t> successors;
    for (std::size_t b = 1; b < end; ++b)
    {
      if (a != b)
        successors.push_back(b);
    }
    std::stable_sort(successors.begin(), successors.end(),
      [&](std::size_t x, std::size_t y) { return dist[a][x] < dist[a][y]; });
    for (auto b : successors)
    {
      if (compatible(a, b))
        make_arc(a, b);
    }
    make_arc(a, end);
  }
  for (std::size_t b = 1; b < end; ++b)
    make_arc(start, b);

  std::vector<IntVar> arrival;
  std::vector<IntVar> charge;
  for (std::size_t i = 0; i < n; ++i)
  {
    arrival.push_back(model.new_int(
        tasks[i]->window_lo, tasks[i]->window_hi, "cs_" + name(i)));
    const std::int64_t lo = i == start ? full_charge : 0;
    charge.push_back(model.new_int(lo, full_charge, "rc_" + name(i)));
  }

  // Travel times, discharge and subtour exclusion along each arc. Arcs
  // between tasks at the same place cost nothing, so they get an explicit
  // ordering position.
  std::vector<std::optional<IntVar>> position(n);
  auto ordering = [&](std::size_t i)
    {
      if (!position[i])
      {
        position[i] = model.new_int(
          0, static_cast<std::int64_t>(n), "pos_" + name(i));
      }
      return *position[i];
    };

  for (std::size_t a = 0; a < n; ++a)
  {
    for (std::size_t b = 0; b < n; ++b)
    {
      if (!dir[a][b])
        continue;
      const Literal arc = *dir[a][b];
      model.add(implies(arc,
        LinearExpr(arrival[b]) >= LinearExpr(arrival[a]) + dist[a][b]));
      model.add(implies(arc,
        LinearExpr(charge[b]) <= LinearExpr(charge[a]) - charge_num * dist[a][b]));
      if (dist[a][b] == 0 && a != start && b != end)
        model.add(implies(arc, LinearExpr(ordering(b)) >= LinearExpr(ordering(a)) + 1));
    }
  }

  // Every regular task is left once and entered once; as many routes leave
  // the start as arrive at the end.
  LinearExpr departures;
  LinearExpr returns;
  for (std::size_t i = 1; i < end; ++i)
  {
    std::vector<Literal> out;
    std::vector<Literal> in;
    for (std::size_t k = 0; k < n; ++k)
    {
      if (dir[i][k])
        out.push_back(*dir[i][k]);
      if (dir[k][i])
        in.push_back(*dir[k][i]);
    }
    model.add(exactly_one(out));
    model.add(exactly_one(in));
    departures += LinearExpr(*dir[start][i]);
    returns += LinearExpr(*dir[i][end]);
  }
  model.add(departures == returns);

  // Tasks of one job run back to back, predecessors first.
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
  {
    const auto& job = inst.jobs[j];
    if (job.synthetic())
      continue;
    const auto [first, last] = job_span[j];
    auto index_of = [&](const TaskId& id)
      {
        for (std::size_t i = first; i < last; ++i)
        {
          if (tasks[i]->id == id)
            return i;
        }
        throw std::logic_error("unknown task " + id);
      };

    for (std::size_t k = first; k < last; ++k)
    {
      for (const auto& p : tasks[k]->predecessors)
        model.add(LinearExpr(arrival[k]) >= LinearExpr(arrival[index_of(p)]));
    }

    const std::size_t size = last - first;
    if (size < 2)
      continue;

    if (size <= kMaxEnumeratedTasks)
    {
      const auto orders = precedence_orders(job);
      std::vector<Literal> choices;
      for (std::size_t m = 0; m < orders.size(); ++m)
      {
        const auto sel = model.new_bool("order_" + job.id + "_" + std::to_string(m));
        choices.push_back(sel);
        for (std::size_t i = 0; i + 1 < orders[m].size(); ++i)
        {
          const auto& arc = dir[first + orders[m][i]][first + orders[m][i + 1]];
          model.add(Clause{{!Literal(sel), *arc}});
        }
      }
      model.add(exactly_one(choices));
    }
    else
    {
      std::vector<Literal> internal;
      for (std::size_t a = first; a < last; ++a)
      {
        for (std::size_t b = first; b < last; ++b)
        {
          if (a == b)
            continue;
          internal.push_back(*dir[a][b]);
          model.add(implies(*dir[a][b],
            LinearExpr(ordering(b)) >= LinearExpr(ordering(a)) + 1));
        }
      }
      model.add(exactly_n(internal, static_cast<std::int64_t>(size) - 1));
      for (std::size_t k = first; k < last; ++k)
      {
        for (const auto& p : tasks[k]->predecessors)
        {
          model.add(LinearExpr(ordering(k))
            >= LinearExpr(ordering(index_of(p))) + 1);
        }
      }
    }
  }

  // A route is driven by one vehicle, so the jobs along it need a vehicle
  // they all accept. serves[j][v] marks the vehicles left for job j.
  std::vector<std::map<VehicleId, BoolVar>> serves(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
  {
    if (inst.jobs[j].synthetic())
      continue;
    std::vector<Literal> any;
    for (const auto& v : fleet.vehicles)
    {
      if (!eligible(j, v))
        continue;
      const auto var = model.new_bool("serves_" + inst.jobs[j].id + "_" + v);
      serves[j][v] = var;
      any.push_back(var);
    }
    model.add(any_of(any));
  }
  for (std::size_t a = 1; a < end; ++a)
  {
    for (std::size_t b = 1; b < end; ++b)
    {
      if (!dir[a][b] || job_of[a] == job_of[b])
        continue;
      const Literal arc = *dir[a][b];
      const auto& from = serves[job_of[a]];
      const auto& to = serves[job_of[b]];
      for (const auto& v : fleet.vehicles)
      {
        const auto x = from.find(v);
        const auto y = to.find(v);
        if (x != from.end() && y != to.end())
        {
          model.add(Clause{{!arc, !Literal(x->second), y->second}});
          model.add(Clause{{!arc, !Literal(y->second), x->second}});
        }
        else if (x != from.end())
          model.add(Clause{{!arc, !Literal(x->second)}});
        else if (y != to.end())
          model.add(Clause{{!arc, !Literal(y->second)}});
      }
    }
  }

  // Exclude earlier route sets.
  auto task_index = [&](const Visit& v) -> std::size_t
    {
      for (std::size_t i = 0; i < n; ++i)
      {
        if (tasks[i]->job == v.job && tasks[i]->id == v.task)
          return i;
      }
      throw std::logic_error("route visits unknown task " + v.job + "." + v.task);
    };
  for (const auto& set : previous.history)
  {
    std::vector<Literal> differs;
    for (const auto& r : set.routes)
    {
      for (std::size_t i = 0; i + 1 < r.visits.size(); ++i)
      {
        const auto& arc = dir[task_index(r.visits[i])][task_index(r.visits[i + 1])];
        if (!arc)
          throw std::logic_error("previous route uses a forbidden arc");
        differs.push_back(!Literal(*arc));
      }
    }
    model.add(any_of(differs));
  }

  model.minimize(departures);

  const auto result = check_minimize(model, limits);
  RouterResult out;
  out.status = result.status;
  if (!result.solution)
    return out;

  const auto& solution = *result.solution;
  auto successor = [&](std::size_t a) -> std::optional<std::size_t>
    {
      for (std::size_t b = 0; b < n; ++b)
      {
        if (dir[a][b] && solution.value(*dir[a][b]))
          return b;
      }
      return std::nullopt;
    };

  auto visit = [&](std::size_t i, Time t)
    {
      return Visit{tasks[i]->job, tasks[i]->id, tasks[i]->location, t};
    };

  RouteSet routes;
  std::vector<char> seen(n, 0);
  for (std::size_t b = 1; b < end; ++b)
  {
    if (!solution.value(*dir[start][b]))
      continue;
    Route route;
    route.visits.push_back(visit(start, 0));
    std::size_t at = b;
    while (at != end)
    {
      if (seen[at])
        throw std::logic_error("routing model produced a cycle");
      seen[at] = 1;
      route.visits.push_back(visit(at, solution.value(arrival[at])));
      const auto next = successor(at);
      if (!next)
        throw std::logic_error("routing model left a task without successor");
      if (*next == end)
      {
        route.visits.push_back(visit(end, route.visits.back().arrival + dist[at][end]));
      }
      at = *next;
    }
    finish_route(route, inst, table, paths);
    routes.routes.push_back(std::move(route));
  }

  for (std::size_t i = 1; i < end; ++i)
  {
    if (!seen[i])
      throw std::logic_error("routing model produced a subtour away from the depot");
  }

  out.routes = std::move(routes);
  return out;
}

} // namespace comsat
