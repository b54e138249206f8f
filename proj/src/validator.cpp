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

#include <comsat/validator.hpp>

#include <algorithm>

namespace comsat {

//==============================================================================
const char* to_string(ViolationKind kind)
{
  switch (kind)
  {
    case ViolationKind::Window: return "window";
    case ViolationKind::NodeCapacity: return "node-capacity";
    case ViolationKind::EdgeCapacity: return "edge-capacity";
    case ViolationKind::Swap: return "swap";
    case ViolationKind::Charge: return "charge";
    case ViolationKind::Eligibility: return "eligibility";
    case ViolationKind::Continuity: return "continuity";
    case ViolationKind::Precedence: return "precedence";
    case ViolationKind::Coverage: return "coverage";
    case ViolationKind::Horizon: return "horizon";
  }
  return "unknown";
}

//==============================================================================
std::size_t ValidationReport::count(ViolationKind kind) const
{
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(),
      [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

//==============================================================================
std::string trace_name(const ScheduledTrace& t)
{
  return "route " + std::to_string(t.route) + " (" + t.vehicle + ")";
}

const Job* find_job(const Instance& inst, const JobId& id)
{
  for (const auto& j : inst.jobs)
  {
    if (j.id == id)
      return &j;
  }
  return nullptr;
}

void check_structure(
  const Instance& inst, const Schedule& schedule, const Assignment& assignment)
{
  const auto& fleet = inst.fleet.vehicles;
  std::set<std::size_t> routes;
  for (const auto& t : schedule.traces)
  {
    if (!routes.insert(t.route).second)
      throw StructuralError("route " + std::to_string(t.route) + " appears twice");
    if (std::find(fleet.begin(), fleet.end(), t.vehicle) == fleet.end())
      throw StructuralError("unknown vehicle " + t.vehicle);
    if (t.nodes.empty())
      throw StructuralError(trace_name(t) + " has no nodes");
    if (t.edges.size() + 1 != t.nodes.size())
      throw StructuralError(trace_name(t) + " needs one edge fewer than nodes");
    for (const auto& n : t.nodes)
    {
      if (!inst.graph.has_node(n.node))
        throw StructuralError("unknown node " + std::to_string(n.node));
    }
    for (const auto& v : t.visits)
    {
      const auto* job = find_job(inst, v.job);
      if (!job)
        throw StructuralError("unknown job " + v.job);
      if (std::none_of(job->tasks.begin(), job->tasks.end(),
        [&](const Task& k) { return k.id == v.task; }))
      {
        throw StructuralError("job " + v.job + " has no task " + v.task);
      }
      if (v.position >= t.nodes.size())
        throw StructuralError(trace_name(t) + " visit position out of range");
    }
  }

  std::set<std::size_t> assigned;
  for (const auto& a : assignment.assignments)
  {
    if (!assigned.insert(a.route).second)
      throw StructuralError("route " + std::to_string(a.route) + " assigned twice");
    if (!routes.count(a.route))
      throw StructuralError("assigned route " + std::to_string(a.route) + " has no trace");
  }
  if (assigned != routes)
    throw StructuralError("some traces have no assignment");
}

} // anonymous namespace

//==============================================================================
ValidationReport validate(
  const Instance& inst,
  const Schedule& schedule,
  const Assignment& assignment)
{
  check_structure(inst, schedule, assignment);

  ValidationReport report;
  auto flag = [&](ViolationKind kind, Time t, std::string what)
    {
      report.violations.push_back({kind, t, std::move(what)});
    };

  const NodeId depot = inst.graph.depot();
  const auto& fleet = inst.fleet;

  std::map<std::size_t, const RouteAssignment*> by_route;
  for (const auto& a : assignment.assignments)
    by_route[a.route] = &a;

  // Continuity, horizon and distance per trace.
  std::vector<Distance> distance(schedule.traces.size(), 0);
  for (std::size_t r = 0; r < schedule.traces.size(); ++r)
  {
    const auto& t = schedule.traces[r];
    const auto name = trace_name(t);
    if (t.nodes.front().node != depot || t.nodes.back().node != depot)
      flag(ViolationKind::Continuity, t.nodes.front().t, name + " does not start and end at the depot");

    for (std::size_t i = 0; i < t.edges.size(); ++i)
    {
      const auto& e = t.edges[i];
      const auto* edge = inst.graph.find_edge(e.u, e.v);
      if (!edge || e.u != t.nodes[i].node || e.v != t.nodes[i + 1].node)
      {
        flag(ViolationKind::Continuity, e.t,
          name + " moves " + std::to_string(t.nodes[i].node) + " -> "
          + std::to_string(t.nodes[i + 1].node) + " without a matching edge");
        continue;
      }
      distance[r] += edge->length;
      if (e.t < t.nodes[i].t)
        flag(ViolationKind::Continuity, e.t, name + " leaves a node before entering it");
      if (t.nodes[i + 1].t != e.t + edge->length)
        flag(ViolationKind::Continuity, e.t, name + " edge traversal time differs from its length");
    }

    for (const auto& n : t.nodes)
    {
      if (n.t < 0 || n.t > inst.horizon)
        flag(ViolationKind::Horizon, n.t, name + " outside [0, horizon]");
    }

    const auto& a = *by_route.at(t.route);
    if (a.vehicle != t.vehicle)
      flag(ViolationKind::Eligibility, t.nodes.front().t, name + " driven by a vehicle other than the assigned one");
    if (t.nodes.front().t < a.start)
      flag(ViolationKind::Continuity, t.nodes.front().t, name + " leaves before its assigned start");

    // Discharge along the trace never exceeds the operating range.
    const auto& D = fleet.discharge_coeff;
    if (D.num * distance[r] > D.den * fleet.operating_range)
      flag(ViolationKind::Charge, t.nodes.back().t, name + " exceeds the operating range");
  }

  // Recharging between consecutive routes of one vehicle.
  std::map<VehicleId, std::vector<std::size_t>> by_vehicle;
  for (std::size_t r = 0; r < schedule.traces.size(); ++r)
    by_vehicle[schedule.traces[r].vehicle].push_back(r);
  for (auto& [vehicle, list] : by_vehicle)
  {
    std::sort(list.begin(), list.end(),
      [&](std::size_t a, std::size_t b)
      {
        return schedule.traces[a].nodes.front().t < schedule.traces[b].nodes.front().t;
      });
    for (std::size_t k = 1; k < list.size(); ++k)
    {
      const auto& prev = schedule.traces[list[k - 1]];
      const auto& next = schedule.traces[list[k]];
      const auto& C = fleet.charge_coeff;
      const Time back = prev.nodes.back().t;
      const Time leave = next.nodes.front().t;
      if (C.den * leave < C.den * back + C.num * distance[list[k]])
      {
        flag(ViolationKind::Charge, leave,
          vehicle + " starts " + trace_name(next) + " without recharging");
      }
    }
  }

  // Tasks: coverage, windows, eligibility, job contiguity and precedence.
  struct Seen
  {
    std::size_t trace;
    std::size_t order;
    std::size_t position;
  };
  std::map<std::pair<JobId, TaskId>, std::vector<Seen>> seen;
  for (std::size_t r = 0; r < schedule.traces.size(); ++r)
  {
    const auto& t = schedule.traces[r];
    for (std::size_t k = 0; k < t.visits.size(); ++k)
    {
      const auto& v = t.visits[k];
      seen[{v.job, v.task}].push_back({r, k, v.position});
      if (k > 0 && t.visits[k].position < t.visits[k - 1].position)
        flag(ViolationKind::Continuity, t.nodes[v.position].t, trace_name(t) + " lists visits out of order");

      const auto& task = inst.job(v.job).task(v.task);
      const auto& at = t.nodes[v.position];
      if (at.node != task.location)
      {
        flag(ViolationKind::Continuity, at.t,
          "task " + v.job + "." + v.task + " served away from its location");
      }
      if (at.t < task.window_lo || at.t > task.window_hi)
      {
        flag(ViolationKind::Window, at.t,
          "task " + v.job + "." + v.task + " served at " + std::to_string(at.t)
          + " outside [" + std::to_string(task.window_lo) + ", "
          + std::to_string(task.window_hi) + "]");
      }
      const auto& eligible = inst.job(v.job).eligible;
      if (std::find(eligible.begin(), eligible.end(), t.vehicle) == eligible.end())
        flag(ViolationKind::Eligibility, at.t, t.vehicle + " may not serve job " + v.job);
    }

    // Jobs are served without interleaving.
    std::set<JobId> closed;
    for (std::size_t k = 0; k < t.visits.size(); ++k)
    {
      const auto& job = t.visits[k].job;
      if (k > 0 && t.visits[k - 1].job != job)
      {
        closed.insert(t.visits[k - 1].job);
        if (closed.count(job))
        {
          flag(ViolationKind::Precedence, t.nodes[t.visits[k].position].t,
            "job " + job + " interleaved with another job");
        }
      }
    }
  }

  for (const auto& job : inst.regular_jobs())
  {
    std::set<std::size_t> traces_used;
    for (const auto& task : job.tasks)
    {
      const auto it = seen.find({job.id, task.id});
      const std::size_t times = it == seen.end() ? 0 : it->second.size();
      if (times != 1)
      {
        flag(ViolationKind::Coverage, 0,
          "task " + job.id + "." + task.id + " served " + std::to_string(times) + " times");
        continue;
      }
      traces_used.insert(it->second.front().trace);
      const auto& self = it->second.front();
      for (const auto& p : task.predecessors)
      {
        const auto pit = seen.find({job.id, p});
        if (pit == seen.end() || pit->second.size() != 1)
          continue;
        const auto& pred = pit->second.front();
        if (pred.trace != self.trace || pred.order >= self.order)
        {
          flag(ViolationKind::Precedence, 0,
            "task " + job.id + "." + p + " must come before " + job.id + "." + task.id);
        }
      }
    }
    if (traces_used.size() > 1)
      flag(ViolationKind::Precedence, 0, "job " + job.id + " split across routes");
  }

  // Step-by-step occupancy of nodes and edges.
  Time last = 0;
  for (const auto& t : schedule.traces)
    last = std::max(last, t.nodes.back().t);

  for (Time now = 0; now <= last; ++now)
  {
    std::map<NodeId, std::set<VehicleId>> nodes;
    std::map<std::pair<NodeId, NodeId>, std::set<VehicleId>> edges;
    for (const auto& t : schedule.traces)
    {
      if (now < t.nodes.front().t || now > t.nodes.back().t)
        continue;
      for (std::size_t i = 0; i < t.nodes.size(); ++i)
      {
        const Time leave = i < t.edges.size() ? t.edges[i].t : t.nodes[i].t;
        if (t.nodes[i].t <= now && now <= leave)
          nodes[t.nodes[i].node].insert(t.vehicle);
      }
      for (std::size_t i = 0; i < t.edges.size(); ++i)
      {
        const auto* edge = inst.graph.find_edge(t.edges[i].u, t.edges[i].v);
        if (!edge)
          continue;
        if (t.edges[i].t <= now && now < t.edges[i].t + edge->length)
          edges[{edge->source, edge->sink}].insert(t.vehicle);
      }
    }

    for (const auto& [n, vs] : nodes)
    {
      if (n != depot && static_cast<std::int64_t>(vs.size()) > inst.graph.node_capacity(n))
      {
        flag(ViolationKind::NodeCapacity, now,
          "node " + std::to_string(n) + " holds " + std::to_string(vs.size()) + " vehicles");
      }
    }
    for (const auto& [key, vs] : edges)
    {
      const auto* edge = inst.graph.find_edge(key.first, key.second);
      if (static_cast<std::int64_t>(vs.size()) > edge->capacity)
      {
        flag(ViolationKind::EdgeCapacity, now,
          "edge " + std::to_string(key.first) + "->" + std::to_string(key.second)
          + " holds " + std::to_string(vs.size()) + " vehicles");
      }
      if (key.first < key.second)
      {
        const auto back = edges.find({key.second, key.first});
        if (back == edges.end())
          continue;
        std::set<VehicleId> all = vs;
        all.insert(back->second.begin(), back->second.end());
        if (all.size() > 1)
        {
          flag(ViolationKind::Swap, now,
            "vehicles pass head-on between " + std::to_string(key.first)
            + " and " + std::to_string(key.second));
        }
        const auto* reverse = inst.graph.find_edge(key.second, key.first);
        const auto shared = std::min(edge->capacity, reverse->capacity);
        if (static_cast<std::int64_t>(all.size()) > shared)
        {
          flag(ViolationKind::EdgeCapacity, now,
            "segment " + std::to_string(key.first) + "-" + std::to_string(key.second)
            + " holds " + std::to_string(all.size()) + " vehicles in both directions");
        }
      }
    }
  }

  return report;
}

} // namespace comsat
