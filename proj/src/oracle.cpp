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

#include <comsat/oracle.hpp>

#include <algorithm>
#include <string>
#include <unordered_set>

namespace comsat {

//==============================================================================
const char* to_string(Feasibility f)
{
  return f == Feasibility::Feasible ? "feasible" : "infeasible";
}

namespace {

//==============================================================================
struct Vehicle
{
  /// Node slot when `edge` is negative, otherwise the edge being traversed.
  int node = 0;
  int edge = -1;
  /// Steps already spent on the edge.
  int elapsed = 0;
  int open_job = -1;
  /// Away on a route that has not been closed at the depot yet.
  bool in_route = false;
  /// Distance driven on the current route.
  std::int64_t driven = 0;
  /// Steps waited at the depot since the last route closed, capped.
  std::int64_t idle = 0;
};

struct State
{
  Time t = 0;
  std::uint32_t served = 0;
  std::vector<Vehicle> vehicles;

  std::string key() const
  {
    std::string k;
    auto put = [&](std::int64_t x) { k.append(reinterpret_cast<const char*>(&x), sizeof(x)); };
    put(t);
    put(served);
    for (const auto& v : vehicles)
    {
      put(v.node);
      put(v.edge);
      put(v.elapsed);
      put(v.open_job);
      put(v.in_route);
      put(v.driven);
      put(v.idle);
    }
    return k;
  }
};

struct TaskInfo
{
  int job;
  int slot;
  Time lo;
  Time hi;
  std::uint32_t predecessors = 0;
};

//==============================================================================
class Search
{
public:
  Search(const Instance& inst, const OracleCaps& caps)
  : _inst(inst),
    _caps(caps)
  {
    const auto& nodes = inst.graph.nodes();
    auto slot = [&](NodeId n)
      {
        return static_cast<int>(
          std::lower_bound(nodes.begin(), nodes.end(), n) - nodes.begin());
      };
    _depot = slot(inst.graph.depot());
    for (const auto& e : inst.graph.edges())
      _sink.push_back(slot(e.sink));
    for (NodeId n : nodes)
      _node_cap.push_back(inst.graph.node_capacity(n));

    const auto jobs = inst.regular_jobs();
    for (std::size_t j = 0; j < jobs.size(); ++j)
    {
      std::uint32_t mask = 0;
      const std::size_t first = _tasks.size();
      for (const auto& k : jobs[j].tasks)
      {
        mask |= 1u << _tasks.size();
        _tasks.push_back({static_cast<int>(j), slot(k.location), k.window_lo, k.window_hi, 0});
      }
      for (std::size_t i = 0; i < jobs[j].tasks.size(); ++i)
      {
        for (const auto& p : jobs[j].tasks[i].predecessors)
        {
          for (std::size_t q = 0; q < jobs[j].tasks.size(); ++q)
          {
            if (jobs[j].tasks[q].id == p)
              _tasks[first + i].predecessors |= 1u << (first + q);
          }
        }
      }
      _job_mask.push_back(mask);
      std::vector<char> eligible;
      for (const auto& v : inst.fleet.vehicles)
      {
        const auto& e = jobs[j].eligible;
        eligible.push_back(std::find(e.begin(), e.end(), v) != e.end());
      }
      _eligible.push_back(std::move(eligible));
    }
    _all = _tasks.empty() ? 0 : (std::uint32_t{1} << _tasks.size()) - 1;

    // A route of length L drains D * L of the operating range, and may only
    // leave after C * L steps of waiting since the previous route closed.
    const auto& d = inst.fleet.discharge_coeff;
    _charge = inst.fleet.charge_coeff;
    _max_route = inst.fleet.operating_range * d.den / d.num;
    _max_idle = (_charge.num * _max_route + _charge.den - 1) / _charge.den;
  }

  bool run()
  {
    State s;
    // The first route of each vehicle needs no waiting.
    s.vehicles.assign(
      _inst.fleet.vehicles.size(), Vehicle{_depot, -1, 0, -1, false, 0, _max_idle});
    return visit(s);
  }

private:
  bool done(const State& s) const
  {
    if (s.served != _all)
      return false;
    return std::all_of(s.vehicles.begin(), s.vehicles.end(),
      [&](const Vehicle& v)
      {
        return v.edge < 0 && v.node == _depot && v.open_job < 0 && !v.in_route;
      });
  }

  bool visit(const State& s)
  {
    if (done(s))
      return true;
    for (std::size_t k = 0; k < _tasks.size(); ++k)
    {
      if (!(s.served >> k & 1) && _tasks[k].hi < s.t)
        return false;
    }
    if (!_seen.insert(s.key()).second)
      return false;
    if (_seen.size() > _caps.max_states)
      throw OracleRefused("state budget exceeded");

    // Serve one task, then look again at the same time step.
    for (std::size_t v = 0; v < s.vehicles.size(); ++v)
    {
      const auto& veh = s.vehicles[v];
      if (veh.edge >= 0)
        continue;
      for (std::size_t k = 0; k < _tasks.size(); ++k)
      {
        const auto& task = _tasks[k];
        if (s.served >> k & 1 || task.slot != veh.node)
          continue;
        if (s.t < task.lo || s.t > task.hi)
          continue;
        if ((s.served & task.predecessors) != task.predecessors)
          continue;
        if (veh.open_job >= 0 && veh.open_job != task.job)
          continue;
        if (veh.open_job < 0)
        {
          if (s.served & _job_mask[task.job] || !_eligible[task.job][v])
            continue;
        }
        State next = s;
        next.served |= 1u << k;
        const bool complete =
          (next.served & _job_mask[task.job]) == _job_mask[task.job];
        next.vehicles[v].open_job = complete ? -1 : task.job;
        if (visit(next))
          return true;
      }
    }

    // Close a route on the way through the depot.
    for (std::size_t v = 0; v < s.vehicles.size(); ++v)
    {
      const auto& veh = s.vehicles[v];
      if (veh.edge >= 0 || veh.node != _depot || !veh.in_route || veh.open_job >= 0)
        continue;
      if (_charge.num * veh.driven > _charge.den * veh.idle)
        continue;
      State next = s;
      next.vehicles[v].in_route = false;
      next.vehicles[v].driven = 0;
      next.vehicles[v].idle = 0;
      if (visit(next))
        return true;
    }

    if (s.t >= _inst.horizon)
      return false;

    // Choose a move for every vehicle standing at a node.
    std::vector<int> choice(s.vehicles.size(), -1);
    return advance(s, choice, 0);
  }

  /// choice[v] is -1 to wait, or the edge to leave by.
  bool advance(const State& s, std::vector<int>& choice, std::size_t v)
  {
    if (v == s.vehicles.size())
      return step(s, choice);

    const auto& veh = s.vehicles[v];
    choice[v] = -1;
    if (advance(s, choice, v + 1))
      return true;
    if (veh.edge >= 0)
      return false;

    const auto& edges = _inst.graph.edges();
    const NodeId here = _inst.graph.nodes()[veh.node];
    for (auto e : _inst.graph.out_edges(here))
    {
      if (veh.driven + edges[e].length > _max_route)
        continue;
      choice[v] = static_cast<int>(e);
      if (advance(s, choice, v + 1))
        return true;
    }
    choice[v] = -1;
    return false;
  }

  bool step(const State& s, const std::vector<int>& choice)
  {
    const auto& edges = _inst.graph.edges();

    // Occupancy at time t.
    std::vector<std::int64_t> at_node(_node_cap.size(), 0);
    std::vector<std::int64_t> on_edge(edges.size(), 0);
    for (std::size_t v = 0; v < s.vehicles.size(); ++v)
    {
      const auto& veh = s.vehicles[v];
      if (veh.edge >= 0)
        ++on_edge[veh.edge];
      else
      {
        ++at_node[veh.node];
        if (choice[v] >= 0)
          ++on_edge[choice[v]];
      }
    }
    for (std::size_t n = 0; n < at_node.size(); ++n)
    {
      if (static_cast<int>(n) != _depot && at_node[n] > _node_cap[n])
        return false;
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
    {
      if (on_edge[e] == 0)
        continue;
      if (on_edge[e] > edges[e].capacity)
        return false;
      const auto* back = _inst.graph.find_edge(edges[e].sink, edges[e].source);
      if (back && on_edge[back - edges.data()] > 0)
        return false;
    }

    State next = s;
    next.t = s.t + 1;
    for (std::size_t v = 0; v < s.vehicles.size(); ++v)
    {
      auto& veh = next.vehicles[v];
      if (veh.edge < 0 && choice[v] < 0)
      {
        if (veh.node == _depot && !veh.in_route)
          veh.idle = std::min(_max_idle, veh.idle + 1);
        continue;
      }
      if (veh.edge < 0)
      {
        veh.edge = choice[v];
        veh.elapsed = 0;
        veh.in_route = true;
        veh.driven += edges[veh.edge].length;
      }
      ++veh.elapsed;
      if (veh.elapsed == edges[veh.edge].length)
      {
        veh.node = _sink[veh.edge];
        veh.edge = -1;
        veh.elapsed = 0;
      }
    }
    return visit(next);
  }

  const Instance& _inst;
  OracleCaps _caps;
  int _depot = 0;
  std::vector<int> _sink;
  std::vector<std::int64_t> _node_cap;
  std::vector<TaskInfo> _tasks;
  std::vector<std::uint32_t> _job_mask;
  std::vector<std::vector<char>> _eligible;
  std::uint32_t _all = 0;
  Rational _charge;
  std::int64_t _max_route = 0;
  std::int64_t _max_idle = 0;
  std::unordered_set<std::string> _seen;
};

} // anonymous namespace

//==============================================================================
Feasibility brute_oracle(const Instance& inst, const OracleCaps& caps)
{
  if (inst.graph.nodes().size() > caps.nodes
    || inst.fleet.vehicles.size() > caps.vehicles
    || inst.regular_jobs().size() > caps.jobs
    || inst.horizon > caps.horizon)
  {
    throw OracleRefused(
      "instance above the exhaustive search caps ("
      + std::to_string(caps.nodes) + " nodes, "
      + std::to_string(caps.vehicles) + " vehicles, "
      + std::to_string(caps.jobs) + " jobs, horizon "
      + std::to_string(caps.horizon) + ")");
  }
  std::size_t tasks = 0;
  for (const auto& j : inst.regular_jobs())
    tasks += j.tasks.size();
  if (tasks > 16)
    throw OracleRefused("too many tasks for exhaustive search");

  Search search(inst, caps);
  return search.run() ? Feasibility::Feasible : Feasibility::Infeasible;
}

} // namespace comsat
