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

#include <comsat/scheduler.hpp>

#include <algorithm>
#include <functional>

namespace comsat {

using namespace backend;

//==============================================================================
Distance RouteTrace::length() const
{
  Distance total = 0;
  for (const auto& e : edges)
    total += e.length;
  return total;
}

//==============================================================================
std::vector<RouteTrace> expand_routes(
  const Instance& inst,
  const PathTable& table,
  const PathCombination& paths,
  const RouteSet& routes,
  const Assignment& assignment)
{
  std::vector<RouteTrace> out;
  for (const auto& entry : assignment.assignments)
  {
    const auto& route = routes.routes.at(entry.route);
    RouteTrace trace;
    trace.route = entry.route;
    trace.vehicle = entry.vehicle;
    trace.start = entry.start;

    auto push_node = [&](NodeId n)
      {
        trace.nodes.push_back(n);
        trace.window_lo.push_back(0);
        trace.window_hi.push_back(inst.horizon);
      };
    push_node(inst.graph.depot());

    for (std::size_t i = 0; i < route.visits.size(); ++i)
    {
      const auto& v = route.visits[i];
      const NodeId at = trace.nodes.back();
      if (at != v.location)
      {
        const auto& path = paths.path(table, {at, v.location});
        for (std::size_t k = 1; k < path.nodes.size(); ++k)
        {
          const auto* e = inst.graph.find_edge(path.nodes[k - 1], path.nodes[k]);
          if (!e)
            throw std::logic_error("selected path leaves the graph");
          trace.edges.push_back(*e);
          push_node(path.nodes[k]);
        }
      }
      if (v.job == kStartJob || v.job == kEndJob)
        continue;

      const auto pos = trace.nodes.size() - 1;
      const auto& task = inst.job(v.job).task(v.task);
      trace.window_lo[pos] = std::max(trace.window_lo[pos], task.window_lo);
      trace.window_hi[pos] = std::min(trace.window_hi[pos], task.window_hi);
      trace.visits.push_back({v.job, v.task, pos});
    }

    if (trace.nodes.back() != inst.graph.depot())
      throw std::logic_error("route does not return to the depot");
    out.push_back(std::move(trace));
  }
  return out;
}

namespace {

//==============================================================================
/// A closed interval of integer time steps during which one vehicle holds a
/// resource.
struct Occupancy
{
  std::size_t trace;
  LinearExpr entry;
  LinearExpr exit;
  /// Static earliest entry, used to order the model.
  Time earliest;
  /// Departure time of an edge traversal, for staggering.
  std::optional<IntVar> departure;
};

struct EdgeKey
{
  NodeId u;
  NodeId v;
  auto operator<=>(const EdgeKey&) const = default;
};

} // anonymous namespace

//==============================================================================
ScheduleResult scheduler(
  const Instance& inst,
  const std::vector<RouteTrace>& traces,
  const Assignment&,
  const SchedulerOptions& options,
  const Limits& limits)
{
  ScheduleResult out;
  const Time horizon = inst.horizon;
  const NodeId depot = inst.graph.depot();

  for (const auto& t : traces)
  {
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
    {
      const auto lo = std::max(t.window_lo[i], t.start);
      if (lo > t.window_hi[i] || lo > horizon)
      {
        out.status = Status::Unsat;
        return out;
      }
    }
  }

  Model model;
  std::vector<std::vector<IntVar>> node_t(traces.size());
  std::vector<std::vector<IntVar>> edge_t(traces.size());
  std::vector<std::vector<Time>> earliest(traces.size());

  for (std::size_t r = 0; r < traces.size(); ++r)
  {
    const auto& t = traces[r];
    const std::string prefix = "r" + std::to_string(t.route) + "_";
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
    {
      node_t[r].push_back(model.new_int(
          std::max(t.window_lo[i], t.start), std::min(t.window_hi[i], horizon),
          prefix + "node_" + std::to_string(i)));
    }
    for (std::size_t i = 0; i < t.edges.size(); ++i)
    {
      edge_t[r].push_back(model.new_int(
          t.start, horizon, prefix + "edge_" + std::to_string(i)));
      model.add(LinearExpr(edge_t[r][i]) >= LinearExpr(node_t[r][i]));
      model.add(LinearExpr(node_t[r][i + 1])
        == LinearExpr(edge_t[r][i]) + t.edges[i].length);
    }

    Time clock = std::max(t.start, t.window_lo[0]);
    earliest[r].push_back(clock);
    for (std::size_t i = 0; i < t.edges.size(); ++i)
    {
      clock = std::max(clock + t.edges[i].length, t.window_lo[i + 1]);
      earliest[r].push_back(clock);
    }
  }

  // Routes of one vehicle follow each other with a recharge in between.
  std::map<VehicleId, std::vector<std::size_t>> by_vehicle;
  for (std::size_t r = 0; r < traces.size(); ++r)
    by_vehicle[traces[r].vehicle].push_back(r);
  for (auto& [vehicle, list] : by_vehicle)
  {
    std::sort(list.begin(), list.end(),
      [&](std::size_t a, std::size_t b)
      {
        return std::pair(traces[a].start, traces[a].route)
        < std::pair(traces[b].start, traces[b].route);
      });
    for (std::size_t k = 1; k < list.size(); ++k)
    {
      const auto prev = list[k - 1];
      const auto next = list[k];
      model.add(LinearExpr(node_t[next].front())
        >= LinearExpr(node_t[prev].back())
        + recharge_time(inst, traces[next].length()));
    }
  }

  // Collect occupancies per resource.
  std::map<NodeId, std::vector<Occupancy>> at_node;
  std::map<EdgeKey, std::vector<Occupancy>> on_edge;
  for (std::size_t r = 0; r < traces.size(); ++r)
  {
    const auto& t = traces[r];
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
    {
      if (t.nodes[i] == depot)
        continue;
      const LinearExpr exit = i < t.edges.size()
        ? LinearExpr(edge_t[r][i]) : LinearExpr(node_t[r][i]);
      at_node[t.nodes[i]].push_back(
        {r, LinearExpr(node_t[r][i]), exit, earliest[r][i], std::nullopt});
    }
    for (std::size_t i = 0; i < t.edges.size(); ++i)
    {
      const auto& e = t.edges[i];
      on_edge[{e.source, e.sink}].push_back(
        {r, LinearExpr(edge_t[r][i]),
         LinearExpr(edge_t[r][i]) + (e.length - 1),
         earliest[r][i], edge_t[r][i]});
    }
  }

  // Separation literals for pairs of occupancies held by different vehicles,
  // created in order of earliest possible use.
  struct Pair
  {
    const Occupancy* a;
    const Occupancy* b;
    bool stagger_only;
  };
  std::vector<Pair> pairs;
  auto different_vehicles = [&](const Occupancy& a, const Occupancy& b)
    {
      return traces[a.trace].vehicle != traces[b.trace].vehicle;
    };

  struct Group
  {
    std::vector<const Occupancy*> members;
    std::int64_t capacity;
  };
  std::vector<Group> groups;

  for (const auto& [node, occ] : at_node)
  {
    Group g{{}, inst.graph.node_capacity(node)};
    for (const auto& o : occ)
      g.members.push_back(&o);
    groups.push_back(std::move(g));
  }
  for (const auto& [key, occ] : on_edge)
  {
    const auto* e = inst.graph.find_edge(key.u, key.v);
    const std::int64_t cap = options.strict_pairwise_edges ? 1 : e->capacity;
    Group g{{}, cap};
    for (const auto& o : occ)
      g.members.push_back(&o);
    groups.push_back(std::move(g));

    // Opposite directions never share the segment.
    if (key.u < key.v)
    {
      const auto back = on_edge.find({key.v, key.u});
      if (back != on_edge.end())
      {
        for (const auto& a : occ)
        {
          for (const auto& b : back->second)
          {
            if (different_vehicles(a, b))
              pairs.push_back({&a, &b, false});
          }
        }
      }
    }

    // Two vehicles never enter the same edge at the same instant.
    if (cap > 1)
    {
      for (std::size_t i = 0; i < occ.size(); ++i)
      {
        for (std::size_t k = i + 1; k < occ.size(); ++k)
        {
          if (different_vehicles(occ[i], occ[k]))
            pairs.push_back({&occ[i], &occ[k], true});
        }
      }
    }
  }

  for (const auto& g : groups)
  {
    for (std::size_t i = 0; i < g.members.size(); ++i)
    {
      for (std::size_t k = i + 1; k < g.members.size(); ++k)
      {
        if (different_vehicles(*g.members[i], *g.members[k]))
          pairs.push_back({g.members[i], g.members[k], false});
      }
    }
  }

  std::stable_sort(pairs.begin(), pairs.end(),
    [](const Pair& x, const Pair& y)
    {
      return std::min(x.a->earliest, x.b->earliest)
      < std::min(y.a->earliest, y.b->earliest);
    });

  // One "a before b" and one "b before a" literal per pair of occupancies.
  std::map<std::pair<const Occupancy*, const Occupancy*>, std::pair<BoolVar, BoolVar>> order;
  for (const auto& p : pairs)
  {
    if (p.stagger_only)
    {
      const auto a_first = model.new_bool("stagger");
      const auto b_first = model.new_bool("stagger");
      model.set_hint(a_first, ValueHint::Consistent);
      model.set_hint(b_first, ValueHint::Consistent);
      const LinearExpr da(*p.a->departure);
      const LinearExpr db(*p.b->departure);
      model.add(implies(a_first, db >= da + 1));
      model.add(implies(b_first, da >= db + 1));
      model.add(Clause{{a_first, b_first}});
      continue;
    }
    if (order.count({p.a, p.b}))
      continue;
    const auto a_first = model.new_bool("sep");
    const auto b_first = model.new_bool("sep");
    model.set_hint(a_first, ValueHint::Consistent);
    model.set_hint(b_first, ValueHint::Consistent);
    model.add(implies(a_first, p.b->entry >= p.a->exit + 1));
    model.add(implies(b_first, p.a->entry >= p.b->exit + 1));
    order[{p.a, p.b}] = {a_first, b_first};
  }

  auto separated = [&](const Occupancy* a, const Occupancy* b)
    {
      auto it = order.find({a, b});
      if (it == order.end())
        it = order.find({b, a});
      return std::pair<Literal, Literal>(it->second.first, it->second.second);
    };

  // Head-on pairs need to be apart; a resource of capacity k needs some pair
  // apart among any k + 1 occupants.
  for (const auto& [key, occ] : on_edge)
  {
    if (key.u > key.v)
      continue;
    const auto back = on_edge.find({key.v, key.u});
    if (back == on_edge.end())
      continue;
    for (const auto& a : occ)
    {
      for (const auto& b : back->second)
      {
        if (different_vehicles(a, b))
        {
          const auto [x, y] = separated(&a, &b);
          model.add(Clause{{x, y}});
        }
      }
    }
  }

  for (const auto& g : groups)
  {
    const auto k = static_cast<std::size_t>(
      std::min<std::int64_t>(g.capacity, static_cast<std::int64_t>(g.members.size())));
    if (static_cast<std::int64_t>(g.members.size()) <= g.capacity)
      continue;

    // Every subset of capacity + 1 occupants from distinct vehicles must
    // contain a separated pair.
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from)
      {
        if (pick.size() == k + 1)
        {
          std::vector<Literal> any;
          for (std::size_t i = 0; i < pick.size(); ++i)
          {
            for (std::size_t j = i + 1; j < pick.size(); ++j)
            {
              const auto [x, y] = separated(g.members[pick[i]], g.members[pick[j]]);
              any.push_back(x);
              any.push_back(y);
            }
          }
          model.add(Clause{any});
          return;
        }
        for (std::size_t i = from; i < g.members.size(); ++i)
        {
          bool distinct = true;
          for (auto q : pick)
            distinct = distinct && different_vehicles(*g.members[q], *g.members[i]);
          if (!distinct)
            continue;
          pick.push_back(i);
          choose(i + 1);
          pick.pop_back();
        }
      };
    choose(0);
  }

  const auto result = check_minimize(model, limits);
  out.status = result.status;
  if (result.status != Status::Sat)
    return out;

  const auto& sol = *result.solution;
  Schedule schedule;
  for (std::size_t r = 0; r < traces.size(); ++r)
  {
    const auto& t = traces[r];
    ScheduledTrace st;
    st.route = t.route;
    st.vehicle = t.vehicle;
    st.visits = t.visits;
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
      st.nodes.push_back({t.nodes[i], sol.value(node_t[r][i])});
    for (std::size_t i = 0; i < t.edges.size(); ++i)
      st.edges.push_back({t.edges[i].source, t.edges[i].sink, sol.value(edge_t[r][i])});
    schedule.makespan = std::max(schedule.makespan, st.nodes.back().t);
    schedule.traces.push_back(std::move(st));
  }
  out.schedule = std::move(schedule);
  return out;
}

} // namespace comsat
