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

#include <comsat/assigner.hpp>

#include <algorithm>

namespace comsat {

using namespace backend;

//==============================================================================
std::vector<VehicleId> eligible_vehicles(const Instance& inst, const Route& route)
{
  std::vector<VehicleId> out = inst.fleet.vehicles;
  std::sort(out.begin(), out.end());
  for (const auto& j : route.jobs())
  {
    const auto& allowed = inst.job(j).eligible;
    std::vector<VehicleId> kept;
    std::set_intersection(
      out.begin(), out.end(), allowed.begin(), allowed.end(),
      std::back_inserter(kept));
    out = std::move(kept);
  }
  return out;
}

//==============================================================================
Time recharge_time(const Instance& inst, Distance length)
{
  const auto& c = inst.fleet.charge_coeff;
  return (c.num * length + c.den - 1) / c.den;
}

//==============================================================================
AssignResult assign(
  const Instance& inst,
  const RouteSet& routes,
  const Limits& limits)
{
  AssignResult out;
  const auto n = routes.routes.size();

  std::vector<std::vector<VehicleId>> eligible;
  for (const auto& r : routes.routes)
  {
    eligible.push_back(eligible_vehicles(inst, r));
    if (eligible.back().empty() || r.latest_start < 0)
    {
      out.status = Status::Unsat;
      return out;
    }
  }

  Model model;
  std::vector<std::map<VehicleId, BoolVar>> allo(n);
  for (std::size_t r = 0; r < n; ++r)
  {
    std::vector<Literal> choices;
    for (const auto& v : eligible[r])
    {
      const auto var = model.new_bool("allo_" + v + "_" + std::to_string(r));
      allo[r].emplace(v, var);
      choices.push_back(var);
    }
    model.add(exactly_one(choices));
  }

  std::vector<IntVar> start;
  for (std::size_t r = 0; r < n; ++r)
  {
    start.push_back(model.new_int(
        0, routes.routes[r].latest_start, "start_" + std::to_string(r)));
  }

  // Two routes on one vehicle run one after the other, with time to recharge
  // what the later route consumes.
  for (std::size_t a = 0; a < n; ++a)
  {
    for (std::size_t b = a + 1; b < n; ++b)
    {
      std::vector<VehicleId> shared;
      for (const auto& [v, _] : allo[a])
      {
        if (allo[b].count(v))
          shared.push_back(v);
      }
      if (shared.empty())
        continue;

      const auto& ra = routes.routes[a];
      const auto& rb = routes.routes[b];
      const auto a_first = model.new_bool(
        "before_" + std::to_string(a) + "_" + std::to_string(b));
      const auto b_first = model.new_bool(
        "before_" + std::to_string(b) + "_" + std::to_string(a));
      model.set_hint(a_first, ValueHint::False);
      model.set_hint(b_first, ValueHint::False);
      model.add(implies(a_first,
        LinearExpr(start[b])
        >= LinearExpr(start[a]) + ra.length + recharge_time(inst, rb.length)));
      model.add(implies(b_first,
        LinearExpr(start[a])
        >= LinearExpr(start[b]) + rb.length + recharge_time(inst, ra.length)));

      for (const auto& v : shared)
      {
        model.add(Clause{{
            !Literal(allo[a].at(v)), !Literal(allo[b].at(v)),
            a_first, b_first}});
      }
    }
  }

  const auto result = check_minimize(model, limits);
  out.status = result.status;
  if (result.status != Status::Sat)
    return out;

  Assignment assignment;
  for (std::size_t r = 0; r < n; ++r)
  {
    RouteAssignment entry;
    entry.route = r;
    for (const auto& [v, var] : allo[r])
    {
      if (result.solution->value(var))
        entry.vehicle = v;
    }
    entry.start = result.solution->value(start[r]);
    entry.end = entry.start + routes.routes[r].length;
    assignment.assignments.push_back(entry);
  }
  out.assignment = std::move(assignment);
  return out;
}

} // namespace comsat
