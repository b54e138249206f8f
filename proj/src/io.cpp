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

#include <comsat/io.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace comsat {

using nlohmann::json;

namespace {

//==============================================================================
json parse_json(std::string_view text)
{
  try
  {
    return json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e)
  {
    throw ParseError("syntax error at byte " + std::to_string(e.byte));
  }
}

template<typename F>
auto guarded(const char* what, F&& f)
{
  try
  {
    return f();
  }
  catch (const json::exception& e)
  {
    throw InstanceError(std::string(what) + ": " + e.what());
  }
  catch (const std::out_of_range& e)
  {
    throw InstanceError(std::string(what) + ": " + e.what());
  }
}

} // anonymous namespace

//==============================================================================
std::string serialize_routes(const RouteSet& routes)
{
  json list = json::array();
  for (const auto& r : routes.routes)
  {
    json visits = json::array();
    for (const auto& v : r.visits)
    {
      visits.push_back(
        {{"job", v.job}, {"task", v.task}, {"location", v.location},
          {"arrival", v.arrival}});
    }
    list.push_back(
      {{"visits", visits}, {"length", r.length},
        {"latest_start", r.latest_start}});
  }
  return json{{"routes", list}}.dump(2);
}

RouteSet parse_routes(const Instance& inst, std::string_view text)
{
  const json doc = parse_json(text);
  return guarded("routes", [&]
    {
      RouteSet out;
      for (const auto& r : doc.at("routes"))
      {
        Route route;
        for (const auto& v : r.at("visits"))
        {
          const auto job = v.at("job").get<JobId>();
          const auto task = v.at("task").get<TaskId>();
          const auto location = inst.job(job).task(task).location;
          route.visits.push_back(
            {job, task, location, v.at("arrival").get<Time>()});
        }
        route.length = r.at("length").get<Distance>();
        route.latest_start = r.at("latest_start").get<Time>();
        out.routes.push_back(std::move(route));
      }
      return out;
    });
}

//==============================================================================
std::string serialize_assignment(const Assignment& assignment)
{
  json list = json::array();
  for (const auto& a : assignment.assignments)
  {
    list.push_back(
      {{"route", a.route}, {"vehicle", a.vehicle}, {"start", a.start},
        {"end", a.end}});
  }
  return json{{"assignments", list}}.dump(2);
}

Assignment parse_assignment(std::string_view text)
{
  const json doc = parse_json(text);
  return guarded("assignment", [&]
    {
      Assignment out;
      for (const auto& a : doc.at("assignments"))
      {
        out.assignments.push_back(
          {a.at("route").get<std::size_t>(), a.at("vehicle").get<VehicleId>(),
            a.at("start").get<Time>(), a.at("end").get<Time>()});
      }
      return out;
    });
}

//==============================================================================
std::string serialize_schedule(const Schedule& schedule)
{
  json traces = json::array();
  for (const auto& t : schedule.traces)
  {
    json nodes = json::array();
    for (const auto& n : t.nodes)
      nodes.push_back({{"node", n.node}, {"t", n.t}});
    json edges = json::array();
    for (const auto& e : t.edges)
      edges.push_back({{"u", e.u}, {"v", e.v}, {"t", e.t}});
    json visits = json::array();
    for (const auto& v : t.visits)
      visits.push_back({{"job", v.job}, {"task", v.task}, {"pos", v.position}});
    traces.push_back(
      {{"route", t.route}, {"vehicle", t.vehicle}, {"nodes", nodes},
        {"edges", edges}, {"visits", visits}});
  }
  return json{{"traces", traces}, {"makespan", schedule.makespan}}.dump(2);
}

Schedule parse_schedule(std::string_view text)
{
  const json doc = parse_json(text);
  return guarded("schedule", [&]
    {
      Schedule out;
      for (const auto& t : doc.at("traces"))
      {
        ScheduledTrace trace;
        trace.route = t.at("route").get<std::size_t>();
        trace.vehicle = t.at("vehicle").get<VehicleId>();
        for (const auto& n : t.at("nodes"))
          trace.nodes.push_back({n.at("node").get<NodeId>(), n.at("t").get<Time>()});
        for (const auto& e : t.at("edges"))
        {
          trace.edges.push_back(
            {e.at("u").get<NodeId>(), e.at("v").get<NodeId>(), e.at("t").get<Time>()});
        }
        for (const auto& v : t.at("visits"))
        {
          trace.visits.push_back(
            {v.at("job").get<JobId>(), v.at("task").get<TaskId>(),
              v.at("pos").get<std::size_t>()});
        }
        out.traces.push_back(std::move(trace));
      }
      out.makespan = doc.at("makespan").get<Time>();
      return out;
    });
}

//==============================================================================
std::string serialize_stats(const SolveStats& stats)
{
  auto stage = [](const StageStats& s)
    {
      return json{
        {"calls", s.calls}, {"sat", s.sat}, {"unsat", s.unsat},
        {"timeouts", s.timeouts}, {"seconds", s.seconds}};
    };
  json doc{
    {"paths", stage(stats.paths)},
    {"pathfinder", stage(stats.pathfinder)},
    {"router", stage(stats.router)},
    {"assigner", stage(stats.assigner)},
    {"scheduler", stage(stats.scheduler)},
    {"validator", stage(stats.validator)},
    {"router_iterations", stats.router_iterations},
    {"last_combination_iterations", stats.last_combination_iterations},
    {"combinations", stats.combinations},
    {"relaxation", stats.relaxation},
    {"stop_reason", stats.stop_reason},
    {"total_seconds", stats.total_seconds}};
  return doc.dump(2);
}

//==============================================================================
std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw InstanceError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

} // namespace comsat
