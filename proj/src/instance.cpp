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

#include <comsat/instance.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace comsat {

using nlohmann::json;

//==============================================================================
Rational Rational::from_double(double x)
{
  for (std::int64_t den = 1; den <= 1000000; den *= 10)
  {
    for (std::int64_t d : {den, 2 * den, 3 * den, 4 * den, 6 * den, 8 * den})
    {
      const double scaled = x * static_cast<double>(d);
      const double rounded = std::round(scaled);
      if (std::abs(scaled - rounded) < 1e-9 * static_cast<double>(d))
      {
        auto num = static_cast<std::int64_t>(rounded);
        const auto g = std::gcd(num < 0 ? -num : num, d);
        return {num / (g == 0 ? 1 : g), d / (g == 0 ? 1 : g)};
      }
    }
  }
  throw InstanceError(
    "coefficient " + std::to_string(x) + " has no exact small rational form");
}

//==============================================================================
Graph::Graph(
  std::vector<NodeId> nodes,
  NodeId depot,
  std::vector<Edge> edges,
  std::map<NodeId, std::int64_t> node_capacity)
: _nodes(std::move(nodes)),
  _depot(depot),
  _edges(std::move(edges)),
  _node_capacity(std::move(node_capacity))
{
  std::sort(_nodes.begin(), _nodes.end());
  if (std::adjacent_find(_nodes.begin(), _nodes.end()) != _nodes.end())
    throw InstanceError("duplicate node identifier");
  if (_nodes.empty())
    throw InstanceError("graph has no nodes");
  for (NodeId n : _nodes)
  {
    if (n < 0)
      throw InstanceError("negative node identifier " + std::to_string(n));
  }
  if (!has_node(_depot))
    throw InstanceError("depot " + std::to_string(_depot) + " not a node");

  for (const auto& e : _edges)
  {
    if (!has_node(e.source) || !has_node(e.sink))
    {
      throw InstanceError(
        "edge (" + std::to_string(e.source) + "," + std::to_string(e.sink)
        + ") references unknown node");
    }
    if (e.source == e.sink)
      throw InstanceError("self loop at node " + std::to_string(e.source));
    if (e.length < 1)
      throw InstanceError("edge length must be >= 1");
    if (e.capacity < 1)
      throw InstanceError("edge capacity must be >= 1");
  }

  std::sort(_edges.begin(), _edges.end(),
    [](const Edge& a, const Edge& b)
    {
      return std::pair(a.source, a.sink) < std::pair(b.source, b.sink);
    });
  for (std::size_t i = 1; i < _edges.size(); ++i)
  {
    if (_edges[i].source == _edges[i - 1].source
      && _edges[i].sink == _edges[i - 1].sink)
    {
      throw InstanceError(
        "more than one edge from " + std::to_string(_edges[i].source) + " to "
        + std::to_string(_edges[i].sink));
    }
  }

  for (const auto& [n, cap] : _node_capacity)
  {
    if (!has_node(n))
      throw InstanceError("capacity override for unknown node " + std::to_string(n));
    if (cap < 1)
      throw InstanceError("node capacity must be >= 1");
  }

  _out.resize(_nodes.size());
  for (std::size_t i = 0; i < _edges.size(); ++i)
    _out[_slot(_edges[i].source)].push_back(i);
}

//==============================================================================
std::size_t Graph::_slot(NodeId n) const
{
  const auto it = std::lower_bound(_nodes.begin(), _nodes.end(), n);
  if (it == _nodes.end() || *it != n)
    throw InstanceError("unknown node " + std::to_string(n));
  return static_cast<std::size_t>(it - _nodes.begin());
}

bool Graph::has_node(NodeId n) const
{
  return std::binary_search(_nodes.begin(), _nodes.end(), n);
}

//==============================================================================
const Edge* Graph::find_edge(NodeId u, NodeId v) const
{
  if (!has_node(u))
    return nullptr;
  for (auto i : _out[_slot(u)])
  {
    if (_edges[i].sink == v)
      return &_edges[i];
  }
  return nullptr;
}

//==============================================================================
std::span<const std::size_t> Graph::out_edges(NodeId u) const
{
  return _out[_slot(u)];
}

//==============================================================================
std::int64_t Graph::node_capacity(NodeId n) const
{
  if (n == _depot)
    return std::numeric_limits<std::int64_t>::max();
  const auto it = _node_capacity.find(n);
  return it == _node_capacity.end() ? 1 : it->second;
}

//==============================================================================
bool Graph::strongly_connected() const
{
  // Forward and backward sweeps from the depot.
  std::vector<std::vector<std::size_t>> in(_nodes.size());
  for (const auto& e : _edges)
    in[_slot(e.sink)].push_back(_slot(e.source));

  auto sweep = [&](bool forward)
    {
      std::vector<char> seen(_nodes.size(), 0);
      std::vector<std::size_t> stack{_slot(_depot)};
      seen[stack.back()] = 1;
      std::size_t count = 1;
      while (!stack.empty())
      {
        const auto u = stack.back();
        stack.pop_back();
        std::vector<std::size_t> next;
        if (forward)
        {
          for (auto i : _out[u])
            next.push_back(_slot(_edges[i].sink));
        }
        else
        {
          next = in[u];
        }
        for (auto v : next)
        {
          if (!seen[v])
          {
            seen[v] = 1;
            ++count;
            stack.push_back(v);
          }
        }
      }
      return count == _nodes.size();
    };

  return sweep(true) && sweep(false);
}

//==============================================================================
const Task& Job::task(const TaskId& tid) const
{
  for (const auto& t : tasks)
  {
    if (t.id == tid)
      return t;
  }
  throw std::out_of_range("job " + id + " has no task " + tid);
}

//==============================================================================
const Job& Instance::job(const JobId& id) const
{
  for (const auto& j : jobs)
  {
    if (j.id == id)
      return j;
  }
  throw std::out_of_range("no job " + id);
}

//==============================================================================
std::span<const Job> Instance::regular_jobs() const
{
  if (jobs.size() < 2)
    return {};
  return std::span<const Job>(jobs).subspan(1, jobs.size() - 2);
}

//==============================================================================
bool task_id_less(const TaskId& a, const TaskId& b)
{
  auto numeric = [](const TaskId& s)
    {
      return !s.empty() && s.size() < 18
        && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
  if (numeric(a) && numeric(b))
  {
    const auto x = std::stoll(a);
    const auto y = std::stoll(b);
    if (x != y)
      return x < y;
  }
  return a < b;
}

namespace {

//==============================================================================
void check_job(const Instance& inst, const Job& job)
{
  const std::string where = "job " + job.id;
  if (job.tasks.empty())
    throw InstanceError(where + " has no tasks");
  if (job.eligible.empty())
    throw InstanceError(where + " has no eligible vehicles");

  const auto& fleet = inst.fleet.vehicles;
  for (const auto& v : job.eligible)
  {
    if (std::find(fleet.begin(), fleet.end(), v) == fleet.end())
      throw InstanceError(where + " lists unknown vehicle " + v);
  }

  std::map<TaskId, std::size_t> index;
  for (std::size_t i = 0; i < job.tasks.size(); ++i)
  {
    const auto& t = job.tasks[i];
    if (!index.emplace(t.id, i).second)
      throw InstanceError(where + " repeats task " + t.id);
    if (!inst.graph.has_node(t.location))
    {
      throw InstanceError(
        "task location " + std::to_string(t.location) + " not a node ("
        + where + ", task " + t.id + ")");
    }
    if (t.window_lo < 0)
      throw InstanceError(where + " task " + t.id + " window starts before 0");
    if (t.window_lo > t.window_hi)
      throw InstanceError(where + " task " + t.id + " has an empty window");
  }

  // Acyclic precedence and a delivery task preceded by all others.
  const auto n = job.tasks.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (const auto& p : job.tasks[i].predecessors)
    {
      const auto it = index.find(p);
      if (it == index.end())
      {
        throw InstanceError(
          where + " task " + job.tasks[i].id + " has unknown predecessor " + p);
      }
      if (it->second == i)
        throw InstanceError(where + " task " + p + " precedes itself");
      preds[i].push_back(it->second);
    }
  }

  std::vector<int> state(n, 0);
  std::vector<std::set<std::size_t>> closure(n);
  std::function<void(std::size_t)> visit = [&](std::size_t i)
    {
      if (state[i] == 2)
        return;
      if (state[i] == 1)
        throw InstanceError(where + " has cyclic task precedence");
      state[i] = 1;
      for (auto p : preds[i])
      {
        visit(p);
        closure[i].insert(p);
        closure[i].insert(closure[p].begin(), closure[p].end());
      }
      state[i] = 2;
    };
  for (std::size_t i = 0; i < n; ++i)
    visit(i);

  const bool has_delivery = std::any_of(closure.begin(), closure.end(),
      [n](const auto& c) { return c.size() + 1 == n; });
  if (!has_delivery)
  {
    throw InstanceError(
      where + " has no delivery task preceded by all of its pickups");
  }
}

//==============================================================================
Job synthetic_job(const Instance& inst, const JobId& id)
{
  Job j;
  j.id = id;
  j.eligible = inst.fleet.vehicles;
  j.tasks.push_back({id, "0", inst.graph.depot(), 0, inst.horizon, {}});
  return j;
}

void check_synthetic(const Instance& inst, const Job& j)
{
  if (j.tasks.size() != 1)
    throw InstanceError("synthetic job " + j.id + " must have exactly one task");
  const auto& t = j.tasks.front();
  if (t.location != inst.graph.depot())
    throw InstanceError("synthetic job " + j.id + " must be located at the depot");
  if (t.window_lo != 0 || t.window_hi != inst.horizon)
    throw InstanceError("synthetic job " + j.id + " must have window [0, horizon]");
  if (!t.predecessors.empty())
    throw InstanceError("synthetic job " + j.id + " cannot have predecessors");
}

} // anonymous namespace

//==============================================================================
Instance finalize_instance(Instance inst)
{
  if (!inst.graph.strongly_connected())
    throw InstanceError("graph not strongly connected");
  if (inst.horizon < 0)
    throw InstanceError("horizon must be non-negative");

  auto& fleet = inst.fleet;
  {
    auto sorted = fleet.vehicles;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InstanceError("duplicate vehicle identifier");
  }
  if (fleet.operating_range < 1)
    throw InstanceError("operating range must be >= 1");
  if (fleet.charge_coeff.num < 0 || fleet.charge_coeff.den < 1)
    throw InstanceError("charge coefficient must be non-negative");
  if (fleet.discharge_coeff.num <= 0 || fleet.discharge_coeff.den < 1)
    throw InstanceError("discharge coefficient must be positive");
  for (auto* r : {&fleet.charge_coeff, &fleet.discharge_coeff})
  {
    const auto g = std::gcd(r->num, r->den);
    r->num /= g;
    r->den /= g;
  }

  std::optional<Job> start;
  std::optional<Job> end;
  std::vector<Job> regular;
  std::set<JobId> seen;
  for (auto& j : inst.jobs)
  {
    if (!seen.insert(j.id).second)
      throw InstanceError("duplicate job identifier " + j.id);
    for (auto& t : j.tasks)
      t.job = j.id;
    std::sort(j.tasks.begin(), j.tasks.end(),
      [](const Task& a, const Task& b) { return task_id_less(a.id, b.id); });
    for (auto& t : j.tasks)
    {
      std::sort(t.predecessors.begin(), t.predecessors.end(), task_id_less);
      t.predecessors.erase(
        std::unique(t.predecessors.begin(), t.predecessors.end()),
        t.predecessors.end());
    }
    std::sort(j.eligible.begin(), j.eligible.end());
    j.eligible.erase(
      std::unique(j.eligible.begin(), j.eligible.end()), j.eligible.end());

    if (j.id == kStartJob)
      start = std::move(j);
    else if (j.id == kEndJob)
      end = std::move(j);
    else
      regular.push_back(std::move(j));
  }

  std::sort(regular.begin(), regular.end(),
    [](const Job& a, const Job& b) { return a.id < b.id; });

  if (!start)
    start = synthetic_job(inst, kStartJob);
  if (!end)
    end = synthetic_job(inst, kEndJob);
  check_synthetic(inst, *start);
  check_synthetic(inst, *end);

  inst.jobs.clear();
  inst.jobs.push_back(std::move(*start));
  for (auto& j : regular)
    inst.jobs.push_back(std::move(j));
  inst.jobs.push_back(std::move(*end));

  for (const auto& j : inst.regular_jobs())
    check_job(inst, j);

  return inst;
}

namespace {

//==============================================================================
template<typename T>
T require(const json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object() || !obj.contains(key))
    throw InstanceError(where + ": missing key \"" + key + "\"");
  return obj.at(key).get<T>();
}

std::int64_t require_int(
  const json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object() || !obj.contains(key))
    throw InstanceError(where + ": missing key \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number_integer())
    throw InstanceError(where + ": \"" + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

Rational require_rational(
  const json& obj, const char* key, const std::string& where)
{
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw InstanceError(where + ": \"" + key + "\" must be a number");
  const auto& v = obj.at(key);
  if (v.is_number_integer())
    return {v.get<std::int64_t>(), 1};
  return Rational::from_double(v.get<double>());
}

json rational_json(const Rational& r)
{
  if (r.den == 1)
    return r.num;
  return r.value();
}

} // anonymous namespace

//==============================================================================
Instance parse_instance(std::string_view text)
{
  json doc;
  try
  {
    doc = json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e)
  {
    throw ParseError(
      "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }

  if (!doc.is_object())
    throw InstanceError("instance must be a JSON object");

  try
  {
    const std::string top = "instance";
    std::vector<NodeId> nodes;
    if (!doc.contains("nodes") || !doc.at("nodes").is_array())
      throw InstanceError(top + ": \"nodes\" must be an array");
    for (const auto& n : doc.at("nodes"))
    {
      if (!n.is_number_integer())
        throw InstanceError(top + ": node identifiers must be integers");
      nodes.push_back(n.get<NodeId>());
    }

    const auto depot = static_cast<NodeId>(require_int(doc, "depot", top));

    std::set<NodeId> node_set(nodes.begin(), nodes.end());
    std::vector<Edge> edges;
    if (!doc.contains("edges") || !doc.at("edges").is_array())
      throw InstanceError(top + ": \"edges\" must be an array");
    for (const auto& e : doc.at("edges"))
    {
      const std::string where = "edge " + e.dump();
      const auto u = static_cast<NodeId>(require_int(e, "u", where));
      const auto v = static_cast<NodeId>(require_int(e, "v", where));
      if (!node_set.count(u) || !node_set.count(v))
      {
        throw InstanceError(
          "unknown node in edge (" + std::to_string(u) + "," + std::to_string(v)
          + ")");
      }
      const auto len = require_int(e, "len", where);
      const auto cap = require_int(e, "cap", where);
      const bool directed = e.contains("directed") ? require<bool>(e, "directed", where) : false;
      edges.push_back({u, v, len, cap});
      if (!directed)
        edges.push_back({v, u, len, cap});
    }

    std::map<NodeId, std::int64_t> node_caps;
    if (doc.contains("node_capacity"))
    {
      for (const auto& [key, value] : doc.at("node_capacity").items())
      {
        if (!value.is_number_integer())
          throw InstanceError("node capacity must be an integer");
        node_caps[std::stoi(key)] = value.get<std::int64_t>();
      }
    }

    Instance inst;
    inst.graph = Graph(std::move(nodes), depot, std::move(edges), std::move(node_caps));
    inst.horizon = require_int(doc, "horizon", top);

    if (!doc.contains("vehicles") || !doc.at("vehicles").is_array())
      throw InstanceError(top + ": \"vehicles\" must be an array");
    inst.fleet.vehicles = doc.at("vehicles").get<std::vector<VehicleId>>();
    inst.fleet.operating_range = require_int(doc, "operating_range", top);
    inst.fleet.charge_coeff = require_rational(doc, "charge_coeff", top);
    inst.fleet.discharge_coeff = require_rational(doc, "discharge_coeff", top);

    if (!doc.contains("jobs") || !doc.at("jobs").is_object())
      throw InstanceError(top + ": \"jobs\" must be an object");
    for (const auto& [jid, jdoc] : doc.at("jobs").items())
    {
      const std::string where = "job " + jid;
      Job job;
      job.id = jid;
      job.eligible = require<std::vector<VehicleId>>(jdoc, "eligible", where);
      if (!jdoc.contains("tasks") || !jdoc.at("tasks").is_object())
        throw InstanceError(where + ": \"tasks\" must be an object");

      for (const auto& [tid, tdoc] : jdoc.at("tasks").items())
      {
        const std::string twhere = where + " task " + tid;
        Task t;
        t.job = jid;
        t.id = tid;
        t.location = static_cast<NodeId>(require_int(tdoc, "location", twhere));
        if (!tdoc.contains("window") || !tdoc.at("window").is_array()
          || tdoc.at("window").size() != 2)
        {
          throw InstanceError(twhere + ": \"window\" must be [lo, hi]");
        }
        const auto& w = tdoc.at("window");
        if (!w[0].is_number_integer())
          throw InstanceError(twhere + ": window bounds must be integers");
        t.window_lo = w[0].get<Time>();
        if (w[1].is_null())
          t.window_hi = inst.horizon;
        else if (w[1].is_number_integer())
          t.window_hi = w[1].get<Time>();
        else
          throw InstanceError(twhere + ": window bounds must be integers");

        if (tdoc.contains("precedes"))
        {
          for (const auto& p : tdoc.at("precedes"))
          {
            if (p.is_string())
              t.predecessors.push_back(p.get<TaskId>());
            else if (p.is_number_integer())
              t.predecessors.push_back(std::to_string(p.get<std::int64_t>()));
            else
              throw InstanceError(twhere + ": task identifiers must be strings");
          }
        }
        job.tasks.push_back(std::move(t));
      }
      inst.jobs.push_back(std::move(job));
    }

    return finalize_instance(std::move(inst));
  }
  catch (const json::exception& e)
  {
    throw InstanceError(std::string("malformed instance: ") + e.what());
  }
}

//==============================================================================
Instance load_instance(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

//==============================================================================
std::string serialize_instance(const Instance& inst)
{
  json doc;
  doc["nodes"] = inst.graph.nodes();
  doc["depot"] = inst.graph.depot();

  json edges = json::array();
  for (const auto& e : inst.graph.edges())
  {
    const auto* back = inst.graph.find_edge(e.sink, e.source);
    const bool symmetric = back && back->length == e.length
      && back->capacity == e.capacity;
    if (symmetric && e.sink < e.source)
      continue;
    edges.push_back({
      {"u", e.source}, {"v", e.sink}, {"len", e.length}, {"cap", e.capacity},
      {"directed", !symmetric}});
  }
  doc["edges"] = edges;

  if (!inst.graph.node_capacity_overrides().empty())
  {
    json caps = json::object();
    for (const auto& [n, c] : inst.graph.node_capacity_overrides())
      caps[std::to_string(n)] = c;
    doc["node_capacity"] = caps;
  }

  doc["horizon"] = inst.horizon;
  doc["vehicles"] = inst.fleet.vehicles;
  doc["operating_range"] = inst.fleet.operating_range;
  doc["charge_coeff"] = rational_json(inst.fleet.charge_coeff);
  doc["discharge_coeff"] = rational_json(inst.fleet.discharge_coeff);

  json jobs = json::object();
  for (const auto& j : inst.regular_jobs())
  {
    json tasks = json::object();
    for (const auto& t : j.tasks)
    {
      json window = json::array({t.window_lo, t.window_hi});
      tasks[t.id] = {
        {"location", t.location},
        {"window", window},
        {"precedes", t.predecessors}};
    }
    jobs[j.id] = {{"eligible", j.eligible}, {"tasks", tasks}};
  }
  doc["jobs"] = jobs;

  return doc.dump(2);
}

//==============================================================================
MutexSets mutex_sets(const Instance& inst)
{
  MutexSets out;
  const auto jobs = inst.regular_jobs();
  for (const auto& a : jobs)
  {
    auto& set = out[a.id];
    for (const auto& b : jobs)
    {
      if (a.id == b.id)
        continue;
      std::vector<VehicleId> common;
      std::set_intersection(
        a.eligible.begin(), a.eligible.end(),
        b.eligible.begin(), b.eligible.end(),
        std::back_inserter(common));
      if (common.empty())
        set.insert(b.id);
    }
  }
  return out;
}

} // namespace comsat
