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

#include <comsat/bench.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

namespace comsat {

using nlohmann::json;

namespace {

//==============================================================================
template<typename T>
std::vector<T> one_or_many(const json& obj, const char* key, T fallback)
{
  if (!obj.contains(key))
    return {fallback};
  const auto& v = obj.at(key);
  if (v.is_array())
    return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::string fixed(double x, int digits = 3)
{
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, x);
  return buffer;
}

double mean(const std::vector<double>& xs)
{
  if (xs.empty())
    return 0.0;
  double sum = 0.0;
  for (double x : xs)
    sum += x;
  return sum / static_cast<double>(xs.size());
}

double median(std::vector<double> xs)
{
  if (xs.empty())
    return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2.0;
}

BenchRow run_one(const GenParams& p, const SolverConfig& config)
{
  BenchRow row;
  row.params = p;
  try
  {
    const auto inst = generate(p);
    const auto result = solve(inst, config);
    row.status = to_string(result.status);
    row.stats = result.stats;
    if (result.status == SolveStatus::Sat)
    {
      row.violations =
        validate(inst, *result.schedule, *result.assignment).violations.size();
    }
  }
  catch (const std::exception& e)
  {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

} // anonymous namespace

//==============================================================================
std::vector<GenParams> parse_grid(std::string_view text)
{
  json doc;
  try
  {
    doc = json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e)
  {
    throw ParseError("syntax error at byte " + std::to_string(e.byte));
  }

  try
  {
    std::vector<GenParams> grid;
    for (const auto& c : doc.at("classes"))
    {
      std::vector<std::uint64_t> seeds;
      const auto& s = c.at("seeds");
      if (s.is_array())
        seeds = s.get<std::vector<std::uint64_t>>();
      else
      {
        for (std::uint64_t k = 1; k <= s.get<std::uint64_t>(); ++k)
          seeds.push_back(k);
      }

      for (Time horizon : one_or_many<Time>(c, "horizon", 20))
      {
        for (int reduction : one_or_many<int>(c, "edge_reduction", 0))
        {
          for (auto seed : seeds)
          {
            GenParams p;
            p.nodes = c.at("nodes").get<std::size_t>();
            p.vehicles = c.at("vehicles").get<std::size_t>();
            p.jobs = c.at("jobs").get<std::size_t>();
            p.horizon = horizon;
            p.edge_reduction = reduction;
            p.seed = seed;
            grid.push_back(p);
          }
        }
      }
    }
    return grid;
  }
  catch (const json::exception& e)
  {
    throw InstanceError(std::string("grid: ") + e.what());
  }
}

//==============================================================================
std::vector<BenchRow> run_bench(
  const std::vector<GenParams>& grid,
  const SolverConfig& config,
  std::size_t threads,
  const std::function<void(const BenchRow&)>& progress)
{
  std::vector<BenchRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;

  auto work = [&]()
    {
      while (true)
      {
        const std::size_t i = next++;
        if (i >= grid.size())
          return;
        rows[i] = run_one(grid[i], config);
        if (progress)
        {
          std::lock_guard<std::mutex> lock(report);
          progress(rows[i]);
        }
      }
    };

  threads = std::max<std::size_t>(1, std::min(threads, grid.size()));
  if (threads == 1)
  {
    work();
    return rows;
  }

  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back(work);
  for (auto& t : pool)
    t.join();
  return rows;
}

//==============================================================================
std::string class_name(const GenParams& p)
{
  return std::to_string(p.nodes) + "-" + std::to_string(p.vehicles) + "-"
    + std::to_string(p.jobs) + " T=" + std::to_string(p.horizon)
    + " r=" + std::to_string(p.edge_reduction);
}

//==============================================================================
std::vector<ClassSummary> summarize(const std::vector<BenchRow>& rows)
{
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BenchRow*>> groups;
  for (const auto& r : rows)
  {
    const auto name = class_name(r.params);
    if (!groups.count(name))
      order.push_back(name);
    groups[name].push_back(&r);
  }

  std::vector<ClassSummary> out;
  for (const auto& name : order)
  {
    ClassSummary s;
    s.name = name;
    std::vector<double> feasible;
    std::vector<double> infeasible;
    std::vector<double> all;
    for (const auto* r : groups[name])
    {
      ++s.instances;
      const double t = r->stats.total_seconds;
      if (r->status == "sat")
      {
        ++s.feasible;
        feasible.push_back(t);
      }
      else if (r->status == "unsat")
      {
        ++s.infeasible;
        infeasible.push_back(t);
      }
      else if (r->status == "unknown")
        ++s.unknown;
      else
        ++s.errors;
      if (r->status != "error")
        all.push_back(t);
    }
    s.mean_feasible_seconds = mean(feasible);
    s.mean_infeasible_seconds = mean(infeasible);
    s.median_feasible_seconds = median(feasible);
    s.mean_seconds = mean(all);
    out.push_back(s);
  }
  return out;
}

//==============================================================================
std::string rows_csv(const std::vector<BenchRow>& rows)
{
  std::ostringstream out;
  out << "nodes,vehicles,jobs,horizon,edge_reduction,seed,status,"
         "total_s,paths_s,pathfinder_s,router_s,assigner_s,scheduler_s,validator_s,"
         "router_iterations,combinations,violations,error\n";
  for (const auto& r : rows)
  {
    const auto& p = r.params;
    const auto& s = r.stats;
    std::string error = r.error;
    std::replace(error.begin(), error.end(), '"', '\'');
    out << p.nodes << ',' << p.vehicles << ',' << p.jobs << ',' << p.horizon
        << ',' << p.edge_reduction << ',' << p.seed << ',' << r.status << ','
        << fixed(s.total_seconds, 6) << ',' << fixed(s.paths.seconds, 6) << ','
        << fixed(s.pathfinder.seconds, 6) << ',' << fixed(s.router.seconds, 6) << ','
        << fixed(s.assigner.seconds, 6) << ',' << fixed(s.scheduler.seconds, 6) << ','
        << fixed(s.validator.seconds, 6) << ',' << s.router_iterations << ','
        << s.combinations << ',' << r.violations << ",\"" << error << "\"\n";
  }
  return out.str();
}

std::string summary_csv(const std::vector<ClassSummary>& summaries)
{
  std::ostringstream out;
  out << "class,instances,feas,unfeas,unknown,errors,"
         "avg_feas_s,avg_unfeas_s,median_feas_s,avg_s\n";
  for (const auto& s : summaries)
  {
    out << s.name << ',' << s.instances << ',' << s.feasible << ','
        << s.infeasible << ',' << s.unknown << ',' << s.errors << ','
        << fixed(s.mean_feasible_seconds, 6) << ','
        << fixed(s.mean_infeasible_seconds, 6) << ','
        << fixed(s.median_feasible_seconds, 6) << ','
        << fixed(s.mean_seconds, 6) << '\n';
  }
  return out.str();
}

std::string summary_table(const std::vector<ClassSummary>& summaries)
{
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-22s %5s %6s %7s %8s %10s %10s %10s\n",
    "class", "feas", "unfeas", "unknown", "errors", "av.feas", "av.unfeas", "med.feas");
  out << line;
  for (const auto& s : summaries)
  {
    std::snprintf(line, sizeof(line), "%-22s %5zu %6zu %7zu %8zu %10s %10s %10s\n",
      s.name.c_str(), s.feasible, s.infeasible, s.unknown, s.errors,
      fixed(s.mean_feasible_seconds).c_str(),
      fixed(s.mean_infeasible_seconds).c_str(),
      fixed(s.median_feasible_seconds).c_str());
    out << line;
  }
  return out.str();
}

} // namespace comsat
