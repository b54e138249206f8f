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
#include <comsat/io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum ExitCode : int
{
  kSat = 0,
  kUnsat = 1,
  kUnknown = 2,
  kError = 3
};

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n')
    out << '\n';
}

void add_solver_options(CLI::App* app, comsat::SolverConfig& config)
{
  app->add_option("--max-paths", config.max_paths,
    "Candidate paths per pair of task locations")->check(CLI::PositiveNumber);
  app->add_option("--max-route-iters", config.max_route_iters,
    "Route sets tried per path combination")->check(CLI::PositiveNumber);
  app->add_option("--max-path-iters", config.max_path_iters,
    "Path combinations tried in total, 0 for no limit");
  app->add_option("--timeout", config.timeout,
    "Seconds for the whole solve")->check(CLI::NonNegativeNumber);
  app->add_option("--stage-timeout", config.stage_timeout,
    "Seconds for any single stage call")->check(CLI::NonNegativeNumber);
  app->add_flag("--strict-pairwise-edges", config.strict_pairwise_edges,
    "Let every edge hold one vehicle at a time");
}

} // anonymous namespace

int main(int argc, char** argv)
{
  CLI::App app{"Conflict-free routing and scheduling for electric vehicle fleets"};
  app.require_subcommand(1);

  // solve
  comsat::SolverConfig config;
  std::string instance_path;
  std::string schedule_path;
  std::string assignment_path;
  std::string routes_path;
  std::string stats_path;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--instance", instance_path, "Instance JSON")->required();
  solve->add_option("-o,--output", schedule_path, "Where to write the schedule");
  solve->add_option("--assignment", assignment_path, "Where to write the assignment");
  solve->add_option("--routes", routes_path, "Where to write the routes");
  solve->add_option("--stats", stats_path, "Where to write solver statistics");
  add_solver_options(solve, config);

  // gen
  comsat::GenParams params;
  std::string gen_path;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--nodes", params.nodes, "Number of nodes")->required();
  gen->add_option("--vehicles", params.vehicles, "Number of vehicles")->required();
  gen->add_option("--jobs", params.jobs, "Number of jobs")->required();
  gen->add_option("--edge-reduction", params.edge_reduction,
    "Percentage of edges removed")->check(CLI::Range(0, 100));
  gen->add_option("--horizon", params.horizon, "Time horizon")->required();
  gen->add_option("--seed", params.seed, "Random seed");
  gen->add_option("-o,--output", gen_path, "Where to write the instance");

  // validate
  std::string check_instance;
  std::string check_schedule;
  std::string check_assignment;
  auto* check = app.add_subcommand("validate", "Check a schedule against an instance");
  check->add_option("--instance", check_instance, "Instance JSON")->required();
  check->add_option("--schedule", check_schedule, "Schedule JSON")->required();
  check->add_option("--assignment", check_assignment, "Assignment JSON")->required();

  // bench
  comsat::SolverConfig bench_config;
  bench_config.timeout = 60.0;
  bench_config.stage_timeout = 30.0;
  std::string grid_path;
  std::string results_path;
  std::string summary_path;
  std::size_t threads = 1;
  bool quiet = false;
  auto* bench = app.add_subcommand("bench", "Solve a grid of generated instances");
  bench->add_option("--grid", grid_path, "Grid JSON")->required();
  bench->add_option("--out", results_path, "Per-instance CSV")->required();
  bench->add_option("--summary", summary_path, "Per-class CSV");
  bench->add_option("--threads", threads, "Instances solved at once")
    ->check(CLI::PositiveNumber);
  bench->add_flag("-q,--quiet", quiet, "No per-instance progress");
  add_solver_options(bench, bench_config);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try
  {
    if (*solve)
    {
      const auto inst = comsat::load_instance(instance_path);
      const auto result = comsat::solve(inst, config);
      std::cout << comsat::to_string(result.status) << " ("
                << result.stats.stop_reason << ", "
                << result.stats.total_seconds << " s)" << std::endl;
      if (result.schedule && !schedule_path.empty())
        write_file(schedule_path, comsat::serialize_schedule(*result.schedule));
      if (result.assignment && !assignment_path.empty())
        write_file(assignment_path, comsat::serialize_assignment(*result.assignment));
      if (result.routes && !routes_path.empty())
        write_file(routes_path, comsat::serialize_routes(*result.routes));
      if (!stats_path.empty())
        write_file(stats_path, comsat::serialize_stats(result.stats));

      switch (result.status)
      {
        case comsat::SolveStatus::Sat: return kSat;
        case comsat::SolveStatus::Unsat: return kUnsat;
        case comsat::SolveStatus::Unknown: return kUnknown;
      }
    }

    if (*gen)
    {
      const auto text = comsat::serialize_instance(comsat::generate(params));
      if (gen_path.empty())
        std::cout << text << std::endl;
      else
        write_file(gen_path, text);
      return 0;
    }

    if (*check)
    {
      const auto inst = comsat::load_instance(check_instance);
      const auto schedule =
        comsat::parse_schedule(comsat::read_file(check_schedule));
      const auto assignment =
        comsat::parse_assignment(comsat::read_file(check_assignment));
      const auto report = comsat::validate(inst, schedule, assignment);
      for (const auto& v : report.violations)
      {
        std::cout << comsat::to_string(v.kind) << " t=" << v.time << " "
                  << v.entities << "\n";
      }
      std::cout << (report.ok() ? "ok" : "violations: "
        + std::to_string(report.violations.size())) << std::endl;
      return report.ok() ? 0 : 1;
    }

    if (*bench)
    {
      const auto grid = comsat::parse_grid(comsat::read_file(grid_path));
      const auto rows = comsat::run_bench(grid, bench_config, threads,
        [&](const comsat::BenchRow& row)
        {
          if (quiet)
            return;
          std::cerr << comsat::class_name(row.params) << " seed="
                    << row.params.seed << " " << row.status << " "
                    << row.stats.total_seconds << " s"
                    << (row.error.empty() ? "" : " " + row.error) << std::endl;
        });
      write_file(results_path, comsat::rows_csv(rows));
      const auto summaries = comsat::summarize(rows);
      if (!summary_path.empty())
        write_file(summary_path, comsat::summary_csv(summaries));
      std::cout << comsat::summary_table(summaries);
      return 0;
    }
  }
  catch (const comsat::StructuralError& e)
  {
    std::cerr << "inconsistent input: " << e.what() << std::endl;
    return kError;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << std::endl;
    return kError;
  }
  return kError;
}
