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

#ifndef COMSAT__BENCH_HPP
#define COMSAT__BENCH_HPP

#include <comsat/generator.hpp>
#include <comsat/orchestrator.hpp>

#include <functional>

namespace comsat {

//==============================================================================
struct BenchRow
{
  GenParams params;
  /// "sat", "unsat", "unknown" or "error".
  std::string status;
  SolveStats stats;
  /// Violations the validator found in a Sat schedule; always zero unless
  /// something is broken.
  std::size_t violations = 0;
  std::string error;
};

/// Counts and mean times for one class of the grid, that is one combination
/// of size, horizon and edge reduction across all seeds.
struct ClassSummary
{
  std::string name;
  std::size_t instances = 0;
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
  std::size_t unknown = 0;
  std::size_t errors = 0;
  double mean_feasible_seconds = 0.0;
  double mean_infeasible_seconds = 0.0;
  double median_feasible_seconds = 0.0;
  double mean_seconds = 0.0;
};

/// Grid description:
///   {"classes": [{"nodes": 15, "vehicles": 3, "jobs": 5,
///                 "horizon": [20, 25], "edge_reduction": [0, 25, 50],
///                 "seeds": 5}]}
/// "horizon" and "edge_reduction" take a number or a list; "seeds" is a
/// count starting at 1 or an explicit list.
std::vector<GenParams> parse_grid(std::string_view text);

/// Generate and solve every grid point. A failure on one instance is
/// recorded in its row and never stops the sweep. With `threads` above one,
/// instances are solved concurrently; rows keep grid order.
std::vector<BenchRow> run_bench(
  const std::vector<GenParams>& grid,
  const SolverConfig& config,
  std::size_t threads = 1,
  const std::function<void(const BenchRow&)>& progress = {});

std::string class_name(const GenParams& p);

/// One summary per class, in order of first appearance.
std::vector<ClassSummary> summarize(const std::vector<BenchRow>& rows);

std::string rows_csv(const std::vector<BenchRow>& rows);
std::string summary_csv(const std::vector<ClassSummary>& summaries);

/// Fixed-width table with one line per class.
std::string summary_table(const std::vector<ClassSummary>& summaries);

} // namespace comsat

#endif // COMSAT__BENCH_HPP
