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

#ifndef COMSAT__BACKEND__SOLVER_HPP
#define COMSAT__BACKEND__SOLVER_HPP

#include <comsat/backend/model.hpp>

#include <chrono>
#include <cstdint>
#include <optional>

namespace comsat {
namespace backend {

enum class Status
{
  Sat,
  Unsat,
  /// A deadline or node budget ran out before the search could conclude.
  Timeout
};

const char* to_string(Status status);

struct Limits
{
  std::optional<std::chrono::steady_clock::time_point> deadline;

  /// Zero means unlimited.
  std::uint64_t max_nodes = 0;
};

struct SearchStats
{
  std::uint64_t nodes = 0;
  std::uint64_t failures = 0;
  std::uint64_t solutions = 0;
  std::uint64_t propagations = 0;
};

struct CheckResult
{
  Status status = Status::Timeout;

  /// Present when status == Sat, in which case it is a minimizer of the
  /// objective. After a Timeout it holds the best solution found so far, if
  /// any, without a proof of optimality.
  std::optional<Solution> solution;
  std::optional<std::int64_t> objective;

  SearchStats stats;
};

/// Decide the model and, if it has an objective, minimize it by
/// branch-and-bound. A model with no constraints and no objective is Sat with
/// every variable at its lower bound.
CheckResult check_minimize(const Model& model, const Limits& limits = {});

} // namespace backend
} // namespace comsat

#endif // COMSAT__BACKEND__SOLVER_HPP
