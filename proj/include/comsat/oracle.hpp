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

#ifndef COMSAT__ORACLE_HPP
#define COMSAT__ORACLE_HPP

#include <comsat/instance.hpp>

#include <stdexcept>

namespace comsat {

//==============================================================================
enum class Feasibility
{
  Feasible,
  Infeasible
};

const char* to_string(Feasibility f);

/// The instance is too large for exhaustive search.
class OracleRefused : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct OracleCaps
{
  std::size_t nodes = 6;
  std::size_t vehicles = 2;
  std::size_t jobs = 2;
  Time horizon = 15;
  /// Distinct states the search may visit before giving up.
  std::size_t max_states = 10'000'000;
};

/// Decide feasibility by trying every way the vehicles can move, one time
/// step at a time: wait at a node, or set off along an edge.
///
/// A vehicle serves a task while it stands at the task location within the
/// window. Once it serves a task of a job it serves the rest of that job
/// before anything else. A route runs from the depot until the vehicle
/// closes it back at the depot with no job half done. Each route is at most
/// the operating range long, and leaves only after the vehicle has waited at
/// the depot for the charge coefficient times its length since the previous
/// route closed; the first route needs no waiting. Node and edge capacities
/// and head-on passing are enforced as the validator replays them. All
/// vehicles must be back at the depot with every task served by the horizon.
///
/// Throws OracleRefused above the caps.
Feasibility brute_oracle(const Instance& inst, const OracleCaps& caps = {});

} // namespace comsat

#endif // COMSAT__ORACLE_HPP
