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

#ifndef COMSAT__VALIDATOR_HPP
#define COMSAT__VALIDATOR_HPP

#include <comsat/scheduler.hpp>

namespace comsat {

//==============================================================================
enum class ViolationKind
{
  Window,
  NodeCapacity,
  EdgeCapacity,
  Swap,
  Charge,
  Eligibility,
  Continuity,
  Precedence,
  Coverage,
  Horizon
};

const char* to_string(ViolationKind kind);

struct Violation
{
  ViolationKind kind;
  Time time;
  std::string entities;
};

struct ValidationReport
{
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

/// The schedule or assignment refers to things that do not exist, so it
/// cannot be judged at all.
class StructuralError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Replay a schedule one time step at a time and report every broken
/// requirement: windows, job order and coverage, eligibility, charge,
/// capacities of nodes and edges, head-on passing and the horizon.
ValidationReport validate(
  const Instance& inst,
  const Schedule& schedule,
  const Assignment& assignment);

} // namespace comsat

#endif // COMSAT__VALIDATOR_HPP
