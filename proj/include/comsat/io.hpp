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

#ifndef COMSAT__IO_HPP
#define COMSAT__IO_HPP

#include <comsat/orchestrator.hpp>

namespace comsat {

//==============================================================================
// JSON text for the intermediate and final results. Parsing needs the
// instance to look up task locations and edges, and throws ParseError on bad
// JSON or InstanceError on unknown references.

std::string serialize_routes(const RouteSet& routes);
RouteSet parse_routes(const Instance& inst, std::string_view text);

std::string serialize_assignment(const Assignment& assignment);
Assignment parse_assignment(std::string_view text);

std::string serialize_schedule(const Schedule& schedule);
Schedule parse_schedule(std::string_view text);

std::string serialize_stats(const SolveStats& stats);

/// Read a whole file, throwing InstanceError if it cannot be opened.
std::string read_file(const std::string& path);

} // namespace comsat

#endif // COMSAT__IO_HPP
