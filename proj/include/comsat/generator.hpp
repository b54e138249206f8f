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

#ifndef COMSAT__GENERATOR_HPP
#define COMSAT__GENERATOR_HPP

#include <comsat/instance.hpp>

#include <cstdint>

namespace comsat {

//==============================================================================
struct GenParams
{
  std::size_t nodes = 15;
  std::size_t vehicles = 3;
  std::size_t jobs = 5;
  /// Percentage of the reference edge count removed, 0 to 100.
  int edge_reduction = 0;
  Time horizon = 20;
  std::uint64_t seed = 1;
};

/// Number of undirected segments the generator lays down for `p`.
std::size_t target_segments(const GenParams& p);

/// A reproducible random instance. Nodes are numbered 1..N with the depot at
/// 1. A random spanning tree plus extra random segments keeps the graph
/// strongly connected. Every job is a pickup followed by a delivery whose
/// window lies inside the horizon.
///
/// Throws std::invalid_argument for parameters outside the supported range.
Instance generate(const GenParams& p);

} // namespace comsat

#endif // COMSAT__GENERATOR_HPP
