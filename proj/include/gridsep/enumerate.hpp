// Copyright 2026 The gridsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDSEP_ENUMERATE_HPP_
#define GRIDSEP_ENUMERATE_HPP_

#include <climits>
#include <cstdint>
#include <functional>

#include "gridsep/grid.hpp"
#include "gridsep/walks.hpp"

namespace gridsep {

struct EnumBudget {
  int max_walk_len = 12;
  int max_cycle_len = INT_MAX;
  int max_vertices = 64;
  double wall_clock_seconds = 0;  // 0 disables the clock
};

// Visitors return false to stop early. Each enumerator returns the number of
// items visited.
template <class T>
using Visitor = std::function<bool(const T&)>;

// All walks from -> to of length <= max_walk_len, in lexicographic edge order.
std::uint64_t enumerate_walks(const GridDual& g, DualVertexId from, DualVertexId to,
                              const EnumBudget& budget, const Visitor<Walk>& visit);

// All simple dual cycles, each once, as sorted edge lists.
std::uint64_t enumerate_cycles(const GridDual& g, const EnumBudget& budget,
                               const Visitor<DualCycle>& visit);

// Simple paths from -> to with at most max_len edges, never using skip_edge.
std::uint64_t enumerate_simple_paths(const GridDual& g, DualVertexId from, DualVertexId to,
                                     int max_len, EdgeId skip_edge, const Visitor<Walk>& visit);

// Walks of length <= max_len whose loop-erasure is the simple path d. Built
// from the decomposition gamma_1 e_1 gamma_2 ... e_{k-1} gamma_k, where
// gamma_i is a closed walk at d_i avoiding d_1..d_{i-1}.
std::uint64_t enumerate_walks_with_erasure(const GridDual& g, const Walk& d, int max_len,
                                           const Visitor<Walk>& visit);

}  // namespace gridsep

#endif  // GRIDSEP_ENUMERATE_HPP_
