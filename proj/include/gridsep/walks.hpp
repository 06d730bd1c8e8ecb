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

#ifndef GRIDSEP_WALKS_HPP_
#define GRIDSEP_WALKS_HPP_

#include <climits>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gridsep/grid.hpp"

namespace gridsep {

// v_0 e_0 v_1 ... e_{k-1} v_k on the dual graph. A walk that is a simple
// path doubles as a directed path; orientation follows the vertex order.
struct Walk {
  std::vector<DualVertexId> vertices;
  std::vector<EdgeId> edges;

  static Walk at(DualVertexId v) { return Walk{{v}, {}}; }
  std::size_t length() const { return edges.size(); }
  DualVertexId front() const { return vertices.front(); }
  DualVertexId back() const { return vertices.back(); }
  void step(EdgeId e, DualVertexId v) {
    edges.push_back(e);
    vertices.push_back(v);
  }
  // Appends a walk that starts where this one ends.
  void append(const Walk& tail);
  Walk reversed() const;
  bool operator==(const Walk&) const = default;
};

struct WalkHash {
  std::size_t operator()(const Walk& w) const;
};

bool is_valid_walk(const GridDual& g, const Walk& w);
bool is_simple_path(const Walk& w);
Walk walk_from_edges(const GridDual& g, DualVertexId start, std::span<const EdgeId> edges);
int outer_steps(const GridDual& g, const Walk& w);

// W[begin:end] in vertex indices, with w[begin] == w[end].
struct Loop {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Loop&) const = default;
};

struct LoopDecomposition {
  Walk erasure;
  // Walk index of the surviving arrival at each erasure vertex.
  std::vector<std::size_t> arrival;
  // Maximal loops at each erasure position, in walk order.
  std::vector<std::vector<Loop>> loops_at;
};

inline constexpr std::size_t kNoLoop = static_cast<std::size_t>(-1);

LoopDecomposition loop_erase(const Walk& w);
// For each start index j, the end index of the loop starting at j, or kNoLoop.
std::vector<std::size_t> loop_ends(const Walk& w);
// The loops at index `start`: L1 = W[start:i2], L2 = W[i2:i3], ...
std::vector<Loop> loop_chain(const std::vector<std::size_t>& ends, std::size_t start);
Walk materialize(const Walk& w, Loop l);
// Erasure with loops_at re-inserted; equals the source walk.
Walk reassemble(const Walk& source, const LoopDecomposition& d);

// Closed walk read from vertex index k (0 <= k <= length; k == length is k == 0).
Walk rotate_closed(const Walk& closed, std::size_t k);
Walk splice(const Walk& w, const Walk& closed, std::size_t pos);

// Loop-sequence values are ranks in the path order; kPhi marks no path vertex.
using LoopSequence = std::vector<int>;
inline constexpr int kPhi = INT_MAX;
// 0-based indices of the breakdown.
std::vector<std::size_t> breakdown(const LoopSequence& s);

// rank[v] = order of first appearance in w, or -1.
std::vector<int> first_appearance(const Walk& w, int vertex_count);

std::string trace(const GridDual& g, const Walk& w);

}  // namespace gridsep

#endif  // GRIDSEP_WALKS_HPP_
