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

#ifndef GRIDSEP_WALKMAP_HPP_
#define GRIDSEP_WALKMAP_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridsep/grid.hpp"
#include "gridsep/walks.hpp"

namespace gridsep {

struct MapContext {
  Walk from_path;  // D
  Walk to_path;    // D'
  SubgridWindow window;
  int beta = 0;
};

struct DirectedEdge {
  int tail;
  int head;
  int id;
  bool operator==(const DirectedEdge&) const = default;
};

struct NoFlipVerdict {
  bool holds = true;
  std::vector<DirectedEdge> reversed;
  std::vector<DirectedEdge> violations;
};

std::vector<DirectedEdge> directed_edges(const Walk& path);
// Edges (p,q) of d whose reverse (q,p) lies on dp, keyed by edge id. Any
// such edge with an endpoint outside the window is a violation.
NoFlipVerdict check_no_flip(std::span<const DirectedEdge> d, std::span<const DirectedEdge> dp,
                            const std::function<bool(int)>& in_window);
NoFlipVerdict check_no_flip(const GridDual& g, const MapContext& ctx);

// Throws window-violation unless D and D' are simple paths with shared
// endpoints outside the window, differ only inside it, the window has at
// most beta edges, and D' uses no more outer edges than D.
void validate_context(const GridDual& g, const MapContext& ctx);

class WalkMapper {
 public:
  WalkMapper(const GridDual& g, MapContext ctx);

  const MapContext& context() const { return ctx_; }
  // W' with loop-erasure D', visiting every vertex of D and D'.
  const Walk& base() const { return base_; }
  Walk map(const Walk& w) const;
  Walk invert(const Walk& w_hat) const;

 private:
  using Assigned = std::deque<std::pair<Walk, DualVertexId>>;

  const GridDual& g_;
  MapContext ctx_;
  Walk base_;
  std::vector<int> rank_d_;
  std::vector<int> rank_base_;
  std::vector<std::size_t> first_base_;
  std::vector<int> ell_;
  std::vector<DualVertexId> base_order_;
};

Walk base_walk(const GridDual& g, const MapContext& ctx);
Walk map_walk(const GridDual& g, const MapContext& ctx, const Walk& w);
Walk invert_map(const GridDual& g, const MapContext& ctx, const Walk& w_hat);

// Simple paths D' from D's start to D's end that avoid the conditioned edge,
// differ from D only inside the window, and use no more outer edges.
std::vector<Walk> companion_paths(const GridDual& g, const Walk& d, EdgeId conditioned,
                                  const SubgridWindow& window);

// Size of the multiset symmetric difference of directed edges.
std::size_t directed_edge_difference(const Walk& a, const Walk& b);
// log P(walk) for the simple random walk on the dual, first vertex given.
double walk_log_probability(const GridDual& g, const Walk& w);

struct BijectionReport {
  std::uint64_t pairs = 0;  // (D, D') contexts checked
  std::uint64_t walks = 0;
  bool injective = true;
  bool round_trip = true;
  bool erasure_ok = true;
  bool outer_ok = true;
  bool probability_ok = true;  // P(map(w)) / P(w) >= 4^(-3 beta^2)
  std::size_t max_edge_diff = 0;
  std::size_t edge_bound = 0;  // 3 beta^2 for the largest window seen
  bool edge_diff_ok = true;
  double min_log_ratio = 0;
  std::vector<std::string> violations;  // first few, human readable

  bool ok() const {
    return injective && round_trip && erasure_ok && outer_ok && probability_ok && edge_diff_ok;
  }
};

// For each companion D' of D in the window, maps every walk of length at
// most max_len with erasure D and checks the bijection's guarantees.
void verify_walk_bijection(const GridDual& g, const Walk& d, EdgeId conditioned,
                           const SubgridWindow& window, int max_len, BijectionReport& report);

}  // namespace gridsep

#endif  // GRIDSEP_WALKMAP_HPP_
