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

#ifndef GRIDSEP_GRID_HPP_
#define GRIDSEP_GRID_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gridsep {

// Primal vertices are numbered row-major from 0. Primal edges are numbered in
// lexicographic order of their (sorted) endpoints, which is also the order in
// which cut sets are serialized. A dual edge shares the id of the primal edge
// it crosses. Faces are numbered row-major by their top-left corner, and the
// outer face comes last.
using VertexId = int;
using EdgeId = int;
using DualVertexId = int;

struct GridDims {
  int rows = 0;
  int cols = 0;

  int vertex_count() const { return rows * cols; }
  bool mn_even() const { return (rows * cols) % 2 == 0; }
  bool operator==(const GridDims&) const = default;
};

struct PrimalVertex {
  int i = 1;
  int j = 1;
  auto operator<=>(const PrimalVertex&) const = default;
};

struct DualVertex {
  bool outer = false;
  int i = 0;  // face row, 1..m-1
  int j = 0;  // face col, 1..n-1
  bool operator==(const DualVertex&) const = default;
};

struct Incidence {
  int neighbor;
  EdgeId edge;
};

// Rectangle of faces. Empty when row_lo > row_hi.
struct SubgridWindow {
  int row_lo = 1;
  int row_hi = 0;
  int col_lo = 1;
  int col_hi = 0;

  static SubgridWindow none() { return {}; }
  bool empty() const { return row_lo > row_hi || col_lo > col_hi; }
  int height() const { return empty() ? 0 : row_hi - row_lo + 1; }
  int width() const { return empty() ? 0 : col_hi - col_lo + 1; }
  // Face-to-face dual edges with both endpoints in the window.
  int edge_count() const;
  bool contains(int i, int j) const {
    return !empty() && i >= row_lo && i <= row_hi && j >= col_lo && j <= col_hi;
  }
  bool contains(const SubgridWindow& other) const;
  bool operator==(const SubgridWindow&) const = default;
};

class GridDual {
 public:
  explicit GridDual(GridDims dims);

  const GridDims& dims() const { return dims_; }
  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }

  int vertex_count() const { return dims_.rows * dims_.cols; }
  int edge_count() const { return static_cast<int>(ends_.size()); }
  int face_count() const { return (dims_.rows - 1) * (dims_.cols - 1); }
  int dual_vertex_count() const { return face_count() + 1; }
  DualVertexId outer() const { return face_count(); }

  VertexId vertex_id(PrimalVertex v) const {
    return (v.i - 1) * dims_.cols + (v.j - 1);
  }
  VertexId vertex_id(int i, int j) const { return vertex_id(PrimalVertex{i, j}); }
  PrimalVertex vertex(VertexId v) const {
    return {v / dims_.cols + 1, v % dims_.cols + 1};
  }
  bool in_bounds(int i, int j) const {
    return i >= 1 && i <= dims_.rows && j >= 1 && j <= dims_.cols;
  }
  bool on_border(VertexId v) const;

  // Primal endpoints (a < b) of an edge.
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return ends_[e]; }
  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  std::span<const Incidence> primal_incident(VertexId v) const {
    return primal_adj_[v];
  }

  DualVertexId face_id(int i, int j) const { return (i - 1) * (dims_.cols - 1) + (j - 1); }
  DualVertex dual_vertex(DualVertexId f) const;
  std::pair<DualVertexId, DualVertexId> dual_endpoints(EdgeId e) const {
    return dual_ends_[e];
  }
  DualVertexId dual_other(EdgeId e, DualVertexId f) const {
    return dual_ends_[e].first == f ? dual_ends_[e].second : dual_ends_[e].first;
  }
  std::span<const Incidence> dual_incident(DualVertexId f) const {
    return dual_adj_[f];
  }
  bool touches_outer(EdgeId e) const {
    return dual_ends_[e].first == outer() || dual_ends_[e].second == outer();
  }
  bool in_window(DualVertexId f, const SubgridWindow& w) const;

  std::string vertex_label(VertexId v) const;
  std::string dual_label(DualVertexId f) const;

 private:
  GridDims dims_;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::pair<DualVertexId, DualVertexId>> dual_ends_;
  std::vector<std::vector<Incidence>> primal_adj_;
  std::vector<std::vector<Incidence>> dual_adj_;
};

// Sorted list of dual edge ids.
using DualCycle = std::vector<EdgeId>;

// Two-sided split of the primal vertices. side[v] == 1 marks the interior.
class Partition2 {
 public:
  Partition2() = default;
  explicit Partition2(std::vector<std::uint8_t> side) : side_(std::move(side)) {}
  static Partition2 from_interior(int vertex_count, const std::vector<VertexId>& interior);

  int size() const { return static_cast<int>(side_.size()); }
  bool interior(VertexId v) const { return side_[v] != 0; }
  const std::vector<std::uint8_t>& sides() const { return side_; }
  std::vector<VertexId> interior_vertices() const;
  std::vector<VertexId> exterior_vertices() const;
  int interior_count() const;
  int exterior_count() const { return size() - interior_count(); }
  double imbalance() const {
    const int a = interior_count();
    const int b = size() - a;
    return (a > b ? a - b : b - a) / 2.0;
  }
  bool same_side(VertexId a, VertexId b) const { return side_[a] == side_[b]; }
  // Equality as unordered pairs of sets.
  bool same_split(const Partition2& other) const;
  bool operator==(const Partition2&) const = default;

 private:
  std::vector<std::uint8_t> side_;
};

// True when the vertices with side[v] == value induce a nonempty connected subgraph.
bool side_connected(const GridDual& g, const std::vector<std::uint8_t>& side, std::uint8_t value);
bool is_feasible(const GridDual& g, const Partition2& p);

bool is_dual_cycle(const GridDual& g, const DualCycle& c);
Partition2 cycle_to_partition(const GridDual& g, const DualCycle& c);
DualCycle partition_to_cycle(const GridDual& g, const Partition2& p);
// Cut edges without feasibility checks.
std::vector<EdgeId> cut_edges(const GridDual& g, const std::vector<std::uint8_t>& side);
int enclosed_primal_count(const GridDual& g, const DualCycle& c);
int outer_edge_count(const GridDual& g, std::span<const EdgeId> edges);

// Smallest window holding every face endpoint of the symmetric difference.
SubgridWindow locally_different(const GridDual& g, const std::vector<EdgeId>& a,
                                const std::vector<EdgeId>& b);

}  // namespace gridsep

#endif  // GRIDSEP_GRID_HPP_
