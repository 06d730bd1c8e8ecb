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

#include "gridsep/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "gridsep/error.hpp"

namespace gridsep {

int SubgridWindow::edge_count() const {
  if (empty()) return 0;
  const int r = height();
  const int c = width();
  return r * (c - 1) + c * (r - 1);
}

bool SubgridWindow::contains(const SubgridWindow& other) const {
  if (other.empty()) return true;
  if (empty()) return false;
  return other.row_lo >= row_lo && other.row_hi <= row_hi &&
         other.col_lo >= col_lo && other.col_hi <= col_hi;
}

GridDual::GridDual(GridDims dims) : dims_(dims) {
  if (dims.rows < 2 || dims.cols < 2) {
    throw Error(ErrorKind::kDimensionTooSmall,
                "grid must be at least 2x2, got " + std::to_string(dims.rows) +
                    "x" + std::to_string(dims.cols));
  }
  const int m = dims.rows;
  const int n = dims.cols;
  primal_adj_.resize(m * n);
  dual_adj_.resize(face_count() + 1);
  auto add = [&](int i1, int j1, int i2, int j2, DualVertexId f1, DualVertexId f2) {
    const EdgeId e = static_cast<EdgeId>(ends_.size());
    const VertexId a = vertex_id(i1, j1);
    const VertexId b = vertex_id(i2, j2);
    ends_.push_back({a, b});
    dual_ends_.push_back({std::min(f1, f2), std::max(f1, f2)});
    primal_adj_[a].push_back({b, e});
    primal_adj_[b].push_back({a, e});
    dual_adj_[f1].push_back({f2, e});
    dual_adj_[f2].push_back({f1, e});
  };
  const DualVertexId out = outer();
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (j < n) {
        const DualVertexId above = i > 1 ? face_id(i - 1, j) : out;
        const DualVertexId below = i < m ? face_id(i, j) : out;
        add(i, j, i, j + 1, above, below);
      }
      if (i < m) {
        const DualVertexId left = j > 1 ? face_id(i, j - 1) : out;
        const DualVertexId right = j < n ? face_id(i, j) : out;
        add(i, j, i + 1, j, left, right);
      }
    }
  }
}

bool GridDual::on_border(VertexId v) const {
  const PrimalVertex p = vertex(v);
  return p.i == 1 || p.j == 1 || p.i == dims_.rows || p.j == dims_.cols;
}

std::optional<EdgeId> GridDual::edge_between(VertexId a, VertexId b) const {
  for (const Incidence& inc : primal_adj_[a]) {
    if (inc.neighbor == b) return inc.edge;
  }
  return std::nullopt;
}

DualVertex GridDual::dual_vertex(DualVertexId f) const {
  if (f == outer()) return {true, 0, 0};
  return {false, f / (dims_.cols - 1) + 1, f % (dims_.cols - 1) + 1};
}

bool GridDual::in_window(DualVertexId f, const SubgridWindow& w) const {
  if (f == outer()) return false;
  const DualVertex d = dual_vertex(f);
  return w.contains(d.i, d.j);
}

std::string GridDual::vertex_label(VertexId v) const {
  const PrimalVertex p = vertex(v);
  return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

std::string GridDual::dual_label(DualVertexId f) const {
  if (f == outer()) return "O";
  const DualVertex d = dual_vertex(f);
  return "F(" + std::to_string(d.i) + "," + std::to_string(d.j) + ")";
}

Partition2 Partition2::from_interior(int vertex_count, const std::vector<VertexId>& interior) {
  std::vector<std::uint8_t> side(vertex_count, 0);
  for (VertexId v : interior) side[v] = 1;
  return Partition2(std::move(side));
}

std::vector<VertexId> Partition2::interior_vertices() const {
  std::vector<VertexId> out;
  for (int v = 0; v < size(); ++v) {
    if (side_[v]) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> Partition2::exterior_vertices() const {
  std::vector<VertexId> out;
  for (int v = 0; v < size(); ++v) {
    if (!side_[v]) out.push_back(v);
  }
  return out;
}

int Partition2::interior_count() const {
  return static_cast<int>(std::count(side_.begin(), side_.end(), std::uint8_t{1}));
}

bool Partition2::same_split(const Partition2& other) const {
  if (side_.size() != other.side_.size()) return false;
  if (side_ == other.side_) return true;
  for (std::size_t v = 0; v < side_.size(); ++v) {
    if (side_[v] == other.side_[v]) return false;
  }
  return true;
}

bool side_connected(const GridDual& g, const std::vector<std::uint8_t>& side, std::uint8_t value) {
  const int n = g.vertex_count();
  int start = -1;
  int total = 0;
  for (int v = 0; v < n; ++v) {
    if (side[v] == value) {
      if (start < 0) start = v;
      ++total;
    }
  }
  if (start < 0) return false;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.primal_incident(v)) {
      if (!seen[inc.neighbor] && side[inc.neighbor] == value) {
        seen[inc.neighbor] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == total;
}

bool is_feasible(const GridDual& g, const Partition2& p) {
  if (p.size() != g.vertex_count()) return false;
  return side_connected(g, p.sides(), 1) && side_connected(g, p.sides(), 0);
}

std::vector<EdgeId> cut_edges(const GridDual& g, const std::vector<std::uint8_t>& side) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    if (side[a] != side[b]) out.push_back(e);
  }
  return out;
}

bool is_dual_cycle(const GridDual& g, const DualCycle& c) {
  if (c.size() < 2) return false;
  std::vector<EdgeId> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (EdgeId e : sorted) {
    if (e < 0 || e >= g.edge_count()) return false;
  }
  if (sorted.size() == 2 && g.dual_endpoints(sorted[0]) != g.dual_endpoints(sorted[1])) {
    return false;
  }
  std::vector<int> degree(g.dual_vertex_count(), 0);
  for (EdgeId e : sorted) {
    const auto [a, b] = g.dual_endpoints(e);
    ++degree[a];
    ++degree[b];
  }
  for (int d : degree) {
    if (d != 0 && d != 2) return false;
  }
  // Walk the cycle from the first edge; it must consume every edge.
  std::vector<std::uint8_t> used(g.edge_count(), 0);
  std::vector<std::uint8_t> member(g.edge_count(), 0);
  for (EdgeId e : sorted) member[e] = 1;
  EdgeId e = sorted[0];
  DualVertexId at = g.dual_endpoints(e).second;
  std::size_t steps = 0;
  for (;;) {
    used[e] = 1;
    ++steps;
    EdgeId next = -1;
    for (const Incidence& inc : g.dual_incident(at)) {
      if (member[inc.edge] && !used[inc.edge]) {
        next = inc.edge;
        break;
      }
    }
    if (next < 0) break;
    at = g.dual_other(next, at);
    e = next;
  }
  return steps == sorted.size();
}

Partition2 cycle_to_partition(const GridDual& g, const DualCycle& c) {
  if (!is_dual_cycle(g, c)) throw Error(ErrorKind::kNotACycle, "edge set is not a simple dual cycle");
  const int n = g.vertex_count();
  std::vector<std::uint8_t> wall(g.edge_count(), 0);
  bool uses_outer = false;
  for (EdgeId e : c) {
    wall[e] = 1;
    uses_outer = uses_outer || g.touches_outer(e);
  }
  // Flood fill from vertex 0, the lexicographically smallest corner.
  std::vector<std::uint8_t> reach(n, 0);
  std::vector<int> stack{0};
  reach[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.primal_incident(v)) {
      if (!wall[inc.edge] && !reach[inc.neighbor]) {
        reach[inc.neighbor] = 1;
        ++count;
        stack.push_back(inc.neighbor);
      }
    }
  }
  if (count == n) throw Error(ErrorKind::kNotACycle, "cycle does not separate the grid");
  std::vector<std::uint8_t> side(n, 0);
  const bool corner_side_is_interior = uses_outer && count <= n - count;
  for (int v = 0; v < n; ++v) {
    side[v] = (reach[v] != 0) == corner_side_is_interior ? 1 : 0;
  }
  Partition2 p(std::move(side));
  if (!is_feasible(g, p) || cut_edges(g, p.sides()) != [&] {
        DualCycle s = c;
        std::sort(s.begin(), s.end());
        return s;
      }()) {
    throw Error(ErrorKind::kNotACycle, "cycle does not bound a feasible partition");
  }
  return p;
}

DualCycle partition_to_cycle(const GridDual& g, const Partition2& p) {
  if (p.size() != g.vertex_count()) {
    throw Error(ErrorKind::kInfeasiblePartition, "partition size does not match grid");
  }
  if (!is_feasible(g, p)) {
    throw Error(ErrorKind::kInfeasiblePartition, "a side is empty or disconnected");
  }
  return cut_edges(g, p.sides());
}

int enclosed_primal_count(const GridDual& g, const DualCycle& c) {
  return cycle_to_partition(g, c).interior_count();
}

int outer_edge_count(const GridDual& g, std::span<const EdgeId> edges) {
  int count = 0;
  for (EdgeId e : edges) count += g.touches_outer(e) ? 1 : 0;
  return count;
}

SubgridWindow locally_different(const GridDual& g, const std::vector<EdgeId>& a,
                                const std::vector<EdgeId>& b) {
  std::vector<EdgeId> sa = a;
  std::vector<EdgeId> sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<EdgeId> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(diff));
  SubgridWindow w{g.rows(), 0, g.cols(), 0};
  bool any = false;
  for (EdgeId e : diff) {
    const auto [f1, f2] = g.dual_endpoints(e);
    for (DualVertexId f : {f1, f2}) {
      if (f == g.outer()) continue;
      const DualVertex d = g.dual_vertex(f);
      w.row_lo = std::min(w.row_lo, d.i);
      w.row_hi = std::max(w.row_hi, d.i);
      w.col_lo = std::min(w.col_lo, d.j);
      w.col_hi = std::max(w.col_hi, d.j);
      any = true;
    }
  }
  return any ? w : SubgridWindow::none();
}

}  // namespace gridsep
