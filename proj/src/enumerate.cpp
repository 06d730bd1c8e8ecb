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

#include "gridsep/enumerate.hpp"

#include <chrono>

#include "gridsep/error.hpp"

namespace gridsep {
namespace {

class Clock {
 public:
  explicit Clock(double seconds)
      : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}
  void tick() {
    if (seconds_ <= 0 || (++ticks_ & 4095) != 0) return;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (elapsed > seconds_) throw Error(ErrorKind::kBudgetExceeded, "wall-clock cap exceeded");
  }

 private:
  double seconds_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t ticks_ = 0;
};

}  // namespace

std::uint64_t enumerate_walks(const GridDual& g, DualVertexId from, DualVertexId to,
                              const EnumBudget& budget, const Visitor<Walk>& visit) {
  if (budget.max_walk_len < 0) throw Error(ErrorKind::kInvalidArgument, "negative walk budget");
  if (g.dual_vertex_count() > budget.max_vertices) {
    throw Error(ErrorKind::kBudgetExceeded, "dual graph exceeds vertex budget");
  }
  Clock clock(budget.wall_clock_seconds);
  std::uint64_t count = 0;
  bool stop = false;
  Walk w = Walk::at(from);
  std::function<void()> rec = [&]() {
    clock.tick();
    if (w.back() == to) {
      ++count;
      if (!visit(w)) {
        stop = true;
        return;
      }
    }
    if (static_cast<int>(w.length()) == budget.max_walk_len) return;
    // Incidences are stored in increasing edge order.
    for (const Incidence& inc : g.dual_incident(w.back())) {
      w.step(inc.edge, inc.neighbor);
      rec();
      w.edges.pop_back();
      w.vertices.pop_back();
      if (stop) return;
    }
  };
  rec();
  return count;
}

std::uint64_t enumerate_cycles(const GridDual& g, const EnumBudget& budget,
                               const Visitor<DualCycle>& visit) {
  if (g.dual_vertex_count() > budget.max_vertices) {
    throw Error(ErrorKind::kBudgetExceeded, "dual graph exceeds vertex budget");
  }
  Clock clock(budget.wall_clock_seconds);
  const int nv = g.dual_vertex_count();
  std::vector<std::uint8_t> on_path(nv, 0);
  std::vector<EdgeId> path;
  std::uint64_t count = 0;
  bool stop = false;
  // Cycles are rooted at their smallest vertex s; the two traversal
  // directions are told apart by requiring first edge < closing edge.
  for (DualVertexId s = 0; s < nv && !stop; ++s) {
    on_path[s] = 1;
    std::function<void(DualVertexId)> rec = [&](DualVertexId at) {
      clock.tick();
      for (const Incidence& inc : g.dual_incident(at)) {
        if (stop) return;
        const DualVertexId nxt = inc.neighbor;
        if (nxt == s) {
          if (path.empty() || inc.edge == path.back()) continue;
          if (!(path.front() < inc.edge)) continue;
          if (static_cast<int>(path.size()) + 1 > budget.max_cycle_len) continue;
          DualCycle c = path;
          c.push_back(inc.edge);
          std::sort(c.begin(), c.end());
          ++count;
          if (!visit(c)) stop = true;
          continue;
        }
        if (nxt < s || on_path[nxt]) continue;
        if (static_cast<int>(path.size()) + 2 > budget.max_cycle_len) continue;
        on_path[nxt] = 1;
        path.push_back(inc.edge);
        rec(nxt);
        path.pop_back();
        on_path[nxt] = 0;
      }
    };
    rec(s);
    on_path[s] = 0;
  }
  return count;
}

std::uint64_t enumerate_simple_paths(const GridDual& g, DualVertexId from, DualVertexId to,
                                     int max_len, EdgeId skip_edge, const Visitor<Walk>& visit) {
  std::vector<std::uint8_t> on_path(g.dual_vertex_count(), 0);
  Walk w = Walk::at(from);
  on_path[from] = 1;
  std::uint64_t count = 0;
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (w.back() == to) {
      ++count;
      if (!visit(w)) stop = true;
      return;
    }
    if (static_cast<int>(w.length()) == max_len) return;
    for (const Incidence& inc : g.dual_incident(w.back())) {
      if (inc.edge == skip_edge || on_path[inc.neighbor]) continue;
      on_path[inc.neighbor] = 1;
      w.step(inc.edge, inc.neighbor);
      rec();
      w.edges.pop_back();
      w.vertices.pop_back();
      on_path[inc.neighbor] = 0;
      if (stop) return;
    }
  };
  rec();
  return count;
}

std::uint64_t enumerate_walks_with_erasure(const GridDual& g, const Walk& d, int max_len,
                                           const Visitor<Walk>& visit) {
  if (!is_simple_path(d) || !is_valid_walk(g, d)) {
    throw Error(ErrorKind::kInvalidArgument, "erasure must be a simple path");
  }
  const int k = static_cast<int>(d.length());
  if (k > max_len) return 0;
  std::vector<std::uint8_t> forbidden(g.dual_vertex_count(), 0);
  Walk w = Walk::at(d.vertices[0]);
  std::uint64_t count = 0;
  bool stop = false;
  // pos: index of the erasure vertex whose closed walk is being built.
  std::function<void(int, int)> segment = [&](int pos, int slack) {
    const DualVertexId home = d.vertices[pos];
    std::function<void(int)> closed = [&](int left) {
      if (stop) return;
      if (w.back() == home) {
        if (pos == k) {
          ++count;
          if (!visit(w)) stop = true;
        } else {
          forbidden[home] = 1;
          w.step(d.edges[pos], d.vertices[pos + 1]);
          segment(pos + 1, left);
          w.edges.pop_back();
          w.vertices.pop_back();
          forbidden[home] = 0;
        }
        if (stop) return;
      }
      if (left == 0) return;
      for (const Incidence& inc : g.dual_incident(w.back())) {
        if (forbidden[inc.neighbor]) continue;
        w.step(inc.edge, inc.neighbor);
        closed(left - 1);
        w.edges.pop_back();
        w.vertices.pop_back();
        if (stop) return;
      }
    };
    closed(slack);
  };
  segment(0, max_len - k);
  return count;
}

}  // namespace gridsep
