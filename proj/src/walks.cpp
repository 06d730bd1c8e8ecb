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

#include "gridsep/walks.hpp"

#include <algorithm>
#include <sstream>

#include "gridsep/error.hpp"

namespace gridsep {

void Walk::append(const Walk& tail) {
  edges.insert(edges.end(), tail.edges.begin(), tail.edges.end());
  vertices.insert(vertices.end(), tail.vertices.begin() + 1, tail.vertices.end());
}

Walk Walk::reversed() const {
  Walk out;
  out.vertices.assign(vertices.rbegin(), vertices.rend());
  out.edges.assign(edges.rbegin(), edges.rend());
  return out;
}

std::size_t WalkHash::operator()(const Walk& w) const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::size_t x) { h = (h ^ x) * 1099511628211ULL; };
  mix(w.vertices.front());
  for (EdgeId e : w.edges) mix(static_cast<std::size_t>(e) + 7);
  return h;
}

bool is_valid_walk(const GridDual& g, const Walk& w) {
  if (w.vertices.empty() || w.vertices.size() != w.edges.size() + 1) return false;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const EdgeId e = w.edges[i];
    if (e < 0 || e >= g.edge_count()) return false;
    const auto [a, b] = g.dual_endpoints(e);
    const DualVertexId p = w.vertices[i];
    const DualVertexId q = w.vertices[i + 1];
    if (!((a == p && b == q) || (a == q && b == p))) return false;
  }
  return true;
}

bool is_simple_path(const Walk& w) {
  std::vector<DualVertexId> v = w.vertices;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

Walk walk_from_edges(const GridDual& g, DualVertexId start, std::span<const EdgeId> edges) {
  Walk w = Walk::at(start);
  for (EdgeId e : edges) {
    const auto [a, b] = g.dual_endpoints(e);
    if (a != w.back() && b != w.back()) {
      throw Error(ErrorKind::kInvalidArgument, "edge does not continue the walk");
    }
    w.step(e, g.dual_other(e, w.back()));
  }
  return w;
}

int outer_steps(const GridDual& g, const Walk& w) {
  return outer_edge_count(g, w.edges);
}

std::vector<std::size_t> loop_ends(const Walk& w) {
  const std::size_t k = w.length();
  std::vector<std::size_t> ends(k + 1, kNoLoop);
  // Current erasure as a stack of (vertex, arrival index).
  std::vector<DualVertexId> stack_v{w.vertices[0]};
  std::vector<std::size_t> stack_i{0};
  DualVertexId max_v = *std::max_element(w.vertices.begin(), w.vertices.end());
  std::vector<int> pos(max_v + 1, -1);
  pos[w.vertices[0]] = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const DualVertexId v = w.vertices[i];
    const int p = pos[v];
    if (p >= 0) {
      ends[stack_i[p]] = i;
      while (static_cast<int>(stack_v.size()) > p + 1) {
        pos[stack_v.back()] = -1;
        stack_v.pop_back();
        stack_i.pop_back();
      }
      stack_i[p] = i;
    } else {
      pos[v] = static_cast<int>(stack_v.size());
      stack_v.push_back(v);
      stack_i.push_back(i);
    }
  }
  return ends;
}

std::vector<Loop> loop_chain(const std::vector<std::size_t>& ends, std::size_t start) {
  std::vector<Loop> out;
  std::size_t at = start;
  while (at < ends.size() && ends[at] != kNoLoop) {
    out.push_back({at, ends[at]});
    at = ends[at];
  }
  return out;
}

LoopDecomposition loop_erase(const Walk& w) {
  const std::size_t k = w.length();
  LoopDecomposition d;
  const std::vector<std::size_t> ends = loop_ends(w);
  // The erasure: start at index 0, skip the loop chain, take the next edge.
  std::size_t at = 0;
  d.erasure = Walk::at(w.vertices[0]);
  for (;;) {
    d.arrival.push_back(at);
    std::vector<Loop> chain = loop_chain(ends, at);
    const std::size_t leave = chain.empty() ? at : chain.back().end;
    d.loops_at.push_back(std::move(chain));
    if (leave == k) break;
    d.erasure.step(w.edges[leave], w.vertices[leave + 1]);
    at = leave + 1;
  }
  return d;
}

Walk materialize(const Walk& w, Loop l) {
  Walk out;
  out.vertices.assign(w.vertices.begin() + l.begin, w.vertices.begin() + l.end + 1);
  out.edges.assign(w.edges.begin() + l.begin, w.edges.begin() + l.end);
  return out;
}

Walk reassemble(const Walk& source, const LoopDecomposition& d) {
  Walk out = Walk::at(d.erasure.vertices[0]);
  for (std::size_t p = 0; p < d.loops_at.size(); ++p) {
    for (const Loop& l : d.loops_at[p]) out.append(materialize(source, l));
    if (p < d.erasure.length()) out.step(d.erasure.edges[p], d.erasure.vertices[p + 1]);
  }
  return out;
}

Walk rotate_closed(const Walk& closed, std::size_t k) {
  const std::size_t len = closed.length();
  if (len == 0 || k % len == 0) return closed;
  k %= len;
  Walk out = Walk::at(closed.vertices[k]);
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t i = (k + t) % len;
    out.step(closed.edges[i], closed.vertices[(i + 1) % len == 0 ? len : i + 1]);
  }
  return out;
}

Walk splice(const Walk& w, const Walk& closed, std::size_t pos) {
  if (pos >= w.vertices.size()) throw Error(ErrorKind::kInvalidArgument, "splice position out of range");
  if (closed.vertices.front() != closed.vertices.back()) {
    throw Error(ErrorKind::kInvalidArgument, "spliced walk is not closed");
  }
  const DualVertexId u = w.vertices[pos];
  auto it = std::find(closed.vertices.begin(), closed.vertices.end(), u);
  if (it == closed.vertices.end()) {
    throw Error(ErrorKind::kVertexNotOnLoop, "splice vertex does not appear on the loop");
  }
  const Walk rot = rotate_closed(closed, static_cast<std::size_t>(it - closed.vertices.begin()));
  Walk out;
  out.vertices.assign(w.vertices.begin(), w.vertices.begin() + pos + 1);
  out.edges.assign(w.edges.begin(), w.edges.begin() + pos);
  out.append(rot);
  out.edges.insert(out.edges.end(), w.edges.begin() + pos, w.edges.end());
  out.vertices.insert(out.vertices.end(), w.vertices.begin() + pos + 1, w.vertices.end());
  return out;
}

std::vector<std::size_t> breakdown(const LoopSequence& s) {
  // Repeatedly take the last occurrence of the minimum of what remains.
  std::vector<std::size_t> out;
  std::size_t from = 0;
  while (from < s.size()) {
    int best = kPhi;
    std::size_t where = s.size();
    for (std::size_t i = from; i < s.size(); ++i) {
      if (s[i] != kPhi && s[i] <= best) {
        best = s[i];
        where = i;
      }
    }
    if (where == s.size()) break;
    out.push_back(where);
    from = where + 1;
  }
  return out;
}

std::vector<int> first_appearance(const Walk& w, int vertex_count) {
  std::vector<int> rank(vertex_count, -1);
  int next = 0;
  for (DualVertexId v : w.vertices) {
    if (rank[v] < 0) rank[v] = next++;
  }
  return rank;
}

std::string trace(const GridDual& g, const Walk& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.length(); ++i) {
    os << g.dual_label(w.vertices[i]) << " --" << w.edges[i] << "--> "
       << g.dual_label(w.vertices[i + 1]) << "\n";
  }
  const LoopDecomposition d = loop_erase(w);
  os << "loops:\n";
  for (std::size_t p = 0; p < d.loops_at.size(); ++p) {
    for (const Loop& l : d.loops_at[p]) {
      os << "  at " << g.dual_label(d.erasure.vertices[p]) << " [" << l.begin << ":" << l.end
         << "]\n";
    }
  }
  return os.str();
}

}  // namespace gridsep
