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

#include "gridsep/walkmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <unordered_set>

#include "gridsep/enumerate.hpp"
#include "gridsep/error.hpp"

namespace gridsep {
namespace {

// Working walk with a flag per vertex position: 1 for positions that came
// from the starting walk, 0 for positions added by splices.
struct TaggedWalk {
  Walk w;
  std::vector<std::uint8_t> original;

  explicit TaggedWalk(Walk start) : w(std::move(start)), original(w.vertices.size(), 1) {}

  std::size_t first_original(DualVertexId u) const {
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
      if (original[i] && w.vertices[i] == u) return i;
    }
    throw Error(ErrorKind::kNotInImage, "vertex missing from the working walk");
  }

  void splice_at(std::size_t pos, const Walk& closed) {
    const DualVertexId u = w.vertices[pos];
    auto it = std::find(closed.vertices.begin(), closed.vertices.end(), u);
    if (it == closed.vertices.end()) {
      throw Error(ErrorKind::kVertexNotOnLoop, "splice vertex does not appear on the loop");
    }
    const Walk rot = rotate_closed(closed, static_cast<std::size_t>(it - closed.vertices.begin()));
    w.edges.insert(w.edges.begin() + pos, rot.edges.begin(), rot.edges.end());
    w.vertices.insert(w.vertices.begin() + pos + 1, rot.vertices.begin() + 1, rot.vertices.end());
    original.insert(original.begin() + pos + 1, rot.length(), 0);
  }
};

Walk prefix(const Walk& w, std::size_t upto) {
  Walk out;
  out.vertices.assign(w.vertices.begin(), w.vertices.begin() + upto + 1);
  out.edges.assign(w.edges.begin(), w.edges.begin() + upto);
  return out;
}

Walk suffix(const Walk& w, std::size_t from) {
  Walk out;
  out.vertices.assign(w.vertices.begin() + from, w.vertices.end());
  out.edges.assign(w.edges.begin() + from, w.edges.end());
  return out;
}

Walk sub_walk(const Walk& w, std::size_t from, std::size_t to) {
  Walk out;
  out.vertices.assign(w.vertices.begin() + from, w.vertices.begin() + to + 1);
  out.edges.assign(w.edges.begin() + from, w.edges.begin() + to);
  return out;
}

// Shortest path by BFS over allowed vertices; neighbors in edge order.
std::optional<Walk> bfs_path(const GridDual& g, DualVertexId from, DualVertexId to,
                             const std::function<bool(DualVertexId)>& allowed) {
  const int nv = g.dual_vertex_count();
  std::vector<EdgeId> via(nv, -1);
  std::vector<std::uint8_t> seen(nv, 0);
  std::vector<DualVertexId> queue{from};
  seen[from] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const DualVertexId v = queue[h];
    if (v == to) break;
    for (const Incidence& inc : g.dual_incident(v)) {
      if (seen[inc.neighbor] || !allowed(inc.neighbor)) continue;
      seen[inc.neighbor] = 1;
      via[inc.neighbor] = inc.edge;
      queue.push_back(inc.neighbor);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<EdgeId> rev;
  for (DualVertexId v = to; v != from; v = g.dual_other(via[v], v)) rev.push_back(via[v]);
  std::reverse(rev.begin(), rev.end());
  return walk_from_edges(g, from, rev);
}

Walk build_base(const GridDual& g, const MapContext& ctx) {
  const Walk& d = ctx.from_path;
  const Walk& dp = ctx.to_path;
  if (d == dp) return d;
  const SubgridWindow& h = ctx.window;
  auto in_h = [&](DualVertexId f) { return g.in_window(f, h); };
  auto on_ring = [&](DualVertexId f) {
    if (!in_h(f)) return false;
    const DualVertex v = g.dual_vertex(f);
    return v.i == h.row_lo || v.i == h.row_hi || v.j == h.col_lo || v.j == h.col_hi;
  };
  auto first_in = [&](const Walk& w) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
      if (in_h(w.vertices[i])) return i;
    }
    return std::nullopt;
  };
  const auto ia = first_in(dp);
  const auto i0 = first_in(d);
  if (!ia || !i0) throw Error(ErrorKind::kWindowViolation, "paths differ but do not enter the window");
  std::size_t i_n = *i0;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    if (in_h(d.vertices[i])) i_n = i;
  }
  const bool outer_on_dp =
      std::find(dp.vertices.begin(), dp.vertices.end(), g.outer()) != dp.vertices.end();
  auto ring_path = [&](DualVertexId p, DualVertexId q) {
    auto path = bfs_path(g, p, q, on_ring);
    if (!path) path = bfs_path(g, p, q, in_h);
    if (!path) throw Error(ErrorKind::kWindowViolation, "window is not connected");
    return *path;
  };

  // Forward pass F from p_0 to p_N, with the reverse replacement for outer detours.
  struct Segment {
    Walk forward;
    std::optional<Walk> backward;
  };
  std::vector<Segment> segments;
  std::size_t idx = *i0;
  while (idx < i_n) {
    if (in_h(d.vertices[idx + 1])) {
      segments.push_back({sub_walk(d, idx, idx + 1), std::nullopt});
      ++idx;
      continue;
    }
    std::size_t r = idx + 1;
    while (!in_h(d.vertices[r])) ++r;
    const DualVertexId p = d.vertices[idx];
    const DualVertexId q = d.vertices[r];
    if (r == idx + 2 && d.vertices[idx + 1] == g.outer() && !outer_on_dp) {
      segments.push_back({sub_walk(d, idx, r), ring_path(p, q)});
    } else {
      segments.push_back({ring_path(p, q), std::nullopt});
    }
    idx = r;
  }

  const DualVertexId a = dp.vertices[*ia];
  const DualVertexId p0 = d.vertices[*i0];
  auto approach = bfs_path(g, a, p0, in_h);
  if (!approach) throw Error(ErrorKind::kWindowViolation, "window is not connected");

  Walk out = prefix(dp, *ia);
  out.append(*approach);
  for (const Segment& s : segments) out.append(s.forward);
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    out.append((it->backward ? *it->backward : it->forward).reversed());
  }
  out.append(approach->reversed());
  out.append(suffix(dp, *ia));
  return out;
}

}  // namespace

std::vector<DirectedEdge> directed_edges(const Walk& path) {
  std::vector<DirectedEdge> out;
  for (std::size_t i = 0; i < path.length(); ++i) {
    out.push_back({path.vertices[i], path.vertices[i + 1], path.edges[i]});
  }
  return out;
}

NoFlipVerdict check_no_flip(std::span<const DirectedEdge> d, std::span<const DirectedEdge> dp,
                            const std::function<bool(int)>& in_window) {
  NoFlipVerdict v;
  for (const DirectedEdge& e : d) {
    for (const DirectedEdge& f : dp) {
      if (f.id == e.id && f.tail == e.head && f.head == e.tail && e.tail != e.head) {
        v.reversed.push_back(e);
        if (!in_window(e.tail) || !in_window(e.head)) v.violations.push_back(e);
      }
    }
  }
  v.holds = v.violations.empty();
  return v;
}

NoFlipVerdict check_no_flip(const GridDual& g, const MapContext& ctx) {
  const auto d = directed_edges(ctx.from_path);
  const auto dp = directed_edges(ctx.to_path);
  // Edges at the outer vertex are exempt from locality, as in the definition
  // of locally different edge sets.
  return check_no_flip(d, dp, [&](int f) { return f == g.outer() || g.in_window(f, ctx.window); });
}

void validate_context(const GridDual& g, const MapContext& ctx) {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::kWindowViolation, why); };
  const Walk& d = ctx.from_path;
  const Walk& dp = ctx.to_path;
  if (!is_valid_walk(g, d) || !is_simple_path(d)) fail("from_path is not a simple dual path");
  if (!is_valid_walk(g, dp) || !is_simple_path(dp)) fail("to_path is not a simple dual path");
  if (d.front() != dp.front() || d.back() != dp.back()) fail("paths do not share endpoints");
  if (d == dp) return;
  if (ctx.window.empty()) fail("paths differ but the window is empty");
  if (g.in_window(d.front(), ctx.window) || g.in_window(d.back(), ctx.window)) {
    fail("path endpoints lie inside the window");
  }
  if (!ctx.window.contains(locally_different(g, d.edges, dp.edges))) {
    fail("paths differ outside the window");
  }
  if (ctx.window.edge_count() > ctx.beta) fail("window has more than beta edges");
  if (outer_steps(g, dp) > outer_steps(g, d)) fail("to_path uses more outer edges than from_path");
}

WalkMapper::WalkMapper(const GridDual& g, MapContext ctx) : g_(g), ctx_(std::move(ctx)) {
  validate_context(g_, ctx_);
  base_ = build_base(g_, ctx_);
  const int nv = g_.dual_vertex_count();
  rank_d_ = first_appearance(ctx_.from_path, nv);
  rank_base_ = first_appearance(base_, nv);
  first_base_.assign(nv, kNoLoop);
  for (std::size_t i = 0; i < base_.vertices.size(); ++i) {
    const DualVertexId v = base_.vertices[i];
    if (first_base_[v] == kNoLoop) {
      first_base_[v] = i;
      base_order_.push_back(v);
    }
  }
  const std::vector<std::size_t> ends = loop_ends(base_);
  ell_.assign(nv, 0);
  for (DualVertexId v : base_order_) {
    ell_[v] = static_cast<int>(loop_chain(ends, first_base_[v]).size());
  }
}

Walk WalkMapper::map(const Walk& w) const {
  const LoopDecomposition dec = loop_erase(w);
  if (dec.erasure != ctx_.from_path) {
    throw Error(ErrorKind::kErasureMismatch, "walk's loop-erasure is not from_path");
  }
  std::vector<Assigned> assigned(g_.dual_vertex_count());
  // Phase 1: hand each suffix of the loop list at v to the earliest base
  // vertex it contains.
  for (std::size_t l = 0; l < dec.loops_at.size(); ++l) {
    const std::vector<Loop>& loops = dec.loops_at[l];
    if (loops.empty()) continue;
    const DualVertexId v = ctx_.from_path.vertices[l];
    std::vector<std::vector<std::uint8_t>> contains(loops.size());
    std::vector<DualVertexId> u_set;
    for (std::size_t j = 0; j < loops.size(); ++j) {
      contains[j].assign(g_.dual_vertex_count(), 0);
      for (std::size_t t = loops[j].begin; t <= loops[j].end; ++t) {
        const DualVertexId x = w.vertices[t];
        contains[j][x] = 1;
        if (rank_base_[x] >= 0) u_set.push_back(x);
      }
    }
    std::sort(u_set.begin(), u_set.end(),
              [&](DualVertexId a, DualVertexId b) { return rank_base_[a] < rank_base_[b]; });
    u_set.erase(std::unique(u_set.begin(), u_set.end()), u_set.end());
    std::size_t j_max = loops.size();
    for (DualVertexId u : u_set) {
      if (j_max == 0) break;
      std::size_t j = 0;
      while (j < j_max && !contains[j][u]) ++j;
      if (j == j_max) continue;
      assigned[u].push_front({sub_walk(w, loops[j].begin, loops[j_max - 1].end), v});
      j_max = j;
    }
  }
  // Phase 2: splice at the earliest original appearance of each u.
  TaggedWalk out(base_);
  for (DualVertexId u : base_order_) {
    for (const auto& [m, v] : assigned[u]) {
      out.splice_at(out.first_original(u), m);
    }
  }
  return out.w;
}

Walk WalkMapper::invert(const Walk& w_hat) const {
  if (!is_valid_walk(g_, w_hat)) throw Error(ErrorKind::kNotInImage, "input is not a walk");
  Walk rest = w_hat;
  std::vector<Assigned> assigned(g_.dual_vertex_count());
  for (DualVertexId u : base_order_) {
    auto it = std::find(rest.vertices.begin(), rest.vertices.end(), u);
    if (it == rest.vertices.end()) throw Error(ErrorKind::kNotInImage, "base vertex missing");
    const std::size_t i = static_cast<std::size_t>(it - rest.vertices.begin());
    const std::vector<Loop> chain = loop_chain(loop_ends(rest), i);
    const std::size_t m = chain.size();
    const std::size_t ell = static_cast<std::size_t>(ell_[u]);
    if (m <= ell) continue;
    const std::size_t count = m - ell;
    LoopSequence seq(count, kPhi);
    for (std::size_t p = 0; p < count; ++p) {
      for (std::size_t t = chain[p].begin; t <= chain[p].end; ++t) {
        const int r = rank_d_[rest.vertices[t]];
        if (r >= 0) seq[p] = std::min(seq[p], r);
      }
    }
    const std::vector<std::size_t> bd = breakdown(seq);
    if (bd.empty() || bd.back() != count - 1) {
      throw Error(ErrorKind::kNotInImage, "loop-sequence breakdown does not cover the loops");
    }
    std::size_t prev = 0;
    for (std::size_t jp : bd) {
      const Walk n = sub_walk(rest, chain[prev].begin, chain[jp].end);
      const DualVertexId v = ctx_.from_path.vertices[seq[jp]];
      std::size_t k = 0;
      for (std::size_t t = 1; t < n.vertices.size(); ++t) {
        if (n.vertices[t] == v) k = t;
      }
      assigned[u].push_front({rotate_closed(n, k), v});
      prev = jp + 1;
    }
    Walk trimmed = prefix(rest, i);
    trimmed.append(suffix(rest, chain[count - 1].end));
    rest = std::move(trimmed);
  }
  if (rest != base_) throw Error(ErrorKind::kNotInImage, "residual walk differs from the base walk");

  // Rebuild from D: at each v, the assigned walks ordered by u descending.
  std::vector<std::vector<std::pair<int, const Walk*>>> by_v(g_.dual_vertex_count());
  for (DualVertexId u : base_order_) {
    for (const auto& [m, v] : assigned[u]) by_v[v].push_back({rank_base_[u], &m});
  }
  TaggedWalk out(ctx_.from_path);
  for (DualVertexId v : ctx_.from_path.vertices) {
    auto& list = by_v[v];
    if (list.empty()) continue;
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    Walk m = *list.front().second;
    for (std::size_t t = 1; t < list.size(); ++t) m.append(*list[t].second);
    out.splice_at(out.first_original(v), m);
  }
  if (loop_erase(out.w).erasure != ctx_.from_path) {
    throw Error(ErrorKind::kNotInImage, "reconstruction has the wrong loop-erasure");
  }
  return out.w;
}

Walk base_walk(const GridDual& g, const MapContext& ctx) { return WalkMapper(g, ctx).base(); }

Walk map_walk(const GridDual& g, const MapContext& ctx, const Walk& w) {
  return WalkMapper(g, ctx).map(w);
}

Walk invert_map(const GridDual& g, const MapContext& ctx, const Walk& w_hat) {
  return WalkMapper(g, ctx).invert(w_hat);
}

std::vector<Walk> companion_paths(const GridDual& g, const Walk& d, EdgeId conditioned,
                                  const SubgridWindow& window) {
  std::vector<Walk> out;
  const int d_outer = outer_steps(g, d);
  enumerate_simple_paths(g, d.front(), d.back(), g.dual_vertex_count(), conditioned,
                         [&](const Walk& p) {
                           if (window.contains(locally_different(g, d.edges, p.edges)) &&
                               outer_steps(g, p) <= d_outer) {
                             out.push_back(p);
                           }
                           return true;
                         });
  return out;
}

std::size_t directed_edge_difference(const Walk& a, const Walk& b) {
  std::map<std::pair<EdgeId, int>, long> count;
  for (std::size_t i = 0; i < a.length(); ++i) {
    ++count[{a.edges[i], a.vertices[i] < a.vertices[i + 1] ? 0 : 1}];
  }
  for (std::size_t i = 0; i < b.length(); ++i) {
    --count[{b.edges[i], b.vertices[i] < b.vertices[i + 1] ? 0 : 1}];
  }
  std::size_t diff = 0;
  for (const auto& [key, c] : count) diff += static_cast<std::size_t>(c < 0 ? -c : c);
  return diff;
}

double walk_log_probability(const GridDual& g, const Walk& w) {
  double lp = 0;
  for (std::size_t i = 0; i < w.length(); ++i) {
    lp -= std::log(static_cast<double>(g.dual_incident(w.vertices[i]).size()));
  }
  return lp;
}

namespace {

std::string walk_string(const GridDual& g, const Walk& w) {
  std::string out;
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    if (i > 0) out += ' ';
    out += g.dual_label(w.vertices[i]);
  }
  return out;
}

}  // namespace

void verify_walk_bijection(const GridDual& g, const Walk& d, EdgeId conditioned,
                           const SubgridWindow& window, int max_len, BijectionReport& report) {
  const int beta = window.edge_count();
  const std::size_t bound = 3 * static_cast<std::size_t>(beta) * static_cast<std::size_t>(beta);
  const double log_floor = -static_cast<double>(bound) * std::log(4.0) - 1e-9;
  report.edge_bound = std::max(report.edge_bound, bound);
  auto note = [&](const std::string& what, const Walk& dp, const Walk& w) {
    if (report.violations.size() < 16) {
      report.violations.push_back(what + ": D'=[" + walk_string(g, dp) + "] w=[" + walk_string(g, w) + "]");
    }
  };
  for (const Walk& dp : companion_paths(g, d, conditioned, window)) {
    ++report.pairs;
    const WalkMapper mapper(g, MapContext{d, dp, window, beta});
    std::unordered_set<Walk, WalkHash> seen;
    enumerate_walks_with_erasure(g, d, max_len, [&](const Walk& w) {
      ++report.walks;
      Walk w_hat;
      try {
        w_hat = mapper.map(w);
      } catch (const Error& e) {
        report.erasure_ok = false;
        note(std::string("map failed (") + e.what() + ")", dp, w);
        return true;
      }
      if (!seen.insert(w_hat).second) {
        report.injective = false;
        note("collision", dp, w);
      }
      if (loop_erase(w_hat).erasure != dp) {
        report.erasure_ok = false;
        note("erasure", dp, w);
      }
      const std::size_t diff = directed_edge_difference(w, w_hat);
      report.max_edge_diff = std::max(report.max_edge_diff, diff);
      if (diff > bound) {
        report.edge_diff_ok = false;
        note("edge difference", dp, w);
      }
      if (outer_steps(g, w_hat) > outer_steps(g, w)) {
        report.outer_ok = false;
        note("outer degree", dp, w);
      }
      const double ratio = walk_log_probability(g, w_hat) - walk_log_probability(g, w);
      report.min_log_ratio = std::min(report.min_log_ratio, ratio);
      if (ratio < log_floor) {
        report.probability_ok = false;
        note("probability ratio", dp, w);
      }
      bool back = false;
      try {
        back = mapper.invert(w_hat) == w;
      } catch (const Error&) {
        back = false;
      }
      if (!back) {
        report.round_trip = false;
        note("round trip", dp, w);
      }
      return true;
    });
  }
}

}  // namespace gridsep
