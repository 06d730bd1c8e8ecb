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

#include "gridsep/structures.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <set>

#include "gridsep/error.hpp"

namespace gridsep {
namespace {

class Dsu {
 public:
  explicit Dsu(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

// Vertex at (i+di, j+dj), or -1 off the grid.
VertexId offset(const GridDual& g, VertexId v, int di, int dj) {
  const PrimalVertex p = g.vertex(v);
  if (!g.in_bounds(p.i + di, p.j + dj)) return -1;
  return g.vertex_id(p.i + di, p.j + dj);
}

// Connectivity of the vertices of `color`, skipping `removed`.
bool connected_without(const GridDual& g, const Coloring& c, const std::vector<VertexId>& members,
                       const std::vector<char>& removed) {
  VertexId start = -1;
  int total = 0;
  for (VertexId v : members) {
    if (!removed[v]) {
      ++total;
      if (start < 0) start = v;
    }
  }
  if (total <= 1) return true;
  const Color col = c.at(start);
  std::vector<char> seen(c.size(), 0);
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.primal_incident(v)) {
      const VertexId w = inc.neighbor;
      if (seen[w] || removed[w] || c.at(w) != col) continue;
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == total;
}

}  // namespace

Coloring::Coloring(GridDims dims, std::vector<Color> colors)
    : dims_(dims), colors_(std::move(colors)) {
  if (static_cast<int>(colors_.size()) != dims.vertex_count()) {
    throw Error(ErrorKind::kInvalidArgument, "coloring size does not match grid");
  }
}

Coloring Coloring::parse(GridDims dims, const std::string& text) {
  std::vector<Color> colors;
  for (char ch : text) {
    if (ch == 'r' || ch == 'R') {
      colors.push_back(Color::kRed);
    } else if (ch == 'b' || ch == 'B') {
      colors.push_back(Color::kBlue);
    } else if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r' || ch == '/' || ch == ',') {
      continue;
    } else {
      throw Error(ErrorKind::kParseError, std::string("unexpected character '") + ch + "'");
    }
  }
  if (static_cast<int>(colors.size()) != dims.vertex_count()) {
    throw Error(ErrorKind::kParseError, "expected " + std::to_string(dims.vertex_count()) +
                                            " colors, got " + std::to_string(colors.size()));
  }
  return Coloring(dims, std::move(colors));
}

Coloring Coloring::from_partition(const GridDims& dims, const Partition2& p) {
  std::vector<Color> colors(p.size());
  for (int v = 0; v < p.size(); ++v) colors[v] = p.interior(v) ? Color::kRed : Color::kBlue;
  return Coloring(dims, std::move(colors));
}

int Coloring::count(Color c) const {
  return static_cast<int>(std::count(colors_.begin(), colors_.end(), c));
}

std::string Coloring::to_string() const {
  std::string out;
  for (int i = 0; i < dims_.rows; ++i) {
    if (i > 0) out += '/';
    for (int j = 0; j < dims_.cols; ++j) {
      out += colors_[i * dims_.cols + j] == Color::kRed ? 'r' : 'b';
    }
  }
  return out;
}

Partition2 Coloring::to_partition() const {
  std::vector<std::uint8_t> side(colors_.size());
  for (std::size_t v = 0; v < colors_.size(); ++v) side[v] = colors_[v] == Color::kRed ? 1 : 0;
  return Partition2(std::move(side));
}

int RegionMap::count(Color c) const {
  return static_cast<int>(std::count_if(regions.begin(), regions.end(),
                                        [c](const Region& r) { return r.color == c; }));
}

RegionMap find_regions(const GridDual& g, const Coloring& c) {
  const int n = g.vertex_count();
  Dsu dsu(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    if (c.at(a) == c.at(b)) dsu.unite(a, b);
  }
  RegionMap map;
  map.label.assign(n, -1);
  std::vector<int> root_to_region(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    const int r = dsu.find(v);
    if (root_to_region[r] < 0) {
      root_to_region[r] = static_cast<int>(map.regions.size());
      map.regions.push_back(Region{c.at(v), {}, true});
    }
    Region& region = map.regions[root_to_region[r]];
    region.vertices.push_back(v);
    if (g.on_border(v)) region.is_island = false;
    map.label[v] = root_to_region[r];
  }
  return map;
}

bool is_feasible(const GridDual& g, const Coloring& c) {
  const RegionMap map = find_regions(g, c);
  return map.count(Color::kRed) == 1 && map.count(Color::kBlue) == 1;
}

bool is_disposable(const GridDual& g, const Coloring& c, VertexId v) {
  return is_disposable_set(g, c, {v});
}

bool is_disposable_set(const GridDual& g, const Coloring& c, const std::vector<VertexId>& set) {
  if (set.empty()) return true;
  const Color col = c.at(set.front());
  std::vector<char> removed(c.size(), 0);
  for (VertexId v : set) {
    if (c.at(v) != col) return false;
    removed[v] = 1;
  }
  // The set must sit inside one region.
  const RegionMap map = find_regions(g, c);
  const int label = map.label[set.front()];
  for (VertexId v : set) {
    if (map.label[v] != label) return false;
  }
  return connected_without(g, c, map.regions[label].vertices, removed);
}

std::vector<VertexId> detect_cross_structures(const GridDual& g, const Coloring& c) {
  std::vector<VertexId> out;
  for (int i = 1; i < g.rows(); ++i) {
    for (int j = 1; j < g.cols(); ++j) {
      const Color a = c.at(g.vertex_id(i, j));
      const Color b = c.at(g.vertex_id(i, j + 1));
      const Color d = c.at(g.vertex_id(i + 1, j));
      const Color e = c.at(g.vertex_id(i + 1, j + 1));
      if (a == e && b == d && a != b) out.push_back(g.vertex_id(i, j));
    }
  }
  return out;
}

int outer_degree(const GridDual& g, const Coloring& c) {
  int deg = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!g.touches_outer(e)) continue;
    const auto [a, b] = g.endpoints(e);
    if (c.at(a) != c.at(b)) ++deg;
  }
  return deg;
}

namespace {

// Island plus every vertex it cuts off from the border.
std::vector<std::uint8_t> filled_island(const GridDual& g, const Region& island) {
  const int n = g.vertex_count();
  std::vector<std::uint8_t> in(n, 0);
  for (VertexId v : island.vertices) in[v] = 1;
  std::vector<char> outside(n, 0);
  std::vector<VertexId> stack;
  for (VertexId v = 0; v < n; ++v) {
    if (g.on_border(v) && !in[v]) {
      outside[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.primal_incident(v)) {
      if (!outside[inc.neighbor] && !in[inc.neighbor]) {
        outside[inc.neighbor] = 1;
        stack.push_back(inc.neighbor);
      }
    }
  }
  std::vector<std::uint8_t> filled(n, 0);
  for (VertexId v = 0; v < n; ++v) filled[v] = outside[v] ? 0 : 1;
  return filled;
}

struct Step {
  int di;
  int dj;
};

Step right_of(Step d) { return {d.dj, -d.di}; }

}  // namespace

bool island_has_holes(const GridDual& g, const Coloring& c, const Region& island) {
  (void)c;
  const auto filled = filled_island(g, island);
  const int filled_count = static_cast<int>(std::count(filled.begin(), filled.end(), 1));
  return filled_count != static_cast<int>(island.vertices.size());
}

IslandWalk island_walk(const GridDual& g, const Coloring& c, const Region& island) {
  if (!island.is_island || island.vertices.empty()) {
    throw Error(ErrorKind::kNotAnIsland, "region touches the grid border");
  }
  if (!detect_cross_structures(g, c).empty()) {
    throw Error(ErrorKind::kCrossStructurePresent, "coloring contains a cross-structure");
  }
  const auto filled = filled_island(g, island);
  std::vector<char> in_island(g.vertex_count(), 0);
  for (VertexId v : island.vertices) in_island[v] = 1;
  const std::vector<EdgeId> cut = cut_edges(g, filled);
  std::vector<char> on_cycle(g.edge_count(), 0);
  for (EdgeId e : cut) on_cycle[e] = 1;

  // Orient the first dual edge so the island side lies to the right.
  const EdgeId first = cut.front();
  auto inner_end = [&](EdgeId e) {
    const auto [a, b] = g.endpoints(e);
    return filled[a] ? a : b;
  };
  DualVertexId at;
  {
    const auto [a, b] = g.endpoints(first);
    const auto [f0, f1] = g.dual_endpoints(first);  // sorted: upper/left face first
    const bool horizontal = b == a + 1;
    const VertexId r = inner_end(first);
    // Horizontal edge: moving down keeps the left endpoint on the right.
    // Vertical edge: moving right keeps the lower endpoint on the right.
    const bool forward = horizontal ? r == a : r == b;
    at = forward ? f1 : f0;
  }

  std::vector<EdgeId> order{first};
  EdgeId prev = first;
  while (true) {
    EdgeId next = -1;
    for (const Incidence& inc : g.dual_incident(at)) {
      if (on_cycle[inc.edge] && inc.edge != prev) {
        next = inc.edge;
        break;
      }
    }
    if (next < 0 || next == first) break;
    order.push_back(next);
    at = g.dual_other(next, at);
    prev = next;
  }

  IslandWalk walk;
  walk.spokes = order;
  auto outer_end = [&](EdgeId e) {
    const auto [a, b] = g.endpoints(e);
    return filled[a] ? b : a;
  };
  walk.vertices.push_back(outer_end(order.front()));
  const int k = static_cast<int>(order.size());
  for (int s = 1; s <= k; ++s) {
    const EdgeId e = order[s % k];
    const VertexId cur = walk.vertices.back();
    const VertexId nxt = outer_end(e);
    if (nxt == cur) continue;
    if (g.edge_between(cur, nxt)) {
      walk.vertices.push_back(nxt);
      continue;
    }
    // Diagonal turn around a convex corner: pass through the fourth corner.
    const VertexId r = inner_end(e);
    const PrimalVertex pc = g.vertex(cur);
    const PrimalVertex pn = g.vertex(nxt);
    VertexId via = -1;
    for (VertexId cand : {g.vertex_id(pc.i, pn.j), g.vertex_id(pn.i, pc.j)}) {
      if (cand != r) via = cand;
    }
    walk.vertices.push_back(via);
    walk.vertices.push_back(nxt);
  }
  if (walk.vertices.size() == 1) walk.vertices.push_back(walk.vertices.front());
  return walk;
}

IslandWalkCheck check_island_walk(const GridDual& g, const Coloring& c, const Region& island,
                                  const IslandWalk& walk) {
  IslandWalkCheck out;
  std::vector<char> in_island(g.vertex_count(), 0);
  for (VertexId v : island.vertices) in_island[v] = 1;
  const Color other = opposite(island.color);
  const RegionMap map = find_regions(g, c);

  out.closed = walk.vertices.size() >= 2 && walk.vertices.front() == walk.vertices.back();
  out.single_region = !walk.vertices.empty();
  for (VertexId v : walk.vertices) {
    if (c.at(v) != other || map.label[v] != map.label[walk.vertices.front()]) {
      out.single_region = false;
    }
  }
  for (std::size_t s = 0; s + 1 < walk.vertices.size(); ++s) {
    if (walk.vertices[s] == walk.vertices[s + 1]) continue;
    if (!g.edge_between(walk.vertices[s], walk.vertices[s + 1])) out.closed = false;
  }

  out.island_on_right = true;
  for (std::size_t s = 0; s + 1 < walk.vertices.size(); ++s) {
    const VertexId p = walk.vertices[s];
    const VertexId q = walk.vertices[s + 1];
    if (p == q) continue;
    const PrimalVertex pp = g.vertex(p);
    const PrimalVertex pq = g.vertex(q);
    const Step r = right_of({pq.i - pp.i, pq.j - pp.j});
    const VertexId rp = offset(g, p, r.di, r.dj);
    const VertexId rq = offset(g, q, r.di, r.dj);
    if (!((rp >= 0 && in_island[rp]) || (rq >= 0 && in_island[rq]))) out.island_on_right = false;
  }
  if (walk.vertices.size() == 2 && walk.vertices[0] == walk.vertices[1]) {
    // Degenerate one-vertex walk: every spoke lands on that vertex.
    out.island_on_right = true;
  }

  std::set<VertexId> on_walk(walk.vertices.begin(), walk.vertices.end());
  out.covers_neighbors = true;
  for (VertexId v : island.vertices) {
    for (const Incidence& inc : g.primal_incident(v)) {
      if (!in_island[inc.neighbor] && !on_walk.count(inc.neighbor)) out.covers_neighbors = false;
    }
  }

  std::set<EdgeId> spokes(walk.spokes.begin(), walk.spokes.end());
  out.spokes_once = spokes.size() == walk.spokes.size();
  for (EdgeId e : walk.spokes) {
    const auto [a, b] = g.endpoints(e);
    if (in_island[a] == in_island[b]) out.spokes_once = false;
  }
  return out;
}

std::vector<ThinSite> find_thin_structures(const GridDual& g, const Coloring& c) {
  const RegionMap map = find_regions(g, c);
  std::vector<ThinSite> out;
  const std::array<Step, 2> dirs{Step{0, 1}, Step{1, 0}};
  for (VertexId a = 0; a < g.vertex_count(); ++a) {
    for (const Step& d : dirs) {
      for (int width = 1; width <= 2; ++width) {
        const VertexId b = offset(g, a, d.di * (width + 1), d.dj * (width + 1));
        if (b < 0 || c.at(a) != c.at(b)) continue;
        const int ra = map.label[a];
        const int rb = map.label[b];
        if (ra == rb) continue;
        if (!map.regions[ra].is_island && !map.regions[rb].is_island) continue;
        ThinSite site;
        site.kind = width == 1 ? ThinKind::kOne : ThinKind::kTwo;
        bool ok = true;
        for (int s = 1; s <= width; ++s) {
          const VertexId m = offset(g, a, d.di * s, d.dj * s);
          if (c.at(m) == c.at(a)) ok = false;
          site.vertices.push_back(m);
        }
        if (!ok) continue;
        site.flank_a = a;
        site.flank_b = b;
        site.region_a = ra;
        site.region_b = rb;
        out.push_back(std::move(site));
      }
    }
  }
  return out;
}

Coloring resolve(const Coloring& c, const ThinSite& site) {
  Coloring out = c;
  const Color target = c.at(site.flank_a);
  for (VertexId v : site.vertices) {
    if (c.at(v) == target) throw Error(ErrorKind::kPatternMismatch, "site is not thin");
    out.set(v, target);
  }
  return out;
}

namespace {

constexpr std::array<Step, 4> kDirs{Step{-1, 0}, Step{0, 1}, Step{1, 0}, Step{0, -1}};

// Index d such that neighbors in directions d and d+1 (mod 4) are opposite to v.
int elbow_direction(const GridDual& g, const Coloring& c, VertexId v) {
  for (int d = 0; d < 4; ++d) {
    const VertexId a = offset(g, v, kDirs[d].di, kDirs[d].dj);
    const VertexId b = offset(g, v, kDirs[(d + 1) % 4].di, kDirs[(d + 1) % 4].dj);
    if (a >= 0 && b >= 0 && c.at(a) != c.at(v) && c.at(b) != c.at(v)) return d;
  }
  return -1;
}

}  // namespace

bool is_elbow(const GridDual& g, const Coloring& c, VertexId v) {
  return elbow_direction(g, c, v) >= 0;
}

bool matches_elbow_resolution(const GridDual& g, const Coloring& c, VertexId v) {
  if (g.on_border(v)) return false;
  for (int d = 0; d < 4; ++d) {
    const Step s1 = kDirs[d];
    const Step s2 = kDirs[(d + 1) % 4];
    const Step s3 = kDirs[(d + 2) % 4];
    const Step s4 = kDirs[(d + 3) % 4];
    const Color col = c.at(v);
    if (c.at(offset(g, v, s1.di, s1.dj)) == col || c.at(offset(g, v, s2.di, s2.dj)) == col) {
      continue;
    }
    const VertexId p = offset(g, v, s3.di, s3.dj);
    const VertexId q = offset(g, v, s4.di, s4.dj);
    const VertexId diag = offset(g, v, s3.di + s4.di, s3.dj + s4.dj);
    if (c.at(p) == col && c.at(q) == col && c.at(diag) != col) return true;
  }
  return false;
}

ElbowClass elbow_classify(const GridDual& g, const Coloring& c, VertexId v) {
  if (!is_elbow(g, c, v)) {
    throw Error(ErrorKind::kPatternMismatch, "vertex " + g.vertex_label(v) + " is not an elbow");
  }
  return is_disposable(g, c, v) ? ElbowClass::kDisposable : ElbowClass::kForcedNeighborhood;
}

int classify_local_case(const GridDual& g, const Coloring& c, VertexId u, VertexId v) {
  if (g.on_border(u) || !g.edge_between(u, v) || c.at(u) == c.at(v)) return 0;
  const PrimalVertex pu = g.vertex(u);
  const PrimalVertex pv = g.vertex(v);
  const Step fwd{pv.i - pu.i, pv.j - pu.j};
  const Step side = right_of(fwd);
  const Color col = c.at(u);
  auto at = [&](int back, int lateral) {
    return c.at(offset(g, u, -fwd.di * back + side.di * lateral, -fwd.dj * back + side.dj * lateral));
  };
  const bool cut_back = at(1, 0) != col;
  const bool cut_x = at(0, 1) != col;   // x's edge toward v's side
  const bool cut_y = at(0, -1) != col;  // y's edge toward v's side
  auto face_degree = [&](int lateral) {
    const Color a = col;
    const Color b = at(0, lateral);
    const Color d = at(1, 0);
    const Color e = at(1, lateral);
    return (a != b) + (b != e) + (e != d) + (d != a);
  };
  const int dx = face_degree(1);
  const int dy = face_degree(-1);
  if (dx == 4 || dy == 4) return 0;
  if (dx == 0 && dy == 0) return 1;
  if (dx == 0 || dy == 0) {
    const bool right = dx == 0 ? cut_y : cut_x;
    return right ? 2 : 5;
  }
  const int rights = static_cast<int>(cut_x) + static_cast<int>(cut_y);
  if (cut_back) return rights == 0 ? 7 : 3;
  if (rights == 2) return 4;
  return rights == 1 ? 6 : 8;
}

}  // namespace gridsep
