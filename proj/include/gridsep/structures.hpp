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

#ifndef GRIDSEP_STRUCTURES_HPP_
#define GRIDSEP_STRUCTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gridsep/grid.hpp"

namespace gridsep {

enum class Color : std::uint8_t { kRed = 0, kBlue = 1 };

inline Color opposite(Color c) { return c == Color::kRed ? Color::kBlue : Color::kRed; }

class Coloring {
 public:
  Coloring() = default;
  Coloring(GridDims dims, Color fill) : dims_(dims), colors_(dims.vertex_count(), fill) {}
  Coloring(GridDims dims, std::vector<Color> colors);
  // Row-major 'r'/'b' characters; whitespace is ignored.
  static Coloring parse(GridDims dims, const std::string& text);
  // Interior red, exterior blue.
  static Coloring from_partition(const GridDims& dims, const Partition2& p);

  const GridDims& dims() const { return dims_; }
  int size() const { return static_cast<int>(colors_.size()); }
  Color at(VertexId v) const { return colors_[v]; }
  void set(VertexId v, Color c) { colors_[v] = c; }
  void flip(VertexId v) { colors_[v] = opposite(colors_[v]); }
  int count(Color c) const;
  std::string to_string() const;
  // Red vertices become the interior.
  Partition2 to_partition() const;
  bool operator==(const Coloring&) const = default;

 private:
  GridDims dims_;
  std::vector<Color> colors_;
};

struct Region {
  Color color = Color::kRed;
  std::vector<VertexId> vertices;
  bool is_island = false;
};

struct RegionMap {
  std::vector<Region> regions;
  std::vector<int> label;  // region index per vertex

  int count(Color c) const;
};

RegionMap find_regions(const GridDual& g, const Coloring& c);
bool is_feasible(const GridDual& g, const Coloring& c);

// Removing v (or the set) from its region leaves the rest connected.
bool is_disposable(const GridDual& g, const Coloring& c, VertexId v);
bool is_disposable_set(const GridDual& g, const Coloring& c, const std::vector<VertexId>& set);

// 2x2 blocks colored diagonally, reported by top-left vertex.
std::vector<VertexId> detect_cross_structures(const GridDual& g, const Coloring& c);
// Border primal edges with differently colored endpoints: the outer face's
// degree in the cut.
int outer_degree(const GridDual& g, const Coloring& c);

struct IslandWalk {
  std::vector<VertexId> vertices;  // closed: front() == back()
  std::vector<EdgeId> spokes;      // in visiting order, each once
};

// Closed walk on the opposite color around the island, keeping the island
// on the right. Rows grow downward; right of a step is its clockwise turn on
// screen. Spokes are the primal edges leaving the island's outer boundary.
IslandWalk island_walk(const GridDual& g, const Coloring& c, const Region& island);

struct IslandWalkCheck {
  bool single_region = false;   // property 1
  bool island_on_right = false; // property 2
  bool covers_neighbors = false;// property 3
  bool spokes_once = false;
  bool closed = false;
  bool ok() const {
    return single_region && island_on_right && covers_neighbors && spokes_once && closed;
  }
};
IslandWalkCheck check_island_walk(const GridDual& g, const Coloring& c, const Region& island,
                                  const IslandWalk& walk);
// True when the island's complement inside its bounding box has no pocket,
// i.e. every vertex adjacent to the island reaches the border avoiding it.
bool island_has_holes(const GridDual& g, const Coloring& c, const Region& island);

enum class ThinKind { kOne, kTwo };

// A run f, m.., f' along a row or column: flanks of one color from distinct
// regions (at least one an island) around one or two middle vertices of the
// other color.
struct ThinSite {
  ThinKind kind = ThinKind::kOne;
  std::vector<VertexId> vertices;  // the middle vertices to flip
  VertexId flank_a = -1;
  VertexId flank_b = -1;
  int region_a = -1;
  int region_b = -1;
};

std::vector<ThinSite> find_thin_structures(const GridDual& g, const Coloring& c);
Coloring resolve(const Coloring& c, const ThinSite& site);

enum class ElbowClass { kDisposable, kForcedNeighborhood };

// v has two orthogonal neighbors of the opposite color.
bool is_elbow(const GridDual& g, const Coloring& c, VertexId v);
ElbowClass elbow_classify(const GridDual& g, const Coloring& c, VertexId v);
// The two remaining neighbors share v's color, the diagonal between them has
// the opposite color, and v is off the border.
bool matches_elbow_resolution(const GridDual& g, const Coloring& c, VertexId v);

// Local case (1..8) of an interior vertex u against its separated neighbor
// v; 0 when u is on the border or the pattern is degenerate. Faces x and y
// are the two faces on the far side of u from v.
int classify_local_case(const GridDual& g, const Coloring& c, VertexId u, VertexId v);

}  // namespace gridsep

#endif  // GRIDSEP_STRUCTURES_HPP_
