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

#ifndef GRIDSEP_RECONNECT_HPP_
#define GRIDSEP_RECONNECT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gridsep/grid.hpp"
#include "gridsep/spanning.hpp"
#include "gridsep/structures.hpp"

namespace gridsep {

struct ReconnectOptions {
  int gamma = 10;
  int n0 = 6;
  // Largest flip set tried by the bounded search.
  int max_flips = 6;
  // When set, unseparate rejects grids or parts smaller than n0.
  bool enforce_size_precondition = false;
};

enum class ReconnectPath { kFast, kGuided, kSearch, kFallback };

std::string to_string(ReconnectPath path);

struct ReconnectResult {
  Partition2 partition;       // red vertices are the interior
  Coloring coloring;
  std::vector<VertexId> flipped;  // sorted
  int delta_size = 0;         // change in the count of u and v's final color
  int outer_degree_before = 0;
  int outer_degree_after = 0;
  int local_case = 0;         // classify_local_case(u, v) on the input
  ReconnectPath path = ReconnectPath::kFast;
};

// Graph distance from w to the nearer of u and v.
int distance_to_pair(const GridDual& g, VertexId w, VertexId u, VertexId v);

// Checks the four reconnection properties of `after` against `before`.
bool reconnection_valid(const GridDual& g, const Coloring& before, const Coloring& after,
                        VertexId u, VertexId v, int gamma, int* delta_size = nullptr);

ReconnectResult unseparate(const GridDual& g, const Partition2& p, VertexId u, VertexId v,
                           const ReconnectOptions& opts = {});

struct UnsepRecord {
  DualCycle cycle;
  DualCycle image;
  SubgridWindow window;
  int window_edges = 0;
  double imbalance_change = 0;
  int outer_before = 0;
  int outer_after = 0;
  int flips = 0;
  ReconnectPath path = ReconnectPath::kFast;
};

struct UnsepReport {
  int rows = 0;
  int cols = 0;
  VertexId u = -1;
  VertexId v = -1;
  int min_len = 0;
  int gamma = 0;
  std::int64_t domain_size = 0;  // separating cycles of length >= min_len
  std::int64_t image_size = 0;
  int beta_observed = 0;         // largest window edge count
  double delta_observed = 0;     // largest imbalance change
  int max_preimage = 0;
  int max_flips = 0;
  bool outer_monotone = true;
  bool locality_ok = true;       // windows inside the dilated flip region
  bool preimage_bound_ok = true; // max_preimage <= 2^(beta_observed)
  bool delta_over_two = false;   // flagged, not failing
  std::map<std::string, int> path_counts;
  std::vector<UnsepRecord> records;

  bool passes() const { return outer_monotone && locality_ok && preimage_bound_ok && delta_observed <= 3; }
};

// Applies unseparate to every feasible partition whose cut has at least
// min_len edges and separates u and v. Uses the exhaustive partition oracle.
UnsepReport verify_unseparating_map(const GridDual& g, VertexId u, VertexId v, int min_len,
                                    const ReconnectOptions& opts = {}, bool keep_records = false,
                                    int cap = kDefaultEnumerationCap);

}  // namespace gridsep

#endif  // GRIDSEP_RECONNECT_HPP_
