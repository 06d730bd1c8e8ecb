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

#ifndef GRIDSEP_RECOM_HPP_
#define GRIDSEP_RECOM_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gridsep/grid.hpp"
#include "gridsep/rng.hpp"
#include "gridsep/sampler.hpp"

namespace gridsep {

struct WeightedGraph {
  std::vector<std::string> ids;  // as given in the input, stringified
  std::vector<double> weights;
  std::vector<std::pair<int, int>> edges;  // node indices, a < b
  std::vector<std::vector<Incidence>> adj;

  int node_count() const { return static_cast<int>(weights.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  double total_weight() const;

  // Builds adjacency and checks the graph is simple, weights nonnegative and
  // the graph connected.
  static WeightedGraph build(std::vector<std::string> ids, std::vector<double> weights,
                             std::vector<std::pair<int, int>> edges);
};

// {"nodes":[{"id":…,"weight":…}],"edges":[[id,id],…]}
WeightedGraph parse_graph(const std::string& json_text);
WeightedGraph load_graph(const std::string& path);
// Unit-weight grid with node ids "i,j" in vertex-id order.
WeightedGraph grid_graph(const GridDims& dims);

struct KPartition {
  std::vector<int> assignment;  // district per node, 1..k
  int k = 0;
  double eps = 0;

  double ideal(const WeightedGraph& g) const { return g.total_weight() / k; }
  bool operator==(const KPartition&) const = default;
};

bool within_tolerance(double weight, double ideal, double eps);
bool districts_contiguous(const WeightedGraph& g, const KPartition& p);
bool is_valid(const WeightedGraph& g, const KPartition& p);
std::vector<double> district_weights(const WeightedGraph& g, const KPartition& p);

inline constexpr int kRecomRetryBudget = 100;

struct RecomStepInfo {
  int district_a = 0;
  int district_b = 0;
  int trees_drawn = 0;
  int qualifying_edges = 0;
};

// Merge a uniformly chosen adjacent pair of districts and re-split along a
// uniformly chosen balanced edge of a uniform spanning tree of the union.
KPartition recom_step(const WeightedGraph& g, const KPartition& p, CounterRng& rng,
                      RecomStepInfo* info = nullptr, int retry_budget = kRecomRetryBudget);

// Peels off k-1 districts one at a time along balanced UST edges.
KPartition initial_partition(const WeightedGraph& g, int k, double eps, CounterRng& rng,
                             int retry_budget = 10'000);

// Emits init, then every thin-th state. The visitor may stop the run early.
void run_chain(const WeightedGraph& g, const KPartition& init, std::int64_t steps, int thin,
               CounterRng& rng, const std::function<bool(std::int64_t, const KPartition&)>& emit);

}  // namespace gridsep

#endif  // GRIDSEP_RECOM_HPP_
