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

#ifndef GRIDSEP_SAMPLER_HPP_
#define GRIDSEP_SAMPLER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "gridsep/grid.hpp"
#include "gridsep/rng.hpp"
#include "gridsep/spanning.hpp"

namespace gridsep {

// Undirected multigraph with per-vertex incidence lists in edge-id order.
struct MultiGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<Incidence>> adj;

  static MultiGraph from_edges(int n, std::vector<std::pair<int, int>> edges);
  int edge_count() const { return static_cast<int>(edges.size()); }
};

MultiGraph primal_multigraph(const GridDual& g);
MultiGraph dual_multigraph(const GridDual& g);

// Wilson's algorithm. Returns the tree's edge ids in increasing order.
// step_budget == 0 means 64 n^2 steps scaled by the average degree.
std::vector<int> wilson_ust(const MultiGraph& g, int root, CounterRng& rng,
                            std::uint64_t step_budget = 0);

bool smooth_accept(const Partition2& p, double lambda, CounterRng& rng);

enum class SamplerMode { kAlg2, kUstSplit };

// How the conditioned edge e enters the first acceptance stage of the walk
// sampler. A walk that restarts with e fixed produces cycle C with
// probability sp(P) / tau_e, where tau_e counts spanning trees through e, so
// the acceptance must carry a factor proportional to tau_e.
enum class AcceptanceRule {
  kAuto,              // exact normalizers within the oracle cap, else leverage
  kExactNormalizers,  // (sp2_e / sp2) / |C|
  kLeverage,          // (R_e / max R) * 2 / |C|, with R_e = tau_e / sp(G)
  kCutOnly,           // 2 / |C|; exact only when restarts redraw the edge
};

struct SamplerConfig {
  double lambda = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t max_restarts = 100'000'000;
  SamplerMode mode = SamplerMode::kAlg2;
  bool restart_from_edge_draw = false;
  AcceptanceRule acceptance = AcceptanceRule::kAuto;
  int oracle_cap = kDefaultEnumerationCap;
};

struct SampleOutcome {
  Partition2 partition;
  DualCycle cycle;
  EdgeId start_dual_edge = -1;
  std::uint64_t restarts = 0;
  std::uint64_t walk_steps = 0;
};

class PartitionSampler {
 public:
  PartitionSampler(const GridDual& g, SamplerConfig cfg);

  SampleOutcome sample();
  const SamplerConfig& config() const { return cfg_; }
  AcceptanceRule rule() const { return rule_; }
  // Per-edge first-stage factor (times 1/|C|).
  const std::vector<double>& edge_factors() const { return factor_; }
  CounterRng& rng() { return rng_; }

 private:
  SampleOutcome sample_alg2();
  SampleOutcome sample_ust_split();

  const GridDual& g_;
  SamplerConfig cfg_;
  AcceptanceRule rule_;
  CounterRng rng_;
  MultiGraph primal_;
  std::vector<double> factor_;
  double cut_scale_ = 1;
  std::uint64_t step_budget_ = 0;
  // Scratch for the loop-erased walk.
  std::vector<int> pos_;
  std::vector<DualVertexId> path_v_;
  std::vector<EdgeId> path_e_;
};

SampleOutcome sample_alg2(const GridDual& g, SamplerConfig cfg);
SampleOutcome sample_ust_split(const GridDual& g, SamplerConfig cfg);

}  // namespace gridsep

#endif  // GRIDSEP_SAMPLER_HPP_
