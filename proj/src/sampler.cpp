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

#include "gridsep/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "gridsep/error.hpp"

namespace gridsep {

MultiGraph MultiGraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  MultiGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges[e];
    g.adj[a].push_back({b, e});
    if (a != b) g.adj[b].push_back({a, e});
  }
  return g;
}

MultiGraph primal_multigraph(const GridDual& g) {
  std::vector<std::pair<int, int>> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges.push_back(g.endpoints(e));
  return MultiGraph::from_edges(g.vertex_count(), std::move(edges));
}

MultiGraph dual_multigraph(const GridDual& g) {
  std::vector<std::pair<int, int>> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges.push_back(g.dual_endpoints(e));
  return MultiGraph::from_edges(g.dual_vertex_count(), std::move(edges));
}

std::vector<int> wilson_ust(const MultiGraph& g, int root, CounterRng& rng,
                            std::uint64_t step_budget) {
  if (g.n == 0) return {};
  if (step_budget == 0) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.n);
    step_budget = 64 * n * n * std::max<std::uint64_t>(1, 2 * g.edges.size() / n) + 1024;
  }
  std::vector<std::uint8_t> in_tree(g.n, 0);
  std::vector<int> next_edge(g.n, -1);
  in_tree[root] = 1;
  std::uint64_t steps = 0;
  auto other = [&](int e, int v) {
    return g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
  };
  for (int i = 0; i < g.n; ++i) {
    int u = i;
    while (!in_tree[u]) {
      const auto& inc = g.adj[u];
      if (inc.empty()) throw Error(ErrorKind::kDisconnectedGraph, "isolated vertex");
      const Incidence& pick = inc[rng.below(inc.size())];
      next_edge[u] = pick.edge;
      u = pick.neighbor;
      if (++steps > step_budget) throw Error(ErrorKind::kBudgetExceeded, "random walk step budget");
    }
    u = i;
    while (!in_tree[u]) {
      in_tree[u] = 1;
      u = other(next_edge[u], u);
    }
  }
  std::vector<int> tree;
  for (int v = 0; v < g.n; ++v) {
    if (v != root) tree.push_back(next_edge[v]);
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

bool smooth_accept(const Partition2& p, double lambda, CounterRng& rng) {
  if (lambda < 0) throw Error(ErrorKind::kInvalidArgument, "lambda must be nonnegative");
  const double imb = p.imbalance();
  if (lambda == 0 || imb == 0) return true;
  return rng.bernoulli(std::exp(-lambda * imb));
}

PartitionSampler::PartitionSampler(const GridDual& g, SamplerConfig cfg)
    : g_(g), cfg_(cfg), rule_(cfg.acceptance), rng_(cfg.seed, cfg.stream),
      primal_(primal_multigraph(g)) {
  if (cfg_.max_restarts < 1) throw Error(ErrorKind::kInvalidArgument, "max_restarts must be >= 1");
  if (cfg_.lambda < 0) throw Error(ErrorKind::kInvalidArgument, "lambda must be nonnegative");
  const std::uint64_t mn = static_cast<std::uint64_t>(g.vertex_count());
  step_budget_ = 64 * mn * mn;
  if (rule_ == AcceptanceRule::kAuto) {
    if (cfg_.restart_from_edge_draw) {
      rule_ = AcceptanceRule::kCutOnly;
    } else if (g.vertex_count() <= cfg_.oracle_cap) {
      rule_ = AcceptanceRule::kExactNormalizers;
    } else {
      rule_ = AcceptanceRule::kLeverage;
    }
  }
  factor_.assign(g.edge_count(), 1.0);
  cut_scale_ = 2.0;
  if (cfg_.mode == SamplerMode::kAlg2) {
    if (rule_ == AcceptanceRule::kExactNormalizers) {
      const Normalizers nz = spanning_normalizers(g, std::max(cfg_.oracle_cap, g.vertex_count()));
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        factor_[e] = static_cast<double>(Rational(nz.separating[e], nz.total));
      }
      cut_scale_ = 1.0;
    } else if (rule_ == AcceptanceRule::kLeverage) {
      factor_ = effective_resistances(g);
      const double top = *std::max_element(factor_.begin(), factor_.end());
      for (double& f : factor_) f /= top;
    }
  }
  pos_.assign(g.dual_vertex_count(), -1);
}

SampleOutcome PartitionSampler::sample() {
  return cfg_.mode == SamplerMode::kAlg2 ? sample_alg2() : sample_ust_split();
}

SampleOutcome PartitionSampler::sample_alg2() {
  SampleOutcome out;
  const int edge_count = g_.edge_count();
  EdgeId e = -1;
  for (;;) {
    if (out.restarts >= cfg_.max_restarts) {
      throw Error(ErrorKind::kBudgetExceeded, "restart budget exhausted");
    }
    if (e < 0) e = static_cast<EdgeId>(rng_.below(edge_count));
    const auto [x, y] = g_.dual_endpoints(e);
    // Loop-erased walk from x until it hits y.
    path_v_.assign(1, x);
    path_e_.clear();
    pos_[x] = 0;
    std::uint64_t steps = 0;
    DualVertexId at = x;
    while (at != y) {
      const auto inc = g_.dual_incident(at);
      const Incidence& pick = inc[rng_.below(inc.size())];
      ++steps;
      at = pick.neighbor;
      if (at != y && pos_[at] >= 0) {
        const int keep = pos_[at];
        while (static_cast<int>(path_v_.size()) > keep + 1) {
          pos_[path_v_.back()] = -1;
          path_v_.pop_back();
          path_e_.pop_back();
        }
      } else {
        pos_[at] = static_cast<int>(path_v_.size());
        path_v_.push_back(at);
        path_e_.push_back(pick.edge);
      }
      if (steps > step_budget_) {
        for (DualVertexId v : path_v_) pos_[v] = -1;
        throw Error(ErrorKind::kBudgetExceeded, "walk step budget exhausted");
      }
    }
    for (DualVertexId v : path_v_) pos_[v] = -1;
    out.walk_steps += steps;
    if (path_e_.size() == 1 && path_e_[0] == e) {
      ++out.restarts;
      if (cfg_.restart_from_edge_draw) e = -1;
      continue;
    }
    const double size = static_cast<double>(path_e_.size() + 1);
    const double first = factor_[e] * cut_scale_ / size;
    if (!rng_.bernoulli(first)) {
      ++out.restarts;
      e = -1;
      continue;
    }
    DualCycle cycle = path_e_;
    cycle.push_back(e);
    std::sort(cycle.begin(), cycle.end());
    Partition2 p = cycle_to_partition(g_, cycle);
    if (!smooth_accept(p, cfg_.lambda, rng_)) {
      ++out.restarts;
      e = -1;
      continue;
    }
    out.partition = std::move(p);
    out.cycle = std::move(cycle);
    out.start_dual_edge = e;
    return out;
  }
}

SampleOutcome PartitionSampler::sample_ust_split() {
  SampleOutcome out;
  const int n = g_.vertex_count();
  std::vector<std::vector<Incidence>> tree_adj(n);
  for (;;) {
    if (out.restarts >= cfg_.max_restarts) {
      throw Error(ErrorKind::kBudgetExceeded, "restart budget exhausted");
    }
    const std::uint64_t before = rng_.draws();
    const std::vector<int> tree = wilson_ust(primal_, 0, rng_);
    out.walk_steps += rng_.draws() - before;
    const EdgeId cut = tree[rng_.below(tree.size())];
    for (auto& a : tree_adj) a.clear();
    for (int t : tree) {
      if (t == cut) continue;
      const auto [a, b] = g_.endpoints(t);
      tree_adj[a].push_back({b, t});
      tree_adj[b].push_back({a, t});
    }
    std::vector<std::uint8_t> side(n, 0);
    std::vector<int> stack{g_.endpoints(cut).first};
    side[stack[0]] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : tree_adj[v]) {
        if (!side[inc.neighbor]) {
          side[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
      }
    }
    Partition2 p = canonical_orientation(g_, Partition2(std::move(side)));
    DualCycle cycle = cut_edges(g_, p.sides());
    if (!rng_.bernoulli(1.0 / static_cast<double>(cycle.size()))) {
      ++out.restarts;
      continue;
    }
    if (!smooth_accept(p, cfg_.lambda, rng_)) {
      ++out.restarts;
      continue;
    }
    out.partition = std::move(p);
    out.cycle = std::move(cycle);
    out.start_dual_edge = cut;
    return out;
  }
}

SampleOutcome sample_alg2(const GridDual& g, SamplerConfig cfg) {
  cfg.mode = SamplerMode::kAlg2;
  return PartitionSampler(g, cfg).sample();
}

SampleOutcome sample_ust_split(const GridDual& g, SamplerConfig cfg) {
  cfg.mode = SamplerMode::kUstSplit;
  return PartitionSampler(g, cfg).sample();
}

}  // namespace gridsep
