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

#include "gridsep/recom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gridsep/error.hpp"

namespace gridsep {
namespace {

using nlohmann::json;

std::string id_key(const json& id) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw Error(ErrorKind::kParseError, "node id must be a string or an integer");
}

struct Split {
  std::vector<int> local_to_node;
  MultiGraph graph;
};

Split induced(const WeightedGraph& g, const std::vector<int>& nodes) {
  Split s;
  s.local_to_node = nodes;
  std::map<int, int> local;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) local[nodes[i]] = i;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : g.edges) {
    auto ia = local.find(a);
    auto ib = local.find(b);
    if (ia != local.end() && ib != local.end()) edges.emplace_back(ia->second, ib->second);
  }
  s.graph = MultiGraph::from_edges(static_cast<int>(nodes.size()), std::move(edges));
  return s;
}

// Weight hanging below each tree edge when the tree is rooted at 0.
// Returns, per tree edge, the child endpoint and its subtree weight.
struct TreeCut {
  int edge;
  int child;
  double below;
};

std::vector<TreeCut> subtree_weights(const MultiGraph& t, const std::vector<int>& tree,
                                     const std::vector<double>& w) {
  std::vector<std::vector<Incidence>> adj(t.n);
  for (int e : tree) {
    const auto [a, b] = t.edges[e];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<int> order;
  std::vector<int> parent_edge(t.n, -1);
  std::vector<char> seen(t.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const Incidence& inc : adj[v]) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = 1;
      parent_edge[inc.neighbor] = inc.edge;
      stack.push_back(inc.neighbor);
    }
  }
  std::vector<double> sub(t.n, 0);
  std::vector<TreeCut> cuts;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    sub[v] += w[v];
    if (parent_edge[v] < 0) continue;
    const auto [a, b] = t.edges[parent_edge[v]];
    sub[a == v ? b : a] += sub[v];
    cuts.push_back({parent_edge[v], v, sub[v]});
  }
  std::sort(cuts.begin(), cuts.end(), [](const TreeCut& x, const TreeCut& y) { return x.edge < y.edge; });
  return cuts;
}

// Local vertices on the child side of a tree edge.
std::vector<char> child_side(const MultiGraph& t, const std::vector<int>& tree, const TreeCut& cut) {
  std::vector<std::vector<int>> adj(t.n);
  for (int e : tree) {
    if (e == cut.edge) continue;
    const auto [a, b] = t.edges[e];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> side(t.n, 0);
  std::vector<int> stack{cut.child};
  side[cut.child] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int x : adj[v]) {
      if (!side[x]) {
        side[x] = 1;
        stack.push_back(x);
      }
    }
  }
  return side;
}

}  // namespace

double WeightedGraph::total_weight() const {
  double total = 0;
  for (double w : weights) total += w;
  return total;
}

WeightedGraph WeightedGraph::build(std::vector<std::string> ids, std::vector<double> weights,
                                   std::vector<std::pair<int, int>> edges) {
  WeightedGraph g;
  g.ids = std::move(ids);
  g.weights = std::move(weights);
  const int n = g.node_count();
  if (n == 0) throw Error(ErrorKind::kParseError, "graph has no nodes");
  for (double w : g.weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw Error(ErrorKind::kParseError, "negative or invalid weight");
  }
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::kParseError, "edge endpoint out of range");
    if (a == b) throw Error(ErrorKind::kParseError, "self-loop");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) throw Error(ErrorKind::kParseError, "duplicate edge");
    g.edges.emplace_back(a, b);
  }
  g.adj.assign(n, {});
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges[e];
    g.adj[a].push_back({b, e});
    g.adj[b].push_back({a, e});
  }
  std::vector<char> reached(n, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.adj[v]) {
      if (!reached[inc.neighbor]) {
        reached[inc.neighbor] = 1;
        ++count;
        stack.push_back(inc.neighbor);
      }
    }
  }
  if (count != n) throw Error(ErrorKind::kDisconnectedGraph, "graph is not connected");
  return g;
}

WeightedGraph parse_graph(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges") ||
      !doc["nodes"].is_array() || !doc["edges"].is_array()) {
    throw Error(ErrorKind::kParseError, "expected {\"nodes\": [...], \"edges\": [...]}");
  }
  std::vector<std::string> ids;
  std::vector<double> weights;
  std::map<std::string, int> index;
  for (const json& node : doc["nodes"]) {
    if (!node.is_object() || !node.contains("id")) throw Error(ErrorKind::kParseError, "node without id");
    const std::string key = id_key(node["id"]);
    double w = 1;
    if (node.contains("weight")) {
      if (!node["weight"].is_number()) throw Error(ErrorKind::kParseError, "weight must be a number");
      w = node["weight"].get<double>();
    }
    if (!index.emplace(key, static_cast<int>(ids.size())).second) {
      throw Error(ErrorKind::kParseError, "duplicate node id " + key);
    }
    ids.push_back(key);
    weights.push_back(w);
  }
  std::vector<std::pair<int, int>> edges;
  for (const json& edge : doc["edges"]) {
    if (!edge.is_array() || edge.size() != 2) throw Error(ErrorKind::kParseError, "edge must be a pair");
    auto a = index.find(id_key(edge[0]));
    auto b = index.find(id_key(edge[1]));
    if (a == index.end() || b == index.end()) throw Error(ErrorKind::kParseError, "edge names an unknown node");
    edges.emplace_back(a->second, b->second);
  }
  return WeightedGraph::build(std::move(ids), std::move(weights), std::move(edges));
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

WeightedGraph grid_graph(const GridDims& dims) {
  const GridDual g(dims);
  std::vector<std::string> ids;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const PrimalVertex p = g.vertex(v);
    ids.push_back(std::to_string(p.i) + "," + std::to_string(p.j));
  }
  std::vector<std::pair<int, int>> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges.push_back(g.endpoints(e));
  return WeightedGraph::build(std::move(ids), std::vector<double>(g.vertex_count(), 1.0),
                              std::move(edges));
}

bool within_tolerance(double weight, double ideal, double eps) {
  return std::abs(weight - ideal) <= eps * ideal + 1e-9;
}

std::vector<double> district_weights(const WeightedGraph& g, const KPartition& p) {
  std::vector<double> w(p.k + 1, 0);
  for (int v = 0; v < g.node_count(); ++v) w[p.assignment[v]] += g.weights[v];
  return w;
}

bool districts_contiguous(const WeightedGraph& g, const KPartition& p) {
  if (static_cast<int>(p.assignment.size()) != g.node_count() || p.k < 1) return false;
  std::vector<int> first(p.k + 1, -1);
  std::vector<int> size(p.k + 1, 0);
  for (int v = 0; v < g.node_count(); ++v) {
    const int d = p.assignment[v];
    if (d < 1 || d > p.k) return false;
    if (first[d] < 0) first[d] = v;
    ++size[d];
  }
  std::vector<char> seen(g.node_count(), 0);
  for (int d = 1; d <= p.k; ++d) {
    if (first[d] < 0) return false;
    std::vector<int> stack{first[d]};
    seen[first[d]] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.adj[v]) {
        if (!seen[inc.neighbor] && p.assignment[inc.neighbor] == d) {
          seen[inc.neighbor] = 1;
          ++reached;
          stack.push_back(inc.neighbor);
        }
      }
    }
    if (reached != size[d]) return false;
  }
  return true;
}

bool is_valid(const WeightedGraph& g, const KPartition& p) {
  if (!districts_contiguous(g, p)) return false;
  const std::vector<double> w = district_weights(g, p);
  const double ideal = p.ideal(g);
  for (int d = 1; d <= p.k; ++d) {
    if (!within_tolerance(w[d], ideal, p.eps)) return false;
  }
  return true;
}

KPartition recom_step(const WeightedGraph& g, const KPartition& p, CounterRng& rng,
                      RecomStepInfo* info, int retry_budget) {
  if (!districts_contiguous(g, p)) {
    throw Error(ErrorKind::kInvalidArgument, "partition districts are not contiguous");
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& [a, b] : g.edges) {
    const int da = p.assignment[a];
    const int db = p.assignment[b];
    if (da != db) pairs.emplace(std::min(da, db), std::max(da, db));
  }
  if (pairs.empty()) throw Error(ErrorKind::kStepFailed, "no adjacent district pair");
  auto it = pairs.begin();
  std::advance(it, static_cast<long>(rng.below(pairs.size())));
  const auto [da, db] = *it;

  std::vector<int> nodes;
  for (int v = 0; v < g.node_count(); ++v) {
    if (p.assignment[v] == da || p.assignment[v] == db) nodes.push_back(v);
  }
  const Split split = induced(g, nodes);
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = g.weights[nodes[i]];
  double merged = 0;
  for (double x : w) merged += x;
  const double ideal = p.ideal(g);

  for (int attempt = 1; attempt <= retry_budget; ++attempt) {
    const std::vector<int> tree = wilson_ust(split.graph, 0, rng);
    std::vector<TreeCut> ok;
    for (const TreeCut& cut : subtree_weights(split.graph, tree, w)) {
      if (within_tolerance(cut.below, ideal, p.eps) &&
          within_tolerance(merged - cut.below, ideal, p.eps)) {
        ok.push_back(cut);
      }
    }
    if (ok.empty()) continue;
    const TreeCut& cut = ok[rng.below(ok.size())];
    const std::vector<char> side = child_side(split.graph, tree, cut);
    // The piece holding the merged region's first node keeps the smaller label.
    const char root_side = side[0];
    KPartition out = p;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out.assignment[nodes[i]] = side[i] == root_side ? da : db;
    }
    if (info) *info = {da, db, attempt, static_cast<int>(ok.size())};
    return out;
  }
  throw Error(ErrorKind::kStepFailed, "no balanced split of districts " + std::to_string(da) +
                                          " and " + std::to_string(db) + " after " +
                                          std::to_string(retry_budget) + " trees");
}

KPartition initial_partition(const WeightedGraph& g, int k, double eps, CounterRng& rng,
                             int retry_budget) {
  if (k < 1 || k > g.node_count()) throw Error(ErrorKind::kInvalidArgument, "bad district count");
  KPartition p;
  p.k = k;
  p.eps = eps;
  p.assignment.assign(g.node_count(), k);
  const double ideal = g.total_weight() / k;
  for (int d = 1; d < k; ++d) {
    std::vector<int> nodes;
    for (int v = 0; v < g.node_count(); ++v) {
      if (p.assignment[v] == k) nodes.push_back(v);
    }
    const Split split = induced(g, nodes);
    std::vector<double> w(nodes.size());
    double rest = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) rest += (w[i] = g.weights[nodes[i]]);
    const int remaining = k - d;
    bool done = false;
    for (int attempt = 0; attempt < retry_budget && !done; ++attempt) {
      const std::vector<int> tree = wilson_ust(split.graph, 0, rng);
      std::vector<TreeCut> ok;
      for (const TreeCut& cut : subtree_weights(split.graph, tree, w)) {
        const double other = rest - cut.below;
        const bool last = remaining == 1;
        if (within_tolerance(cut.below, ideal, eps) &&
            (last ? within_tolerance(other, ideal, eps)
                  : std::abs(other - remaining * ideal) <= remaining * eps * ideal + 1e-9)) {
          ok.push_back(cut);
        }
      }
      if (ok.empty()) continue;
      const TreeCut& cut = ok[rng.below(ok.size())];
      const std::vector<char> side = child_side(split.graph, tree, cut);
      // Both sides of a tree edge are connected.
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (side[i]) p.assignment[nodes[i]] = d;
      }
      done = true;
    }
    if (!done) throw Error(ErrorKind::kStepFailed, "could not seed district " + std::to_string(d));
  }
  return p;
}

void run_chain(const WeightedGraph& g, const KPartition& init, std::int64_t steps, int thin,
               CounterRng& rng, const std::function<bool(std::int64_t, const KPartition&)>& emit) {
  if (thin < 1) throw Error(ErrorKind::kInvalidArgument, "thin must be >= 1");
  if (!is_valid(g, init)) throw Error(ErrorKind::kInvalidArgument, "initial partition is not valid");
  KPartition state = init;
  if (!emit(0, state)) return;
  for (std::int64_t t = 1; t <= steps; ++t) {
    state = recom_step(g, state, rng);
    if (t % thin == 0 && !emit(t, state)) return;
  }
}

}  // namespace gridsep
