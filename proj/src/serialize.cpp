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

#include "gridsep/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "gridsep/error.hpp"

namespace gridsep {
namespace {

Json vertex_json(const GridDual& g, VertexId v) {
  const PrimalVertex p = g.vertex(v);
  return Json::array({p.i, p.j});
}

Json window_json(const SubgridWindow& w) {
  if (w.empty()) return nullptr;
  return Json{{"rows", {w.row_lo, w.row_hi}}, {"cols", {w.col_lo, w.col_hi}}};
}

}  // namespace

Json edge_json(const GridDual& g, EdgeId e) {
  const auto [a, b] = g.endpoints(e);
  return Json::array({vertex_json(g, a), vertex_json(g, b)});
}

Json cut_set_json(const GridDual& g, const std::vector<EdgeId>& edges) {
  std::vector<EdgeId> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [&](EdgeId x, EdgeId y) {
    return g.endpoints(x) < g.endpoints(y);
  });
  Json out = Json::array();
  for (EdgeId e : sorted) out.push_back(edge_json(g, e));
  return out;
}

std::vector<EdgeId> parse_cut_set(const GridDual& g, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::kParseError, "cut set must be an array");
  std::vector<EdgeId> out;
  for (const Json& e : j) {
    try {
      const int i1 = e.at(0).at(0).get<int>();
      const int j1 = e.at(0).at(1).get<int>();
      const int i2 = e.at(1).at(0).get<int>();
      const int j2 = e.at(1).at(1).get<int>();
      if (!g.in_bounds(i1, j1) || !g.in_bounds(i2, j2)) throw Error(ErrorKind::kParseError, "vertex out of range");
      auto id = g.edge_between(g.vertex_id(i1, j1), g.vertex_id(i2, j2));
      if (!id) throw Error(ErrorKind::kParseError, "vertices are not adjacent");
      out.push_back(*id);
    } catch (const Json::exception& ex) {
      throw Error(ErrorKind::kParseError, ex.what());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeId parse_edge_spec(const GridDual& g, const std::string& spec) {
  std::vector<int> v;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParseError, "bad edge spec '" + spec + "'");
    }
  }
  if (v.size() != 4 || !g.in_bounds(v[0], v[1]) || !g.in_bounds(v[2], v[3])) {
    throw Error(ErrorKind::kParseError, "edge spec must be i,j,i',j' inside the grid");
  }
  auto e = g.edge_between(g.vertex_id(v[0], v[1]), g.vertex_id(v[2], v[3]));
  if (!e) throw Error(ErrorKind::kParseError, "edge spec names non-adjacent vertices");
  return *e;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kParseError, "bad integer in '" + context + "'");
}

}  // namespace

Walk parse_dual_path(const GridDual& g, const std::string& spec) {
  std::vector<DualVertexId> vs;
  for (const std::string& item : split(spec, ';')) {
    if (item == "O" || item == "o") {
      vs.push_back(g.outer());
      continue;
    }
    const auto parts = split(item, ',');
    if (parts.size() != 2) throw Error(ErrorKind::kParseError, "bad dual vertex '" + item + "'");
    const int i = parse_int(parts[0], item);
    const int j = parse_int(parts[1], item);
    if (i < 1 || j < 1 || i >= g.rows() || j >= g.cols()) {
      throw Error(ErrorKind::kParseError, "face out of range '" + item + "'");
    }
    vs.push_back(g.face_id(i, j));
  }
  if (vs.empty()) throw Error(ErrorKind::kParseError, "empty path");
  Walk w = Walk::at(vs.front());
  for (std::size_t k = 1; k < vs.size(); ++k) {
    EdgeId best = -1;
    for (const Incidence& inc : g.dual_incident(vs[k - 1])) {
      if (inc.neighbor == vs[k] && (best < 0 || inc.edge < best)) best = inc.edge;
    }
    if (best < 0) throw Error(ErrorKind::kParseError, "path steps between non-adjacent faces");
    w.step(best, vs[k]);
  }
  return w;
}

SubgridWindow parse_window(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 4) throw Error(ErrorKind::kParseError, "window must be r1,r2,c1,c2");
  return SubgridWindow{parse_int(parts[0], spec), parse_int(parts[1], spec),
                       parse_int(parts[2], spec), parse_int(parts[3], spec)};
}

Json partition_json(const GridDual& g, const Partition2& p) {
  return Json{{"cut", cut_set_json(g, partition_to_cycle(g, p))},
              {"interior_size", p.interior_count()},
              {"imbalance", p.imbalance()}};
}

Json sample_json(const GridDual& g, const SampleOutcome& s) {
  Json j{{"cut", cut_set_json(g, s.cycle)},
         {"interior_size", s.partition.interior_count()},
         {"imbalance", s.partition.imbalance()},
         {"restarts", s.restarts},
         {"steps", s.walk_steps}};
  if (s.start_dual_edge >= 0) j["start_edge"] = edge_json(g, s.start_dual_edge);
  return j;
}

Json reconnect_json(const GridDual& g, const ReconnectResult& r) {
  Json flipped = Json::array();
  for (VertexId v : r.flipped) flipped.push_back(vertex_json(g, v));
  return Json{{"coloring", r.coloring.to_string()},
              {"cut", cut_set_json(g, partition_to_cycle(g, r.partition))},
              {"flipped", flipped},
              {"delta_size", r.delta_size},
              {"outer_degree_before", r.outer_degree_before},
              {"outer_degree_after", r.outer_degree_after},
              {"local_case", r.local_case},
              {"path", to_string(r.path)}};
}

Json unsep_report_json(const GridDual& g, const UnsepReport& r) {
  Json j{{"rows", r.rows},
         {"cols", r.cols},
         {"u", vertex_json(g, r.u)},
         {"v", vertex_json(g, r.v)},
         {"min_len", r.min_len},
         {"gamma", r.gamma},
         {"domain_size", r.domain_size},
         {"image_size", r.image_size},
         {"beta_observed", r.beta_observed},
         {"delta_observed", r.delta_observed},
         {"delta_over_two", r.delta_over_two},
         {"max_preimage", r.max_preimage},
         {"max_flips", r.max_flips},
         {"outer_monotone", r.outer_monotone},
         {"locality_ok", r.locality_ok},
         {"preimage_bound_ok", r.preimage_bound_ok},
         {"paths", r.path_counts},
         {"passes", r.passes()}};
  if (!r.records.empty()) {
    Json recs = Json::array();
    for (const UnsepRecord& rec : r.records) {
      recs.push_back({{"cycle", cut_set_json(g, rec.cycle)},
                      {"image", cut_set_json(g, rec.image)},
                      {"window", window_json(rec.window)},
                      {"window_edges", rec.window_edges},
                      {"imbalance_change", rec.imbalance_change},
                      {"outer_before", rec.outer_before},
                      {"outer_after", rec.outer_after},
                      {"flips", rec.flips},
                      {"path", to_string(rec.path)}});
    }
    j["records"] = recs;
  }
  return j;
}

Json bijection_report_json(const BijectionReport& r) {
  return Json{{"instances", r.pairs},
              {"walks", r.walks},
              {"injective", r.injective},
              {"round_trip", r.round_trip},
              {"erasure_ok", r.erasure_ok},
              {"outer_ok", r.outer_ok},
              {"probability_ok", r.probability_ok},
              {"max_edge_diff", r.max_edge_diff},
              {"edge_bound", r.edge_bound},
              {"min_log_ratio", r.min_log_ratio},
              {"violations", r.violations},
              {"passes", r.ok()}};
}

Json kpartition_json(std::int64_t step, const KPartition& p) {
  return Json{{"step", step}, {"k", p.k}, {"assignment", p.assignment}};
}

Json sep_stats_json(const SepStats& s) {
  return Json{{"source", s.source},
              {"seed", s.seed},
              {"params", s.params},
              {"sampled", s.sampled},
              {"separated", s.separated}};
}

Json export_grid_json(const GridDims& dims) {
  const WeightedGraph w = grid_graph(dims);
  Json nodes = Json::array();
  for (int v = 0; v < w.node_count(); ++v) nodes.push_back({{"id", w.ids[v]}, {"weight", w.weights[v]}});
  Json edges = Json::array();
  for (const auto& [a, b] : w.edges) edges.push_back({w.ids[a], w.ids[b]});
  return Json{{"nodes", nodes}, {"edges", edges}};
}

}  // namespace gridsep
