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


#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "gridsep/error.hpp"
#include "gridsep/recom.hpp"
#include "gridsep/serialize.hpp"
#include "gridsep/spanning.hpp"

namespace gridsep {
namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kStepFailed;
}

WeightedGraph path_graph(int n) {
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return WeightedGraph::build(ids, std::vector<double>(n, 1.0), edges);
}

TEST(LoadGraph, TwoNodes) {
  const WeightedGraph g = parse_graph(R"({"nodes":[{"id":"a","weight":3},{"id":"b"}],"edges":[["a","b"]]})");
  EXPECT_EQ(g.node_count(), 2);
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_EQ(g.ids[0], "a");
  EXPECT_DOUBLE_EQ(g.weights[0], 3);
  EXPECT_DOUBLE_EQ(g.total_weight(), 4);
}

TEST(LoadGraph, IntegerIds) {
  const WeightedGraph g = parse_graph(R"({"nodes":[{"id":7},{"id":9}],"edges":[[9,7]]})");
  EXPECT_EQ(g.ids[1], "9");
  EXPECT_EQ(g.edges[0], std::make_pair(0, 1));
}

TEST(LoadGraph, Errors) {
  EXPECT_EQ(parse_kind("{nodes"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind("[]"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[],"edges":[]})"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[{"id":"a","weight":-1}],"edges":[]})"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[{"id":"a"},{"id":"a"}],"edges":[]})"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[{"id":"a"}],"edges":[["a","a"]]})"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[{"id":"a"},{"id":"b"}],"edges":[["a","b"],["b","a"]]})"),
            ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[{"id":"a"}],"edges":[["a","z"]]})"), ErrorKind::kParseError);
  EXPECT_EQ(parse_kind(R"({"nodes":[{"id":"a"},{"id":"b"}],"edges":[]})"), ErrorKind::kDisconnectedGraph);
  try {
    load_graph("/nonexistent/graph.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
  }
}

TEST(LoadGraph, ExportedGridIsThePrimalGrid) {
  for (const GridDims dims : {GridDims{2, 2}, GridDims{3, 5}, GridDims{4, 4}}) {
    const WeightedGraph w = parse_graph(export_grid_json(dims).dump());
    const GridDual g(dims);
    ASSERT_EQ(w.node_count(), dims.vertex_count());
    // Map node ids back to vertex ids through their "i,j" names.
    std::vector<int> to_vertex(w.node_count());
    for (int a = 0; a < w.node_count(); ++a) {
      const auto comma = w.ids[a].find(',');
      to_vertex[a] = g.vertex_id(std::stoi(w.ids[a].substr(0, comma)), std::stoi(w.ids[a].substr(comma + 1)));
    }
    std::set<std::pair<int, int>> got;
    for (const auto& [a, b] : w.edges) {
      got.emplace(std::min(to_vertex[a], to_vertex[b]), std::max(to_vertex[a], to_vertex[b]));
    }
    std::set<std::pair<int, int>> want;
    for (EdgeId e = 0; e < g.edge_count(); ++e) want.insert(g.endpoints(e));
    EXPECT_EQ(got, want);
    const WeightedGraph direct = grid_graph(dims);
    EXPECT_EQ(direct.edges, w.edges);
    EXPECT_EQ(direct.ids, w.ids);
  }
}

TEST(Tolerance, Basics) {
  EXPECT_TRUE(within_tolerance(10, 10, 0));
  EXPECT_FALSE(within_tolerance(10.5, 10, 0.01));
  EXPECT_TRUE(within_tolerance(10.5, 10, 0.05));
  const WeightedGraph g = path_graph(4);
  KPartition p{{1, 1, 2, 2}, 2, 0};
  EXPECT_TRUE(is_valid(g, p));
  p.assignment = {1, 2, 1, 2};
  EXPECT_FALSE(districts_contiguous(g, p));
  p.assignment = {1, 2, 2, 2};
  EXPECT_TRUE(districts_contiguous(g, p));
  EXPECT_FALSE(is_valid(g, p));
}

TEST(RecomStep, PathOfFourSplitsInTheMiddle) {
  const WeightedGraph g = path_graph(4);
  KPartition p{{1, 2, 2, 2}, 2, 0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CounterRng rng(seed);
    const KPartition q = recom_step(g, p, rng);
    EXPECT_EQ(q.assignment, (std::vector<int>{1, 1, 2, 2}));
  }
}

TEST(RecomStep, OddMergeHasNoExactSplit) {
  const WeightedGraph g = path_graph(3);
  const KPartition p{{1, 1, 2}, 2, 0};
  CounterRng rng(1);
  try {
    recom_step(g, p, rng, nullptr, 20);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStepFailed);
  }
}

TEST(RecomStep, RejectsDiscontiguousInput) {
  const WeightedGraph g = path_graph(4);
  CounterRng rng(1);
  EXPECT_THROW(recom_step(g, KPartition{{1, 2, 1, 2}, 2, 0}, rng), Error);
}

TEST(RecomStep, AdjacentPairIsUniform) {
  // Three districts on a path: pairs (1,2) and (2,3) each with probability 1/2.
  const WeightedGraph g = path_graph(6);
  const KPartition p{{1, 1, 2, 2, 3, 3}, 3, 0};
  CounterRng rng(5);
  const int n = 20000;
  int first = 0;
  for (int t = 0; t < n; ++t) {
    RecomStepInfo info;
    const KPartition q = recom_step(g, p, rng, &info);
    EXPECT_EQ(q, p);
    first += info.district_a == 1;
  }
  EXPECT_NEAR(first, n / 2.0, 3 * std::sqrt(n * 0.25));
}

TEST(RecomStep, TwoDistrictResplitOnTwoByTwoMatchesSpanningTreeDistribution) {
  const GridDims dims{2, 2};
  const GridDual dual(dims);
  const WeightedGraph g = grid_graph(dims);
  const ExactDistribution d = exact_distribution(dual, 0, kDefaultEnumerationCap);
  KPartition p{{1, 1, 2, 2}, 2, 1e9};
  CounterRng rng(11);
  std::vector<double> freq(d.entries.size(), 0);
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const KPartition q = recom_step(g, p, rng);
    std::vector<std::uint8_t> side(4);
    for (int v = 0; v < 4; ++v) side[v] = q.assignment[v] == 1;
    const long i = d.index_of(partition_to_cycle(dual, Partition2(side)));
    ASSERT_GE(i, 0);
    freq[i] += 1.0 / n;
  }
  double tv = 0;
  for (std::size_t i = 0; i < freq.size(); ++i) tv += std::abs(freq[i] - static_cast<double>(d.probability(i)));
  EXPECT_LT(tv / 2, 0.05);
}

TEST(RecomStep, TwoDistrictResplitWeightsByCutSize) {
  // A uniform tree edge of a uniform spanning tree cuts (X, Y) with
  // probability proportional to sp(X) sp(Y) |C|.
  const GridDims dims{3, 3};
  const GridDual dual(dims);
  const WeightedGraph g = grid_graph(dims);
  const ExactDistribution d = exact_distribution(dual, 0, kDefaultEnumerationCap);
  std::vector<double> q(d.entries.size());
  double total = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = static_cast<double>(d.entries[i].weight) * d.entries[i].cycle.size();
    total += q[i];
  }
  for (double& x : q) x /= total;
  KPartition p{{1, 1, 1, 1, 2, 2, 2, 2, 2}, 2, 1e9};
  CounterRng rng(12);
  std::vector<double> freq(q.size(), 0);
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const KPartition s = recom_step(g, p, rng);
    std::vector<std::uint8_t> side(9);
    for (int v = 0; v < 9; ++v) side[v] = s.assignment[v] == 1;
    const long i = d.index_of(partition_to_cycle(dual, Partition2(side)));
    ASSERT_GE(i, 0);
    freq[i] += 1.0 / n;
  }
  double tv_q = 0, tv_sp = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    tv_q += std::abs(freq[i] - q[i]);
    tv_sp += std::abs(freq[i] - static_cast<double>(d.probability(i)));
  }
  EXPECT_LT(tv_q / 2, 0.03);
  EXPECT_GT(tv_sp / 2, 0.08);
}

TEST(InitialPartition, ValidAcrossSeeds) {
  const WeightedGraph g = grid_graph({8, 8});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(seed);
    const KPartition p = initial_partition(g, 4, 0.05, rng);
    EXPECT_TRUE(is_valid(g, p));
    EXPECT_EQ(p.k, 4);
  }
  CounterRng rng(0);
  EXPECT_THROW(initial_partition(g, 0, 0.05, rng), Error);
}

TEST(RunChain, ZeroStepsEmitsInit) {
  const WeightedGraph g = grid_graph({6, 6});
  CounterRng rng(3);
  const KPartition init = initial_partition(g, 2, 0.1, rng);
  std::vector<std::int64_t> ts;
  run_chain(g, init, 0, 1, rng, [&](std::int64_t t, const KPartition& p) {
    ts.push_back(t);
    EXPECT_EQ(p, init);
    return true;
  });
  EXPECT_EQ(ts, (std::vector<std::int64_t>{0}));
  EXPECT_THROW(run_chain(g, init, 5, 0, rng, [](std::int64_t, const KPartition&) { return true; }), Error);
}

TEST(RunChain, Deterministic) {
  const WeightedGraph g = grid_graph({6, 6});
  auto run = [&](std::uint64_t seed) {
    CounterRng rng(seed);
    const KPartition init = initial_partition(g, 3, 0.1, rng);
    std::vector<std::vector<int>> out;
    run_chain(g, init, 200, 10, rng, [&](std::int64_t, const KPartition& p) {
      out.push_back(p.assignment);
      return true;
    });
    return out;
  };
  const auto a = run(9);
  EXPECT_EQ(a.size(), 21u);
  EXPECT_EQ(a, run(9));
  EXPECT_NE(a, run(10));
}

TEST(RunChain, InvariantsOnTwelveByTwelve) {
  const WeightedGraph g = grid_graph({12, 12});
  CounterRng rng(2024);
  const KPartition init = initial_partition(g, 4, 0.05, rng);
  KPartition prev = init;
  std::int64_t emitted = 0;
  run_chain(g, init, 2000, 1, rng, [&](std::int64_t t, const KPartition& p) {
    ++emitted;
    EXPECT_TRUE(is_valid(g, p)) << t;
    std::set<int> changed;
    for (int v = 0; v < g.node_count(); ++v) {
      if (p.assignment[v] != prev.assignment[v]) {
        changed.insert(p.assignment[v]);
        changed.insert(prev.assignment[v]);
      }
    }
    EXPECT_LE(changed.size(), 2u) << t;
    prev = p;
    return !HasFailure();
  });
  EXPECT_EQ(emitted, 2001);
}

TEST(RunChain, VisitorStopsEarly) {
  const WeightedGraph g = grid_graph({4, 4});
  CounterRng rng(1);
  const KPartition init = initial_partition(g, 2, 0.2, rng);
  int calls = 0;
  run_chain(g, init, 100, 1, rng, [&](std::int64_t, const KPartition&) { return ++calls < 3; });
  EXPECT_EQ(calls, 3);
}

}  // namespace
}  // namespace gridsep
