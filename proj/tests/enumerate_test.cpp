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

#include <algorithm>
#include <set>
#include <unordered_set>

#include "gridsep/enumerate.hpp"
#include "gridsep/error.hpp"
#include "gridsep/spanning.hpp"
#include "test_util.hpp"

namespace gridsep {
namespace {

using testing::face;

// Number of walks of each length from a to b, by repeated adjacency products.
std::vector<std::uint64_t> walk_counts(const GridDual& g, DualVertexId a, DualVertexId b, int max_len) {
  const int n = g.dual_vertex_count();
  std::vector<std::uint64_t> cur(n, 0);
  cur[a] = 1;
  std::vector<std::uint64_t> out{cur[b]};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::uint64_t> next(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [p, q] = g.dual_endpoints(e);
      next[q] += cur[p];
      next[p] += cur[q];
    }
    cur = std::move(next);
    out.push_back(cur[b]);
  }
  return out;
}

std::uint64_t total(const std::vector<std::uint64_t>& v) {
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

TEST(EnumerateWalks, AdjacentSingleStep) {
  const GridDual g({3, 3});
  std::vector<Walk> got;
  EnumBudget b;
  b.max_walk_len = 1;
  enumerate_walks(g, face(g, 1, 1), g.outer(), b, [&](const Walk& w) {
    got.push_back(w);
    return true;
  });
  ASSERT_EQ(got.size(), 2u);  // two parallel edges at the corner
  EXPECT_NE(got[0].edges[0], got[1].edges[0]);
  for (const Walk& w : got) EXPECT_EQ(w.length(), 1u);
}

TEST(EnumerateWalks, TwoByTwoFaceToOuterPinned) {
  const GridDual g({2, 2});
  EnumBudget b;
  b.max_walk_len = 3;
  const std::uint64_t n = enumerate_walks(g, face(g, 1, 1), g.outer(), b, [](const Walk&) { return true; });
  EXPECT_EQ(n, 68u);
  EXPECT_EQ(n, total(walk_counts(g, face(g, 1, 1), g.outer(), 3)));
}

TEST(EnumerateWalks, CountsMatchAdjacencyPowers) {
  const GridDual g({4, 4});
  EnumBudget b;
  b.max_walk_len = 7;
  for (DualVertexId a : {face(g, 2, 2), g.outer()}) {
    for (DualVertexId z = 0; z < g.dual_vertex_count(); ++z) {
      std::vector<std::uint64_t> by_len(8, 0);
      enumerate_walks(g, a, z, b, [&](const Walk& w) {
        EXPECT_TRUE(is_valid_walk(g, w));
        ++by_len[w.length()];
        return true;
      });
      EXPECT_EQ(by_len, walk_counts(g, a, z, 7));
    }
  }
}

TEST(EnumerateWalks, LexicographicAndDuplicateFree) {
  const GridDual g({3, 4});
  EnumBudget b;
  b.max_walk_len = 6;
  std::vector<EdgeId> prev;
  bool first = true;
  std::unordered_set<Walk, WalkHash> seen;
  enumerate_walks(g, face(g, 1, 1), face(g, 2, 3), b, [&](const Walk& w) {
    if (!first) EXPECT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), w.edges.begin(), w.edges.end()));
    EXPECT_TRUE(seen.insert(w).second);
    prev = w.edges;
    first = false;
    return true;
  });
}

TEST(EnumerateWalks, EarlyStop) {
  const GridDual g({3, 3});
  int calls = 0;
  EnumBudget b;
  b.max_walk_len = 8;
  const auto n = enumerate_walks(g, face(g, 1, 1), g.outer(), b, [&](const Walk&) { return ++calls < 5; });
  EXPECT_EQ(calls, 5);
  EXPECT_EQ(n, 5u);
}

TEST(EnumerateWalks, BudgetExceeded) {
  const GridDual g({5, 5});
  EnumBudget b;
  b.max_walk_len = 30;
  b.wall_clock_seconds = 0.05;
  try {
    enumerate_walks(g, face(g, 1, 1), g.outer(), b, [](const Walk&) { return true; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
  }
  EnumBudget small;
  small.max_vertices = 5;
  EXPECT_THROW(enumerate_walks(g, 0, 1, small, [](const Walk&) { return true; }), Error);
  EXPECT_THROW(enumerate_cycles(g, small, [](const DualCycle&) { return true; }), Error);
}

TEST(EnumerateCycles, IncludesVertexFourCycles) {
  const GridDual g({3, 3});
  std::set<DualCycle> cycles;
  enumerate_cycles(g, {}, [&](const DualCycle& c) {
    EXPECT_TRUE(cycles.insert(c).second);
    return true;
  });
  // The only interior vertex of the 3x3 grid is (2,2).
  std::vector<EdgeId> around;
  for (const Incidence& inc : g.primal_incident(g.vertex_id(2, 2))) around.push_back(inc.edge);
  std::sort(around.begin(), around.end());
  EXPECT_TRUE(cycles.count(around));
  const GridDual h({4, 4});
  std::set<DualCycle> hc;
  enumerate_cycles(h, {}, [&](const DualCycle& c) {
    hc.insert(c);
    return true;
  });
  for (int i = 2; i <= 3; ++i) {
    for (int j = 2; j <= 3; ++j) {
      std::vector<EdgeId> ring;
      for (const Incidence& inc : h.primal_incident(h.vertex_id(i, j))) ring.push_back(inc.edge);
      std::sort(ring.begin(), ring.end());
      EXPECT_TRUE(hc.count(ring)) << i << "," << j;
    }
  }
}

TEST(EnumerateCycles, BijectionWithPartitions) {
  for (auto [m, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{3, 4}, std::pair{4, 4}}) {
    const GridDual g({m, n});
    std::set<std::uint64_t> from_cycles;
    std::uint64_t count = 0;
    enumerate_cycles(g, {}, [&](const DualCycle& c) {
      EXPECT_TRUE(is_dual_cycle(g, c));
      const Partition2 p = cycle_to_partition(g, c);
      EXPECT_TRUE(is_feasible(g, p));
      EXPECT_EQ(partition_to_cycle(g, p), c);
      from_cycles.insert(testing::side_mask(p));
      ++count;
      return true;
    });
    EXPECT_EQ(from_cycles.size(), count);
    EXPECT_EQ(from_cycles, testing::brute_force_splits(m, n)) << m << "x" << n;
    EXPECT_EQ(count, enumerate_partitions(g).size());
  }
}

TEST(EnumerateCycles, LengthCap) {
  const GridDual g({3, 3});
  EnumBudget b;
  b.max_cycle_len = 1;
  EXPECT_EQ(enumerate_cycles(g, b, [](const DualCycle&) { return true; }), 0u);
  b.max_cycle_len = 2;
  // Only the corner parallel pairs remain.
  std::uint64_t n = enumerate_cycles(g, b, [](const DualCycle& c) {
    EXPECT_EQ(c.size(), 2u);
    return true;
  });
  EXPECT_EQ(n, 4u);
  b.max_cycle_len = 4;
  enumerate_cycles(g, b, [](const DualCycle& c) {
    EXPECT_LE(c.size(), 4u);
    return true;
  });
}

TEST(EnumerateCycles, Deterministic) {
  const GridDual g({3, 4});
  std::vector<DualCycle> a, b;
  enumerate_cycles(g, {}, [&](const DualCycle& c) {
    a.push_back(c);
    return true;
  });
  enumerate_cycles(g, {}, [&](const DualCycle& c) {
    b.push_back(c);
    return true;
  });
  EXPECT_EQ(a, b);
}

TEST(EnumerateSimplePaths, MatchesFilteredWalks) {
  const GridDual g({4, 4});
  const EdgeId skip = testing::edge(g, 2, 2, 2, 3);
  const auto [x, y] = g.dual_endpoints(skip);
  std::set<std::vector<EdgeId>> expect;
  EnumBudget b;
  b.max_walk_len = 7;
  enumerate_walks(g, x, y, b, [&](const Walk& w) {
    if (is_simple_path(w) && std::find(w.edges.begin(), w.edges.end(), skip) == w.edges.end()) {
      expect.insert(w.edges);
    }
    return true;
  });
  std::set<std::vector<EdgeId>> got;
  enumerate_simple_paths(g, x, y, 7, skip, [&](const Walk& w) {
    EXPECT_TRUE(got.insert(w.edges).second);
    return true;
  });
  EXPECT_EQ(got, expect);
  EXPECT_FALSE(got.empty());
}

TEST(EnumerateWithErasure, MatchesFilteredWalks) {
  const GridDual g({4, 4});
  const std::vector<Walk> paths = {
      testing::dual_path(g, {face(g, 1, 1), face(g, 1, 2), face(g, 2, 2)}),
      testing::dual_path(g, {g.outer(), face(g, 2, 1), face(g, 2, 2), face(g, 2, 3)}),
      testing::dual_path(g, {face(g, 2, 2)}),
  };
  for (const Walk& d : paths) {
    const int max_len = 7;
    std::set<std::vector<EdgeId>> expect;
    EnumBudget b;
    b.max_walk_len = max_len;
    enumerate_walks(g, d.front(), d.back(), b, [&](const Walk& w) {
      if (loop_erase(w).erasure == d) expect.insert(w.edges);
      return true;
    });
    std::set<std::vector<EdgeId>> got;
    enumerate_walks_with_erasure(g, d, max_len, [&](const Walk& w) {
      EXPECT_EQ(w.front(), d.front());
      EXPECT_TRUE(got.insert(w.edges).second);
      return true;
    });
    EXPECT_EQ(got, expect);
  }
}

TEST(EnumerateWithErasure, RejectsNonSimpleErasure) {
  const GridDual g({3, 3});
  const Walk d = testing::dual_path(g, {face(g, 1, 1), face(g, 1, 2), face(g, 1, 1)});
  EXPECT_THROW(enumerate_walks_with_erasure(g, d, 5, [](const Walk&) { return true; }), Error);
}

}  // namespace
}  // namespace gridsep
