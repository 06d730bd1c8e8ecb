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
#include <cmath>
#include <unordered_set>

#include "gridsep/enumerate.hpp"
#include "gridsep/error.hpp"
#include "gridsep/walkmap.hpp"
#include "test_util.hpp"

namespace gridsep {
namespace {

using testing::dual_path;
using testing::face;

struct Instance {
  Walk d;
  EdgeId conditioned;
};

// Simple dual paths between the ends of a dual edge that avoid the edge and
// pass through the window, with both ends outside it.
std::vector<Instance> instances(const GridDual& g, const SubgridWindow& h, int max_len) {
  std::vector<Instance> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [x, y] = g.dual_endpoints(e);
    if (g.in_window(x, h) || g.in_window(y, h)) continue;
    enumerate_simple_paths(g, x, y, max_len, e, [&](const Walk& p) {
      for (DualVertexId v : p.vertices) {
        if (g.in_window(v, h)) {
          out.push_back({p, e});
          break;
        }
      }
      return true;
    });
  }
  return out;
}

TEST(NoFlip, IdenticalPathsHoldVacuously) {
  const GridDual g({4, 4});
  const Walk d = dual_path(g, {face(g, 1, 1), face(g, 2, 1), face(g, 2, 2)});
  const NoFlipVerdict v = check_no_flip(g, MapContext{d, d, SubgridWindow::none(), 0});
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.reversed.empty());
}

TEST(NoFlip, HoldsForAllCompanionPairsInAFixedWindow) {
  const GridDual g({4, 4});
  const SubgridWindow h{2, 3, 2, 3};
  int pairs = 0;
  for (const Instance& in : instances(g, h, 9)) {
    for (const Walk& dp : companion_paths(g, in.d, in.conditioned, h)) {
      ++pairs;
      const NoFlipVerdict v = check_no_flip(g, MapContext{in.d, dp, h, h.edge_count()});
      ASSERT_TRUE(v.holds);
    }
  }
  EXPECT_GT(pairs, 100);
}

TEST(NoFlip, ReportsReversalOutsideWindow) {
  // Two cycles on an abstract graph sharing edge 7 = {4,5} but traversing it
  // in opposite directions; only vertices 1 and 2 are in the window.
  const std::vector<DirectedEdge> d = {{0, 1, 1}, {1, 4, 2}, {4, 5, 7}, {5, 9, 3}};
  const std::vector<DirectedEdge> dp = {{0, 2, 4}, {2, 5, 5}, {5, 4, 7}, {4, 9, 6}};
  const NoFlipVerdict v = check_no_flip(d, dp, [](int x) { return x == 1 || x == 2; });
  EXPECT_FALSE(v.holds);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].id, 7);
  const NoFlipVerdict inside = check_no_flip(d, dp, [](int x) { return x == 4 || x == 5; });
  EXPECT_TRUE(inside.holds);
  EXPECT_EQ(inside.reversed.size(), 1u);
}

TEST(ValidateContext, Errors) {
  const GridDual g({4, 4});
  const Walk d = dual_path(g, {face(g, 1, 1), face(g, 1, 2), face(g, 1, 3), face(g, 2, 3)});
  const Walk dp = dual_path(g, {face(g, 1, 1), face(g, 2, 1), face(g, 2, 2), face(g, 2, 3)});
  auto kind = [&](const MapContext& ctx) {
    try {
      validate_context(g, ctx);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidArgument;
  };
  EXPECT_EQ(kind({d, dp, SubgridWindow::none(), 10}), ErrorKind::kWindowViolation);
  // Endpoints inside the window.
  EXPECT_EQ(kind({d, dp, SubgridWindow{1, 2, 1, 3}, 10}), ErrorKind::kWindowViolation);
  const GridDual big({5, 5});
  const Walk e = dual_path(big, {face(big, 1, 1), face(big, 1, 2), face(big, 1, 3), face(big, 1, 4)});
  const Walk ep = dual_path(big, {face(big, 1, 1), face(big, 1, 2), face(big, 2, 2), face(big, 2, 3),
                                  face(big, 1, 3), face(big, 1, 4)});
  const SubgridWindow h{1, 2, 2, 3};
  auto big_kind = [&](const MapContext& ctx) {
    try {
      validate_context(big, ctx);
    } catch (const Error& err) {
      return err.kind();
    }
    return ErrorKind::kInvalidArgument;
  };
  EXPECT_NO_THROW(validate_context(big, {e, ep, h, h.edge_count()}));
  EXPECT_NO_THROW(validate_context(big, {ep, e, h, h.edge_count()}));
  // Window larger than beta allows.
  EXPECT_EQ(big_kind({e, ep, h, 1}), ErrorKind::kWindowViolation);
  // Differences outside the window.
  EXPECT_EQ(big_kind({e, ep, SubgridWindow{1, 1, 2, 3}, 10}), ErrorKind::kWindowViolation);
  // The target may not use more Outer edges than the source.
  const Walk f = dual_path(g, {face(g, 2, 1), face(g, 2, 2), face(g, 2, 3)});
  const Walk fp = dual_path(g, {face(g, 2, 1), g.outer(), face(g, 2, 3)});
  EXPECT_EQ(kind({f, fp, SubgridWindow{1, 3, 1, 3}, 100}), ErrorKind::kWindowViolation);
  EXPECT_NO_THROW(validate_context(g, {d, d, SubgridWindow::none(), 0}));
}

TEST(BaseWalk, EqualPathsGiveThePath) {
  const GridDual g({4, 4});
  const Walk d = dual_path(g, {face(g, 1, 1), face(g, 2, 1), face(g, 2, 2), face(g, 2, 3), g.outer()});
  const MapContext ctx{d, d, SubgridWindow::none(), 0};
  EXPECT_EQ(base_walk(g, ctx), d);
  // Loop-free input maps to the base walk, with or without a window.
  EXPECT_EQ(map_walk(g, ctx, d), d);
}

TEST(BaseWalk, ErasesToTargetAndVisitsBothPaths) {
  const GridDual g({4, 4});
  const SubgridWindow h{1, 2, 1, 2};
  int checked = 0;
  for (const Instance& in : instances(g, h, 8)) {
    for (const Walk& dp : companion_paths(g, in.d, in.conditioned, h)) {
      const MapContext ctx{in.d, dp, h, h.edge_count()};
      const Walk base = base_walk(g, ctx);
      ASSERT_TRUE(is_valid_walk(g, base));
      ASSERT_EQ(loop_erase(base).erasure, dp);
      std::vector<int> seen = first_appearance(base, g.dual_vertex_count());
      for (DualVertexId v : in.d.vertices) ASSERT_GE(seen[v], 0);
      ASSERT_LE(outer_steps(g, base), outer_steps(g, in.d));
      ASSERT_EQ(map_walk(g, ctx, in.d), base);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(WalkMap, ExhaustiveSweepOnOneWindow) {
  // Direct checks, without the library's report aggregation.
  const GridDual g({4, 4});
  const SubgridWindow h{2, 3, 1, 2};
  const int beta = h.edge_count();
  std::uint64_t walks = 0;
  for (const Instance& in : instances(g, h, 7)) {
    for (const Walk& dp : companion_paths(g, in.d, in.conditioned, h)) {
      const WalkMapper mapper(g, MapContext{in.d, dp, h, beta});
      std::unordered_set<Walk, WalkHash> images;
      enumerate_walks_with_erasure(g, in.d, 8, [&](const Walk& w) {
        ++walks;
        const Walk w_hat = mapper.map(w);
        EXPECT_TRUE(is_valid_walk(g, w_hat));
        EXPECT_EQ(loop_erase(w_hat).erasure, dp);
        EXPECT_TRUE(images.insert(w_hat).second);
        EXPECT_LE(directed_edge_difference(w, w_hat), static_cast<std::size_t>(3 * beta * beta));
        EXPECT_LE(outer_steps(g, w_hat), outer_steps(g, w));
        EXPECT_GE(walk_log_probability(g, w_hat) - walk_log_probability(g, w),
                  -3.0 * beta * beta * std::log(4.0) - 1e-9);
        EXPECT_EQ(mapper.invert(w_hat), w);
        return !HasFailure();
      });
      if (HasFailure()) return;
    }
  }
  EXPECT_GT(walks, 10000u);
}

TEST(WalkMap, ReportOverAllTwoByTwoWindows) {
  const GridDual g({4, 4});
  BijectionReport report;
  for (int r = 1; r <= 2; ++r) {
    for (int c = 1; c <= 2; ++c) {
      const SubgridWindow h{r, r + 1, c, c + 1};
      for (const Instance& in : instances(g, h, 8)) {
        verify_walk_bijection(g, in.d, in.conditioned, h, 7, report);
      }
    }
  }
  EXPECT_TRUE(report.ok()) << (report.violations.empty() ? "" : report.violations[0]);
  EXPECT_EQ(report.edge_bound, 48u);
  EXPECT_LE(report.max_edge_diff, report.edge_bound);
  EXPECT_GT(report.pairs, 100u);
  EXPECT_GT(report.walks, 10000u);
}

TEST(WalkMap, NarrowWindowExceedsEdgeBoundThroughOuterEdges) {
  // Paths that differ only in which parallel outer edge they use fit in a
  // 1x2 window with a single edge, but the map can move more than 3 edges.
  const GridDual g({3, 3});
  const SubgridWindow h{1, 1, 1, 2};
  const DualVertexId a = face(g, 1, 2);
  std::vector<EdgeId> parallel;
  for (const Incidence& inc : g.dual_incident(a)) {
    if (inc.neighbor == g.outer()) parallel.push_back(inc.edge);
  }
  ASSERT_EQ(parallel.size(), 2u);
  Walk d = dual_path(g, {face(g, 2, 1), face(g, 1, 1), a});
  d.step(parallel[0], g.outer());
  const EdgeId conditioned = *g.edge_between(g.vertex_id(2, 1), g.vertex_id(3, 1));
  ASSERT_EQ(g.dual_other(conditioned, g.outer()), face(g, 2, 1));
  BijectionReport report;
  verify_walk_bijection(g, d, conditioned, h, 6, report);
  EXPECT_TRUE(report.injective);
  EXPECT_TRUE(report.round_trip);
  EXPECT_TRUE(report.erasure_ok);
  EXPECT_EQ(report.edge_bound, 3u);
  EXPECT_GT(report.max_edge_diff, report.edge_bound);
}

TEST(WalkMap, SingleFaceWindowHasNoEdgeBudget) {
  // A 1x1 window has no internal edges, so its edge bound is 0, yet two paths
  // can still differ through parallel edges at the outer vertex.
  const GridDual g({3, 3});
  const SubgridWindow h{1, 1, 1, 1};
  EXPECT_EQ(h.edge_count(), 0);
  const DualVertexId a = face(g, 1, 1);
  std::vector<EdgeId> parallel;
  for (const Incidence& inc : g.dual_incident(a)) {
    if (inc.neighbor == g.outer()) parallel.push_back(inc.edge);
  }
  ASSERT_EQ(parallel.size(), 2u);
  Walk d = dual_path(g, {face(g, 1, 2), a});
  Walk dp = d;
  d.step(parallel[0], g.outer());
  dp.step(parallel[1], g.outer());
  EXPECT_NO_THROW(validate_context(g, {d, dp, h, 0}));
  const WalkMapper mapper(g, MapContext{d, dp, h, 0});
  const Walk w_hat = mapper.map(d);
  EXPECT_EQ(loop_erase(w_hat).erasure, dp);
  EXPECT_EQ(mapper.invert(w_hat), d);
  EXPECT_EQ(directed_edge_difference(d, w_hat), 2u);
}

TEST(WalkMap, InvertRejectsForeignWalks) {
  const GridDual g({4, 4});
  const SubgridWindow h{1, 2, 1, 2};
  const std::vector<Instance> ins = instances(g, h, 8);
  ASSERT_FALSE(ins.empty());
  for (const Instance& in : ins) {
    const auto comps = companion_paths(g, in.d, in.conditioned, h);
    for (const Walk& dp : comps) {
      const std::vector<int> on_d = first_appearance(in.d, g.dual_vertex_count());
      const bool fresh = std::any_of(dp.vertices.begin(), dp.vertices.end(),
                                     [&](DualVertexId v) { return on_d[v] < 0; });
      if (!fresh) continue;
      const WalkMapper mapper(g, MapContext{in.d, dp, h, h.edge_count()});
      // Images visit every vertex of D', which D does not.
      try {
        mapper.invert(in.d);
        ADD_FAILURE();
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNotInImage);
      }
      return;
    }
  }
  FAIL() << "no differing companion found";
}

TEST(EdgeDifference, CountsDirectedMultiset) {
  const GridDual g({3, 3});
  const Walk w = dual_path(g, {face(g, 1, 1), face(g, 1, 2), face(g, 2, 2)});
  EXPECT_EQ(directed_edge_difference(w, w), 0u);
  EXPECT_EQ(directed_edge_difference(w, w.reversed()), 4u);
  Walk longer = w;
  longer.append(dual_path(g, {face(g, 2, 2), face(g, 1, 2), face(g, 2, 2)}));
  EXPECT_EQ(directed_edge_difference(w, longer), 2u);
}

TEST(WalkProbability, ProductOfInverseDegrees) {
  const GridDual g({3, 3});
  const Walk w = dual_path(g, {face(g, 1, 1), g.outer(), face(g, 2, 2)});
  // Face(1,1) has degree 4, Outer has degree 8.
  EXPECT_NEAR(walk_log_probability(g, w), -std::log(32.0), 1e-12);
}

}  // namespace
}  // namespace gridsep
