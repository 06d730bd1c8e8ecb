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

#include <nlohmann/json.hpp>

#include "gridsep/audit.hpp"
#include "gridsep/error.hpp"
#include "gridsep/spanning.hpp"

namespace gridsep {
namespace {

TEST(SepStats, FrequencyAndMerge) {
  SepStats a = SepStats::zeros(3, "x");
  a.record([](int e) { return e == 1; });
  a.record([](int e) { return e >= 1; });
  EXPECT_EQ(a.sampled, (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(a.separated, (std::vector<std::uint64_t>{0, 2, 1}));
  EXPECT_DOUBLE_EQ(a.frequency(2), 0.5);
  SepStats b = SepStats::zeros(3, "y");
  b.record([](int) { return true; });
  a.merge(b);
  EXPECT_EQ(a.source, "x");
  EXPECT_EQ(a.separated, (std::vector<std::uint64_t>{1, 3, 2}));
  EXPECT_EQ(a.sampled, (std::vector<std::uint64_t>{3, 3, 3}));
  EXPECT_THROW(a.merge(SepStats::zeros(2)), Error);
  EXPECT_DOUBLE_EQ(SepStats::zeros(1).frequency(0), 0.0);
}

TEST(EstimateSeparation, SingleSampleIsZeroOrOne) {
  const GridDual g({3, 3});
  SamplerConfig cfg;
  cfg.seed = 4;
  const SepStats s = estimate_separation(g, cfg, 1);
  for (int e = 0; e < s.edge_count(); ++e) {
    EXPECT_EQ(s.sampled[e], 1u);
    EXPECT_TRUE(s.frequency(e) == 0.0 || s.frequency(e) == 1.0);
  }
  EXPECT_THROW(estimate_separation(g, cfg, 0), Error);
}

TEST(EstimateSeparation, TwoByTwoHalf) {
  const GridDual g({2, 2});
  SamplerConfig cfg;
  cfg.seed = 17;
  const SepStats s = estimate_separation(g, cfg, 100000);
  for (int e = 0; e < s.edge_count(); ++e) {
    EXPECT_LE(s.separated[e], s.sampled[e]);
    EXPECT_NEAR(s.frequency(e), 0.5, 0.01);
  }
}

TEST(EstimateSeparation, ConvergesToExactOnThreeByThree) {
  const GridDual g({3, 3});
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.lambda = 1;
  const std::uint64_t n = 40000;
  const SepStats s = estimate_separation(g, cfg, n, 4);
  const std::vector<double> p = separation_probabilities(g, exact_distribution(g, 1, kDefaultEnumerationCap));
  for (int e = 0; e < s.edge_count(); ++e) {
    const double q = p[e];
    EXPECT_NEAR(s.frequency(e), q, 3.5 * std::sqrt(q * (1 - q) / n)) << e;
  }
}

TEST(EstimateSeparation, ShardsMergeToTheSameCounts) {
  const GridDual g({3, 3});
  SamplerConfig cfg;
  cfg.seed = 21;
  cfg.stream = 5;
  const SepStats whole = estimate_separation(g, cfg, 1003, 4, 1);
  const SepStats threaded = estimate_separation(g, cfg, 1003, 4, 3);
  EXPECT_EQ(whole.separated, threaded.separated);
  // Shard s of 4 draws from stream + s with sizes 251, 251, 251, 250.
  SepStats manual = SepStats::zeros(g.edge_count());
  for (int s = 0; s < 4; ++s) {
    SamplerConfig c = cfg;
    c.stream = cfg.stream + s;
    PartitionSampler sampler(g, c);
    for (int i = 0; i < (s < 3 ? 251 : 250); ++i) {
      const SampleOutcome out = sampler.sample();
      manual.record([&](int e) {
        const auto [a, b] = g.endpoints(e);
        return !out.partition.same_side(a, b);
      });
    }
  }
  EXPECT_EQ(whole.separated, manual.separated);
  EXPECT_EQ(whole.sampled, manual.sampled);
  EXPECT_EQ(whole.params.at("shards"), "4");
}

TEST(EstimateSeparation, FromPlans) {
  const WeightedGraph g = grid_graph({2, 2});
  const std::vector<KPartition> plans = {{{1, 1, 2, 2}, 2, 0}, {{1, 2, 1, 2}, 2, 0}};
  const SepStats s = estimate_separation(g, plans);
  EXPECT_EQ(s.source, "recom");
  for (int e = 0; e < s.edge_count(); ++e) EXPECT_DOUBLE_EQ(s.frequency(e), 0.5);
}

TEST(Histogram, AllAtHalf) {
  SepStats s = SepStats::zeros(6);
  s.record([](int) { return true; });
  s.record([](int) { return false; });
  const Histogram h = emit_histogram(s, 10);
  ASSERT_EQ(h.bins.size(), 10u);
  for (int b = 0; b < 10; ++b) EXPECT_EQ(h.bins[b].count, b == 5 ? 6u : 0u);
  EXPECT_DOUBLE_EQ(h.bins[5].lo, 0.5);
  EXPECT_DOUBLE_EQ(h.bins[5].hi, 0.6);
  EXPECT_DOUBLE_EQ(h.alpha_hat, 0.5);
  EXPECT_DOUBLE_EQ(h.mean, 0.5);
  EXPECT_EQ(h.to_csv().substr(0, 19), "bin_lo,bin_hi,count");
  const nlohmann::json j = nlohmann::json::parse(h.to_json());
  EXPECT_DOUBLE_EQ(j["alpha_hat"].get<double>(), 0.5);
}

TEST(Histogram, CountsSumToEdgesAndAlphaMatchesMax) {
  SepStats s = SepStats::zeros(40);
  for (int t = 0; t < 7; ++t) s.record([t](int e) { return (e * 7 + t * 3) % 11 < 4; });
  for (int bins : {1, 3, 10, 64}) {
    const Histogram h = emit_histogram(s, bins);
    std::uint64_t total = 0;
    for (const HistogramBin& b : h.bins) total += b.count;
    EXPECT_EQ(total, 40u);
    double mx = 0;
    for (int e = 0; e < 40; ++e) mx = std::max(mx, s.frequency(e));
    EXPECT_DOUBLE_EQ(h.alpha_hat, 1 - mx);
    EXPECT_DOUBLE_EQ(h.max, mx);
  }
  EXPECT_EQ(histogram_bin(1.0, 10), 9);
  EXPECT_EQ(histogram_bin(0.0, 10), 0);
  EXPECT_EQ(histogram_bin(0.3, 10), 3);
}

TEST(Histogram, Errors) {
  try {
    emit_histogram(SepStats::zeros(0), 10);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyStats);
  }
  try {
    emit_histogram(SepStats::zeros(3), 10);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyStats);
  }
  SepStats s = SepStats::zeros(1);
  s.record([](int) { return true; });
  EXPECT_THROW(emit_histogram(s, 0), Error);
}

}  // namespace
}  // namespace gridsep
