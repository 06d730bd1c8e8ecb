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

#ifndef GRIDSEP_AUDIT_HPP_
#define GRIDSEP_AUDIT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gridsep/grid.hpp"
#include "gridsep/recom.hpp"
#include "gridsep/sampler.hpp"

namespace gridsep {

struct SepStats {
  std::vector<std::uint64_t> sampled;
  std::vector<std::uint64_t> separated;
  std::string source;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;

  static SepStats zeros(int edge_count, std::string source = {});
  int edge_count() const { return static_cast<int>(sampled.size()); }
  double frequency(int e) const;
  // Counts add; metadata of *this is kept.
  SepStats& merge(const SepStats& other);

  // Records one sample given per-edge separation flags.
  template <typename SeparatedFn>
  void record(SeparatedFn&& is_separated) {
    for (int e = 0; e < edge_count(); ++e) {
      ++sampled[e];
      if (is_separated(e)) ++separated[e];
    }
  }
};

// Shard s draws its share of n samples from stream cfg.stream + s; shard
// sizes differ by at most one. Results do not depend on `threads`.
SepStats estimate_separation(const GridDual& g, const SamplerConfig& cfg, std::uint64_t n,
                             int shards = 1, int threads = 1);

// Counts separations over a sequence of district plans.
SepStats estimate_separation(const WeightedGraph& g, const std::vector<KPartition>& plans);

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  std::uint64_t count = 0;
};

struct Histogram {
  std::vector<HistogramBin> bins;
  double min = 0;
  double max = 0;
  double mean = 0;
  double alpha_hat = 0;  // 1 - largest edge separation frequency
  int edges = 0;

  std::string to_csv() const;
  std::string to_json() const;
};

int histogram_bin(double f, int bins);
Histogram emit_histogram(const SepStats& s, int bins);

}  // namespace gridsep

#endif  // GRIDSEP_AUDIT_HPP_
