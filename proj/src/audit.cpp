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

#include "gridsep/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gridsep/error.hpp"

namespace gridsep {

SepStats SepStats::zeros(int edge_count, std::string source) {
  SepStats s;
  s.sampled.assign(edge_count, 0);
  s.separated.assign(edge_count, 0);
  s.source = std::move(source);
  return s;
}

double SepStats::frequency(int e) const {
  return sampled[e] == 0 ? 0.0 : static_cast<double>(separated[e]) / static_cast<double>(sampled[e]);
}

SepStats& SepStats::merge(const SepStats& other) {
  if (other.edge_count() != edge_count()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot merge stats over different edge sets");
  }
  for (int e = 0; e < edge_count(); ++e) {
    sampled[e] += other.sampled[e];
    separated[e] += other.separated[e];
  }
  return *this;
}

SepStats estimate_separation(const GridDual& g, const SamplerConfig& cfg, std::uint64_t n,
                             int shards, int threads) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "need at least one sample");
  if (shards < 1 || threads < 1) throw Error(ErrorKind::kInvalidArgument, "shards and threads must be >= 1");
  std::vector<SepStats> parts(shards, SepStats::zeros(g.edge_count()));
  auto run_shard = [&](int s) {
    SamplerConfig c = cfg;
    c.stream = cfg.stream + static_cast<std::uint64_t>(s);
    const std::uint64_t share = n / shards + (static_cast<std::uint64_t>(s) < n % shards ? 1 : 0);
    PartitionSampler sampler(g, c);
    for (std::uint64_t i = 0; i < share; ++i) {
      const SampleOutcome out = sampler.sample();
      parts[s].record([&](int e) {
        const auto [a, b] = g.endpoints(e);
        return !out.partition.same_side(a, b);
      });
    }
  };
  if (threads == 1) {
    for (int s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(shards);
    for (int w = 0; w < std::min(threads, shards); ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < shards; s += threads) {
          try {
            run_shard(s);
          } catch (...) {
            errors[s] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  SepStats total = SepStats::zeros(g.edge_count(), cfg.mode == SamplerMode::kAlg2 ? "alg2" : "ust");
  total.seed = cfg.seed;
  total.params["rows"] = std::to_string(g.rows());
  total.params["cols"] = std::to_string(g.cols());
  std::ostringstream lam;
  lam << cfg.lambda;
  total.params["lambda"] = lam.str();
  total.params["shards"] = std::to_string(shards);
  for (const SepStats& p : parts) total.merge(p);
  return total;
}

SepStats estimate_separation(const WeightedGraph& g, const std::vector<KPartition>& plans) {
  SepStats s = SepStats::zeros(g.edge_count(), "recom");
  for (const KPartition& p : plans) {
    s.record([&](int e) {
      const auto [a, b] = g.edges[e];
      return p.assignment[a] != p.assignment[b];
    });
  }
  return s;
}

int histogram_bin(double f, int bins) {
  const int b = static_cast<int>(std::floor(f * bins + 1e-9));
  return std::clamp(b, 0, bins - 1);
}

Histogram emit_histogram(const SepStats& s, int bins) {
  if (bins < 1) throw Error(ErrorKind::kInvalidArgument, "bins must be >= 1");
  std::vector<double> freqs;
  for (int e = 0; e < s.edge_count(); ++e) {
    if (s.sampled[e] > 0) freqs.push_back(s.frequency(e));
  }
  if (freqs.empty()) throw Error(ErrorKind::kEmptyStats, "no sampled edges");
  Histogram h;
  h.edges = static_cast<int>(freqs.size());
  h.bins.resize(bins);
  for (int b = 0; b < bins; ++b) {
    h.bins[b].lo = static_cast<double>(b) / bins;
    h.bins[b].hi = static_cast<double>(b + 1) / bins;
  }
  double sum = 0;
  h.min = freqs.front();
  h.max = freqs.front();
  for (double f : freqs) {
    ++h.bins[histogram_bin(f, bins)].count;
    h.min = std::min(h.min, f);
    h.max = std::max(h.max, f);
    sum += f;
  }
  h.mean = sum / static_cast<double>(freqs.size());
  h.alpha_hat = 1.0 - h.max;
  return h;
}

std::string Histogram::to_csv() const {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n";
  for (const HistogramBin& b : bins) out << b.lo << ',' << b.hi << ',' << b.count << '\n';
  return out.str();
}

std::string Histogram::to_json() const {
  nlohmann::json j;
  j["bins"] = nlohmann::json::array();
  for (const HistogramBin& b : bins) j["bins"].push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  j["edges"] = edges;
  j["min"] = min;
  j["max"] = max;
  j["mean"] = mean;
  j["alpha_hat"] = alpha_hat;
  return j.dump();
}

}  // namespace gridsep
