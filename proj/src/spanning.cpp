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

#include "gridsep/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Dense>

#include "gridsep/error.hpp"

namespace gridsep {
namespace {

template <class T>
T bareiss_determinant(std::vector<std::vector<T>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return T(0);
      std::swap(a[k], a[r]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return negate ? T(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

BigCount to_big(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  BigCount out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? BigCount(-out) : out;
}

// Bit-parallel flood fill on an m x n grid with N <= 64.
struct MaskGrid {
  int rows;
  int cols;
  std::uint64_t full;
  std::uint64_t not_first_col;
  std::uint64_t not_last_col;

  MaskGrid(int m, int n) : rows(m), cols(n) {
    const int total = m * n;
    full = total == 64 ? ~0ULL : ((1ULL << total) - 1);
    not_first_col = 0;
    not_last_col = 0;
    for (int v = 0; v < total; ++v) {
      if (v % n != 0) not_first_col |= 1ULL << v;
      if (v % n != n - 1) not_last_col |= 1ULL << v;
    }
  }

  bool connected(std::uint64_t set) const {
    if (set == 0) return false;
    std::uint64_t reach = set & (~set + 1);
    for (;;) {
      std::uint64_t grow = reach | ((reach << 1) & not_first_col) |
                           ((reach >> 1) & not_last_col) | (reach << cols) | (reach >> cols);
      grow &= set;
      if (grow == reach) return reach == set;
      reach = grow;
    }
  }
};

}  // namespace

BigCount count_spanning_trees(const SimpleGraph& graph) {
  const int n = graph.n;
  if (n <= 0) return 0;
  if (n == 1) return 1;
  // Laplacian with the last row and column removed.
  const int k = n - 1;
  std::vector<std::vector<long long>> lap(k, std::vector<long long>(k, 0));
  for (const auto& [a, b] : graph.edges) {
    if (a == b) continue;
    if (a < k) ++lap[a][a];
    if (b < k) ++lap[b][b];
    if (a < k && b < k) {
      --lap[a][b];
      --lap[b][a];
    }
  }
  double bits = 0;
  for (int i = 0; i < k; ++i) {
    double norm2 = 0;
    for (int j = 0; j < k; ++j) norm2 += static_cast<double>(lap[i][j]) * lap[i][j];
    bits += 0.5 * std::log2(std::max(norm2, 1.0));
  }
  if (2 * bits + 4 < 124) {
    std::vector<std::vector<__int128>> a(k, std::vector<__int128>(k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) a[i][j] = lap[i][j];
    }
    return to_big(bareiss_determinant(std::move(a)));
  }
  std::vector<std::vector<BigCount>> a(k, std::vector<BigCount>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = lap[i][j];
  }
  return bareiss_determinant(std::move(a));
}

SimpleGraph primal_graph(const GridDual& g) {
  SimpleGraph out;
  out.n = g.vertex_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.edges.push_back(g.endpoints(e));
  return out;
}

SimpleGraph induced_graph(const GridDual& g, const std::vector<std::uint8_t>& side,
                          std::uint8_t value) {
  std::vector<int> local(g.vertex_count(), -1);
  SimpleGraph out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (side[v] == value) local[v] = out.n++;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    if (local[a] >= 0 && local[b] >= 0) out.edges.push_back({local[a], local[b]});
  }
  return out;
}

BigCount count_spanning_trees_induced(const GridDual& g, const std::vector<std::uint8_t>& side,
                                      std::uint8_t value) {
  return count_spanning_trees(induced_graph(g, side, value));
}

Partition2 canonical_orientation(const GridDual& g, Partition2 p) {
  bool side_on_border[2] = {false, false};
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.on_border(v)) side_on_border[p.interior(v) ? 1 : 0] = true;
  }
  bool flip;
  if (side_on_border[0] && side_on_border[1]) {
    const int a = p.interior_count();
    const int b = p.exterior_count();
    // Interior is the smaller side; ties go to the side holding vertex 0.
    flip = a > b || (a == b && !p.interior(0));
  } else {
    flip = side_on_border[1];
  }
  if (!flip) return p;
  std::vector<std::uint8_t> side = p.sides();
  for (auto& s : side) s = s ? 0 : 1;
  return Partition2(std::move(side));
}

std::vector<Partition2> enumerate_partitions(const GridDual& g, int cap) {
  const int n = g.vertex_count();
  if (n > cap || n > 63) {
    throw Error(ErrorKind::kTooLarge, std::to_string(n) + " vertices exceeds enumeration cap " +
                                          std::to_string(std::min(cap, 63)));
  }
  const MaskGrid grid(g.rows(), g.cols());
  std::vector<std::pair<DualCycle, Partition2>> found;
  const std::uint64_t limit = 1ULL << (n - 1);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const std::uint64_t a = (mask << 1) | 1ULL;
    const std::uint64_t b = grid.full & ~a;
    if (b == 0) continue;
    if (!grid.connected(a) || !grid.connected(b)) continue;
    std::vector<std::uint8_t> side(n, 0);
    for (int v = 0; v < n; ++v) side[v] = (a >> v) & 1ULL;
    Partition2 p = canonical_orientation(g, Partition2(std::move(side)));
    DualCycle c = cut_edges(g, p.sides());
    found.push_back({std::move(c), std::move(p)});
  }
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Partition2> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

Rational ExactDistribution::exact_probability(std::size_t i) const {
  const WeightedPartition& w = entries[i];
  return Rational(BigCount(w.sp_interior * w.sp_exterior), total_exact);
}

long ExactDistribution::index_of(const DualCycle& cycle) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), cycle,
                             [](const WeightedPartition& w, const DualCycle& c) { return w.cycle < c; });
  if (it == entries.end() || it->cycle != cycle) return -1;
  return static_cast<long>(it - entries.begin());
}

ExactDistribution exact_distribution(const GridDual& g, double lambda, int cap) {
  if (lambda < 0) throw Error(ErrorKind::kInvalidArgument, "lambda must be nonnegative");
  std::vector<Partition2> parts = enumerate_partitions(g, cap);
  ExactDistribution dist;
  dist.lambda = lambda;
  dist.total_exact = 0;
  std::unordered_map<std::uint64_t, BigCount> memo;
  auto sp_of = [&](const Partition2& p, std::uint8_t value) -> BigCount {
    std::uint64_t key = 0;
    for (int v = 0; v < p.size(); ++v) {
      if ((p.interior(v) ? 1 : 0) == value) key |= 1ULL << v;
    }
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigCount c = count_spanning_trees_induced(g, p.sides(), value);
    memo.emplace(key, c);
    return c;
  };
  long double sum = 0;
  long double comp = 0;
  for (Partition2& p : parts) {
    WeightedPartition w;
    w.sp_interior = sp_of(p, 1);
    w.sp_exterior = sp_of(p, 0);
    w.imbalance = p.imbalance();
    w.cycle = cut_edges(g, p.sides());
    const BigCount prod = w.sp_interior * w.sp_exterior;
    dist.total_exact += prod;
    w.weight = prod.convert_to<long double>() * std::exp(-static_cast<long double>(lambda) * w.imbalance);
    // Compensated summation.
    const long double y = w.weight - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    w.partition = std::move(p);
    dist.entries.push_back(std::move(w));
  }
  dist.total = sum;
  return dist;
}

std::vector<double> separation_probabilities(const GridDual& g, const ExactDistribution& dist) {
  std::vector<long double> acc(g.edge_count(), 0);
  for (std::size_t i = 0; i < dist.entries.size(); ++i) {
    const long double p = dist.probability(i);
    for (EdgeId e : dist.entries[i].cycle) acc[e] += p;
  }
  return std::vector<double>(acc.begin(), acc.end());
}

double exact_separation_probability(const GridDual& g, double lambda, EdgeId e, int cap) {
  if (e < 0 || e >= g.edge_count()) throw Error(ErrorKind::kInvalidArgument, "edge out of range");
  return separation_probabilities(g, exact_distribution(g, lambda, cap))[e];
}

Normalizers spanning_normalizers(const GridDual& g, int cap) {
  const ExactDistribution dist = exact_distribution(g, 0.0, cap);
  Normalizers out;
  out.total = dist.total_exact;
  out.separating.assign(g.edge_count(), BigCount(0));
  for (const WeightedPartition& w : dist.entries) {
    const BigCount prod = w.sp_interior * w.sp_exterior;
    for (EdgeId e : w.cycle) out.separating[e] += prod;
  }
  return out;
}

std::vector<double> effective_resistances(const GridDual& g) {
  const int n = g.vertex_count();
  const int k = n - 1;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    if (a < k) lap(a, a) += 1;
    if (b < k) lap(b, b) += 1;
    if (a < k && b < k) {
      lap(a, b) -= 1;
      lap(b, a) -= 1;
    }
  }
  const Eigen::MatrixXd inv = lap.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
  auto entry = [&](int a, int b) { return (a < k && b < k) ? inv(a, b) : 0.0; };
  std::vector<double> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    out[e] = entry(a, a) + entry(b, b) - 2 * entry(a, b);
  }
  return out;
}

}  // namespace gridsep
