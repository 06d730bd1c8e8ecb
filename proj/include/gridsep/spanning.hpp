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

#ifndef GRIDSEP_SPANNING_HPP_
#define GRIDSEP_SPANNING_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gridsep/grid.hpp"

namespace gridsep {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Undirected graph on vertices 0..n-1. Repeated edges count with multiplicity.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Kirchhoff count by fraction-free elimination. Returns 0 for disconnected graphs.
BigCount count_spanning_trees(const SimpleGraph& graph);
// Count for the subgraph induced by {v : side[v] == value}.
BigCount count_spanning_trees_induced(const GridDual& g, const std::vector<std::uint8_t>& side,
                                      std::uint8_t value);
SimpleGraph primal_graph(const GridDual& g);
SimpleGraph induced_graph(const GridDual& g, const std::vector<std::uint8_t>& side,
                          std::uint8_t value);

constexpr int kDefaultEnumerationCap = 20;

// Orients a feasible split the same way cycle_to_partition does.
Partition2 canonical_orientation(const GridDual& g, Partition2 p);

// Every feasible 2-partition once, ordered by cut set.
std::vector<Partition2> enumerate_partitions(const GridDual& g, int cap = kDefaultEnumerationCap);

struct WeightedPartition {
  Partition2 partition;
  DualCycle cycle;
  BigCount sp_interior;
  BigCount sp_exterior;
  double imbalance = 0;
  long double weight = 0;
};

struct ExactDistribution {
  double lambda = 0;
  std::vector<WeightedPartition> entries;
  long double total = 0;
  BigCount total_exact;  // sum of sp(X) sp(Y), independent of lambda

  long double probability(std::size_t i) const { return entries[i].weight / total; }
  // Only meaningful for lambda == 0.
  Rational exact_probability(std::size_t i) const;
  // Index of the entry with this cut set, or -1.
  long index_of(const DualCycle& cycle) const;
};

ExactDistribution exact_distribution(const GridDual& g, double lambda,
                                     int cap = kDefaultEnumerationCap);
std::vector<double> separation_probabilities(const GridDual& g, const ExactDistribution& dist);
double exact_separation_probability(const GridDual& g, double lambda, EdgeId e,
                                    int cap = kDefaultEnumerationCap);

// sp2 and, per primal edge e, the sp-weight of partitions cutting e.
struct Normalizers {
  BigCount total;
  std::vector<BigCount> separating;
};
Normalizers spanning_normalizers(const GridDual& g, int cap = kDefaultEnumerationCap);

// Effective resistance of every primal edge (unit conductances).
std::vector<double> effective_resistances(const GridDual& g);

}  // namespace gridsep

#endif  // GRIDSEP_SPANNING_HPP_
