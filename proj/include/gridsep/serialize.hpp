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

#ifndef GRIDSEP_SERIALIZE_HPP_
#define GRIDSEP_SERIALIZE_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridsep/audit.hpp"
#include "gridsep/grid.hpp"
#include "gridsep/recom.hpp"
#include "gridsep/reconnect.hpp"
#include "gridsep/sampler.hpp"
#include "gridsep/walkmap.hpp"

namespace gridsep {

using Json = nlohmann::json;

// [[i,j],[i',j']] with the smaller endpoint first.
Json edge_json(const GridDual& g, EdgeId e);
// Cut set as a lexicographically sorted list of edges.
Json cut_set_json(const GridDual& g, const std::vector<EdgeId>& edges);
std::vector<EdgeId> parse_cut_set(const GridDual& g, const Json& j);
// "i,j,i',j'" as used on the command line.
EdgeId parse_edge_spec(const GridDual& g, const std::string& spec);

// Dual path "i,j;i,j;O;…" following the lowest-numbered edge between
// consecutive vertices.
Walk parse_dual_path(const GridDual& g, const std::string& spec);
// "r1,r2,c1,c2" in face coordinates.
SubgridWindow parse_window(const std::string& spec);

Json partition_json(const GridDual& g, const Partition2& p);
Json sample_json(const GridDual& g, const SampleOutcome& s);
Json reconnect_json(const GridDual& g, const ReconnectResult& r);
Json unsep_report_json(const GridDual& g, const UnsepReport& r);
Json bijection_report_json(const BijectionReport& r);
Json kpartition_json(std::int64_t step, const KPartition& p);
Json sep_stats_json(const SepStats& s);

// Recom graph schema for the unit-weight m x n grid.
Json export_grid_json(const GridDims& dims);

}  // namespace gridsep

#endif  // GRIDSEP_SERIALIZE_HPP_
