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

#include "gridsep/reconnect.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <tuple>

#include "gridsep/error.hpp"
#include "gridsep/spanning.hpp"

namespace gridsep {
namespace {

struct Candidate {
  std::vector<VertexId> flips;  // sorted
  Coloring coloring;
  int delta = 0;
  ReconnectPath path = ReconnectPath::kSearch;
};

bool better(const Candidate& a, const Candidate& b) {
  return std::make_tuple(a.flips.size(), std::abs(a.delta), a.flips) <
         std::make_tuple(b.flips.size(), std::abs(b.delta), b.flips);
}

std::vector<VertexId> symmetric_difference(const Coloring& a, const Coloring& b) {
  std::vector<VertexId> out;
  for (VertexId w = 0; w < a.size(); ++w) {
    if (a.at(w) != b.at(w)) out.push_back(w);
  }
  return out;
}

class Search {
 public:
  Search(const GridDual& g, const Coloring& start, VertexId u, VertexId v, int gamma)
      : g_(g), start_(start), u_(u), v_(v), gamma_(gamma) {
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
      if (distance_to_pair(g, w, u, v) <= gamma) ball_.push_back(w);
    }
    in_ball_.assign(g.vertex_count(), 0);
    for (VertexId w : ball_) in_ball_[w] = 1;
  }

  bool in_ball(VertexId w) const { return in_ball_[w] != 0; }
  const std::vector<VertexId>& ball() const { return ball_; }

  std::optional<Candidate> try_flips(const std::vector<VertexId>& flips, ReconnectPath path) const {
    Coloring c = start_;
    for (VertexId w : flips) {
      if (!in_ball(w)) return std::nullopt;
      c.flip(w);
    }
    return try_coloring(std::move(c), path);
  }

  std::optional<Candidate> try_coloring(Coloring c, ReconnectPath path) const {
    int delta = 0;
    if (!reconnection_valid(g_, start_, c, u_, v_, gamma_, &delta)) return std::nullopt;
    Candidate cand;
    cand.flips = symmetric_difference(start_, c);
    cand.coloring = std::move(c);
    cand.delta = delta;
    cand.path = path;
    return cand;
  }

  // Flip sets of the given size that are connected in the king graph and
  // contain u or v.
  std::vector<std::vector<VertexId>> king_sets(int size) const {
    std::set<std::vector<VertexId>> level{{u_}, {v_}};
    for (int k = 1; k < size; ++k) {
      std::set<std::vector<VertexId>> next;
      for (const auto& s : level) {
        for (VertexId w : s) {
          const PrimalVertex p = g_.vertex(w);
          for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
              if (!g_.in_bounds(p.i + di, p.j + dj)) continue;
              const VertexId x = g_.vertex_id(p.i + di, p.j + dj);
              if (!in_ball(x) || std::binary_search(s.begin(), s.end(), x)) continue;
              std::vector<VertexId> t = s;
              t.insert(std::upper_bound(t.begin(), t.end(), x), x);
              next.insert(std::move(t));
            }
          }
        }
      }
      level = std::move(next);
    }
    return {level.begin(), level.end()};
  }

 private:
  const GridDual& g_;
  const Coloring& start_;
  VertexId u_;
  VertexId v_;
  int gamma_;
  std::vector<VertexId> ball_;
  std::vector<char> in_ball_;
};

// Flip one endpoint, then resolve thin structures while they merge regions.
std::optional<Candidate> guided(const GridDual& g, const Search& search, const Coloring& start,
                                VertexId s) {
  Coloring c = start;
  c.flip(s);
  for (int round = 0; round < 4; ++round) {
    if (auto cand = search.try_coloring(c, ReconnectPath::kGuided)) return cand;
    const RegionMap before = find_regions(g, c);
    bool moved = false;
    for (const ThinSite& site : find_thin_structures(g, c)) {
      if (std::any_of(site.vertices.begin(), site.vertices.end(),
                      [&](VertexId w) { return !search.in_ball(w) || w == s; })) {
        continue;
      }
      Coloring next = resolve(c, site);
      const RegionMap after = find_regions(g, next);
      const Color flank = c.at(site.flank_a);
      if (after.count(flank) >= before.count(flank)) continue;
      if (!detect_cross_structures(g, next).empty()) continue;
      c = std::move(next);
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(ReconnectPath path) {
  switch (path) {
    case ReconnectPath::kFast: return "fast";
    case ReconnectPath::kGuided: return "guided";
    case ReconnectPath::kSearch: return "search";
    case ReconnectPath::kFallback: return "fallback";
  }
  return "unknown";
}

int distance_to_pair(const GridDual& g, VertexId w, VertexId u, VertexId v) {
  const PrimalVertex pw = g.vertex(w);
  const PrimalVertex pu = g.vertex(u);
  const PrimalVertex pv = g.vertex(v);
  const int du = std::abs(pw.i - pu.i) + std::abs(pw.j - pu.j);
  const int dv = std::abs(pw.i - pv.i) + std::abs(pw.j - pv.j);
  return std::min(du, dv);
}

bool reconnection_valid(const GridDual& g, const Coloring& before, const Coloring& after,
                        VertexId u, VertexId v, int gamma, int* delta_size) {
  if (after.at(u) != after.at(v)) return false;
  if (after.count(Color::kRed) == 0 || after.count(Color::kBlue) == 0) return false;
  if (!is_feasible(g, after)) return false;
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    if (before.at(w) != after.at(w) && distance_to_pair(g, w, u, v) > gamma) return false;
  }
  const Color shared = after.at(u);
  const int delta = after.count(shared) - before.count(shared);
  if (std::abs(delta) > 3) return false;
  if (outer_degree(g, after) > outer_degree(g, before)) return false;
  if (delta_size) *delta_size = delta;
  return true;
}

ReconnectResult unseparate(const GridDual& g, const Partition2& p, VertexId u, VertexId v,
                           const ReconnectOptions& opts) {
  if (!g.edge_between(u, v)) {
    throw Error(ErrorKind::kInvalidArgument, "u and v are not adjacent");
  }
  if (!is_feasible(g, p)) {
    throw Error(ErrorKind::kInfeasiblePartition, "input partition is not feasible");
  }
  if (p.same_side(u, v)) {
    throw Error(ErrorKind::kInvalidArgument, "u and v are not separated");
  }
  if (opts.enforce_size_precondition &&
      (g.rows() < opts.n0 || g.cols() < opts.n0 || p.interior_count() < opts.n0 ||
       p.exterior_count() < opts.n0)) {
    throw Error(ErrorKind::kInvalidArgument, "grid or part smaller than n0");
  }
  const Coloring start = Coloring::from_partition(g.dims(), p);
  Search search(g, start, u, v, opts.gamma);

  std::optional<Candidate> best;
  auto offer = [&](std::optional<Candidate> cand) {
    if (cand && (!best || better(*cand, *best))) best = std::move(cand);
  };

  offer(search.try_flips({std::min(u, v)}, ReconnectPath::kFast));
  offer(search.try_flips({std::max(u, v)}, ReconnectPath::kFast));

  if (!best) {
    offer(guided(g, search, start, u));
    offer(guided(g, search, start, v));
    const int limit = best ? std::min<int>(opts.max_flips, static_cast<int>(best->flips.size()))
                           : opts.max_flips;
    for (int k = 2; k <= limit; ++k) {
      std::optional<Candidate> level_best;
      for (const auto& flips : search.king_sets(k)) {
        auto cand = search.try_flips(flips, ReconnectPath::kSearch);
        if (cand && (!level_best || better(*cand, *level_best))) level_best = std::move(cand);
      }
      if (level_best) {
        // Keep the guided label when the search rediscovers the same set.
        if (best && best->flips == level_best->flips) break;
        offer(std::move(level_best));
        break;
      }
    }
  }

  if (!best) {
    // Unstructured subsets near the pair.
    std::vector<VertexId> near;
    for (VertexId w : search.ball()) {
      if (distance_to_pair(g, w, u, v) <= 2) near.push_back(w);
    }
    for (VertexId s : {u, v}) {
      for (std::size_t a = 0; a < near.size(); ++a) {
        for (std::size_t b = a; b < near.size(); ++b) {
          std::set<VertexId> fl{s, near[a], near[b]};
          offer(search.try_flips({fl.begin(), fl.end()}, ReconnectPath::kFallback));
        }
      }
    }
  }

  if (!best) {
    throw Error(ErrorKind::kNoCandidateFound,
                "no reconnection for " + g.vertex_label(u) + "," + g.vertex_label(v) +
                    " from coloring " + start.to_string());
  }

  ReconnectResult out;
  out.coloring = best->coloring;
  out.partition = best->coloring.to_partition();
  out.flipped = best->flips;
  out.delta_size = best->delta;
  out.outer_degree_before = outer_degree(g, start);
  out.outer_degree_after = outer_degree(g, best->coloring);
  out.local_case = classify_local_case(g, start, u, v);
  out.path = best->path;
  return out;
}

UnsepReport verify_unseparating_map(const GridDual& g, VertexId u, VertexId v, int min_len,
                                    const ReconnectOptions& opts, bool keep_records, int cap) {
  UnsepReport report;
  report.rows = g.rows();
  report.cols = g.cols();
  report.u = u;
  report.v = v;
  report.min_len = min_len;
  report.gamma = opts.gamma;

  const std::vector<Partition2> parts = enumerate_partitions(g, cap);
  std::map<DualCycle, int> preimage;
  std::map<DualCycle, int> preimage_window;
  for (const Partition2& p : parts) {
    if (p.same_side(u, v)) continue;
    DualCycle cycle = partition_to_cycle(g, p);
    if (static_cast<int>(cycle.size()) < min_len) continue;
    ++report.domain_size;
    const ReconnectResult r = unseparate(g, p, u, v, opts);
    DualCycle image = partition_to_cycle(g, r.partition);

    UnsepRecord rec;
    rec.window = locally_different(g, cycle, image);
    rec.window_edges = rec.window.edge_count();
    rec.imbalance_change = std::abs(p.imbalance() - r.partition.imbalance());
    rec.outer_before = outer_edge_count(g, cycle);
    rec.outer_after = outer_edge_count(g, image);
    rec.flips = static_cast<int>(r.flipped.size());
    rec.path = r.path;

    report.beta_observed = std::max(report.beta_observed, rec.window_edges);
    report.delta_observed = std::max(report.delta_observed, rec.imbalance_change);
    report.max_flips = std::max(report.max_flips, rec.flips);
    if (rec.outer_after > rec.outer_before) report.outer_monotone = false;
    ++report.path_counts[to_string(rec.path)];

    // Every changed dual edge touches a flipped vertex, so the window must
    // fit in the faces around the flipped set's bounding box.
    int lo_i = g.rows(), hi_i = 1, lo_j = g.cols(), hi_j = 1;
    for (VertexId w : r.flipped) {
      const PrimalVertex pw = g.vertex(w);
      lo_i = std::min(lo_i, pw.i);
      hi_i = std::max(hi_i, pw.i);
      lo_j = std::min(lo_j, pw.j);
      hi_j = std::max(hi_j, pw.j);
      if (distance_to_pair(g, w, u, v) > opts.gamma) report.locality_ok = false;
    }
    const SubgridWindow dilated{std::max(1, lo_i - 1), std::min(g.rows() - 1, hi_i),
                                std::max(1, lo_j - 1), std::min(g.cols() - 1, hi_j)};
    if (!rec.window.empty() && !dilated.contains(rec.window)) report.locality_ok = false;

    const int count = ++preimage[image];
    int& w = preimage_window[image];
    w = std::max(w, rec.window_edges);
    report.max_preimage = std::max(report.max_preimage, count);
    if (keep_records) {
      rec.cycle = std::move(cycle);
      rec.image = std::move(image);
      report.records.push_back(std::move(rec));
    }
  }
  report.image_size = static_cast<std::int64_t>(preimage.size());
  for (const auto& [image, count] : preimage) {
    const int w = preimage_window[image];
    if (w < 30 && count > (1 << w)) report.preimage_bound_ok = false;
  }
  report.delta_over_two = report.delta_observed > 2;
  return report;
}

}  // namespace gridsep
