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

// Command-line front end. Results go to stdout, one JSON document or JSON
// line per record; the run manifest and diagnostics go to stderr.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridsep/audit.hpp"
#include "gridsep/enumerate.hpp"
#include "gridsep/error.hpp"
#include "gridsep/reconnect.hpp"
#include "gridsep/recom.hpp"
#include "gridsep/sampler.hpp"
#include "gridsep/serialize.hpp"
#include "gridsep/spanning.hpp"
#include "gridsep/structures.hpp"
#include "gridsep/walkmap.hpp"

#ifndef GRIDSEP_VERSION
#define GRIDSEP_VERSION "0.0.0"
#endif

namespace {

using gridsep::Json;

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

struct Options {
  int rows = 3;
  int cols = 3;
  double lambda = 0;
  std::uint64_t seed = 0;
  std::uint64_t n = 1;
  std::string mode = "alg2";
  std::string acceptance = "auto";
  bool restart_edge = false;
  int shards = 1;
  int threads = 1;
  int cap = gridsep::kDefaultEnumerationCap;
  std::string edge;
  // audit / recom
  std::string source = "sample";
  std::string graph;
  int k = 2;
  double eps = 0.05;
  std::int64_t steps = 0;
  int thin = 1;
  int bins = 10;
  std::string out;
  // reconnect
  bool exhaustive = false;
  int min_len = 0;
  int gamma = 10;
  int max_flips = 6;
  bool records = false;
  std::string coloring;
  // walkmap-verify
  std::string path;
  std::vector<std::string> windows;
  bool all_windows = false;
  int max_len = 12;
  // structure / enum
  std::string op = "regions";
  std::string what = "cycles";
  std::string from;
  std::string to;
  std::string vertex;
};

gridsep::SamplerConfig sampler_config(const Options& o) {
  gridsep::SamplerConfig cfg;
  cfg.lambda = o.lambda;
  cfg.seed = o.seed;
  cfg.restart_from_edge_draw = o.restart_edge;
  cfg.oracle_cap = o.cap;
  if (o.mode == "alg2") {
    cfg.mode = gridsep::SamplerMode::kAlg2;
  } else if (o.mode == "ust") {
    cfg.mode = gridsep::SamplerMode::kUstSplit;
  } else {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument, "mode must be alg2 or ust");
  }
  if (o.acceptance == "auto") {
    cfg.acceptance = gridsep::AcceptanceRule::kAuto;
  } else if (o.acceptance == "exact") {
    cfg.acceptance = gridsep::AcceptanceRule::kExactNormalizers;
  } else if (o.acceptance == "leverage") {
    cfg.acceptance = gridsep::AcceptanceRule::kLeverage;
  } else if (o.acceptance == "cut") {
    cfg.acceptance = gridsep::AcceptanceRule::kCutOnly;
  } else {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument,
                         "acceptance must be auto, exact, leverage or cut");
  }
  return cfg;
}

std::string read_text_or_inline(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

gridsep::VertexId parse_vertex(const gridsep::GridDual& g, const std::string& spec) {
  const auto comma = spec.find(',');
  try {
    if (comma != std::string::npos) {
      const int i = std::stoi(spec.substr(0, comma));
      const int j = std::stoi(spec.substr(comma + 1));
      if (g.in_bounds(i, j)) return g.vertex_id(i, j);
    }
  } catch (const std::exception&) {
  }
  throw gridsep::Error(gridsep::ErrorKind::kParseError, "vertex must be i,j inside the grid");
}

gridsep::DualVertexId parse_dual_vertex(const gridsep::GridDual& g, const std::string& spec) {
  return gridsep::parse_dual_path(g, spec).front();
}

Json walk_json(const gridsep::GridDual& g, const gridsep::Walk& w) {
  Json v = Json::array();
  for (gridsep::DualVertexId f : w.vertices) v.push_back(g.dual_label(f));
  return v;
}

Json vertices_json(const gridsep::GridDual& g, const std::vector<gridsep::VertexId>& vs) {
  Json out = Json::array();
  for (gridsep::VertexId v : vs) {
    const gridsep::PrimalVertex p = g.vertex(v);
    out.push_back({p.i, p.j});
  }
  return out;
}

gridsep::WeightedGraph chain_graph(const Options& o) {
  if (!o.graph.empty()) return gridsep::load_graph(o.graph);
  return gridsep::grid_graph({o.rows, o.cols});
}

// Initial plan from stream 1 of the seed, chain moves from stream 0.
std::vector<gridsep::KPartition> chain_states(const gridsep::WeightedGraph& g, const Options& o,
                                              bool include_init) {
  gridsep::CounterRng init_rng(o.seed, 1);
  gridsep::CounterRng rng(o.seed, 0);
  const gridsep::KPartition init = gridsep::initial_partition(g, o.k, o.eps, init_rng);
  std::vector<gridsep::KPartition> states;
  gridsep::run_chain(g, init, o.steps, o.thin, rng, [&](std::int64_t t, const gridsep::KPartition& p) {
    if (t > 0 || include_init || o.steps == 0) states.push_back(p);
    return true;
  });
  return states;
}

int cmd_sample(const Options& o) {
  const gridsep::GridDual g({o.rows, o.cols});
  gridsep::PartitionSampler sampler(g, sampler_config(o));
  for (std::uint64_t i = 0; i < o.n; ++i) std::cout << gridsep::sample_json(g, sampler.sample()).dump() << '\n';
  return 0;
}

int cmd_oracle(const Options& o) {
  const gridsep::GridDual g({o.rows, o.cols});
  const gridsep::ExactDistribution dist = gridsep::exact_distribution(g, o.lambda, o.cap);
  const std::vector<double> sep = gridsep::separation_probabilities(g, dist);
  Json per_edge = Json::array();
  for (gridsep::EdgeId e = 0; e < g.edge_count(); ++e) {
    per_edge.push_back({{"edge", gridsep::edge_json(g, e)}, {"p", sep[e]}});
  }
  Json out{{"rows", o.rows},
           {"cols", o.cols},
           {"lambda", o.lambda},
           {"partitions", dist.entries.size()},
           {"Z", static_cast<double>(dist.total)},
           {"sp2", dist.total_exact.str()},
           {"per_edge_separation", per_edge}};
  if (!o.edge.empty()) {
    const gridsep::EdgeId e = gridsep::parse_edge_spec(g, o.edge);
    out["edge"] = gridsep::edge_json(g, e);
    out["separation"] = sep[e];
  }
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_audit(const Options& o) {
  if (o.out.empty()) throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument, "--out is required");
  gridsep::SepStats stats;
  if (o.source == "sample") {
    const gridsep::GridDual g({o.rows, o.cols});
    stats = gridsep::estimate_separation(g, sampler_config(o), o.n, o.shards, o.threads);
  } else if (o.source == "recom") {
    const gridsep::WeightedGraph g = chain_graph(o);
    stats = gridsep::estimate_separation(g, chain_states(g, o, false));
    stats.seed = o.seed;
  } else {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument, "source must be sample or recom");
  }
  const gridsep::Histogram h = gridsep::emit_histogram(stats, o.bins);
  std::ofstream(o.out + ".csv") << h.to_csv();
  std::ofstream(o.out + ".json") << h.to_json() << '\n';
  Json summary = Json::parse(h.to_json());
  summary["source"] = stats.source;
  summary["stats"] = gridsep::sep_stats_json(stats);
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_recom(const Options& o) {
  const gridsep::WeightedGraph g = chain_graph(o);
  gridsep::CounterRng init_rng(o.seed, 1);
  gridsep::CounterRng rng(o.seed, 0);
  const gridsep::KPartition init = gridsep::initial_partition(g, o.k, o.eps, init_rng);
  int bad = 0;
  gridsep::run_chain(g, init, o.steps, o.thin, rng, [&](std::int64_t t, const gridsep::KPartition& p) {
    if (!gridsep::is_valid(g, p)) ++bad;
    std::cout << gridsep::kpartition_json(t, p).dump() << '\n';
    return true;
  });
  return bad == 0 ? 0 : kExitVerification;
}

int cmd_reconnect(const Options& o) {
  const gridsep::GridDual g({o.rows, o.cols});
  const gridsep::EdgeId e = gridsep::parse_edge_spec(g, o.edge);
  const auto [a, b] = g.endpoints(e);
  gridsep::ReconnectOptions ro;
  ro.gamma = o.gamma;
  ro.max_flips = o.max_flips;
  if (o.exhaustive) {
    const gridsep::UnsepReport r = gridsep::verify_unseparating_map(g, a, b, o.min_len, ro, o.records, o.cap);
    const Json j = gridsep::unsep_report_json(g, r);
    std::cout << j.dump() << '\n';
    if (!r.passes()) {
      std::cerr << Json{{"error", "verification-failure"}, {"report", j}}.dump() << '\n';
      return kExitVerification;
    }
    return 0;
  }
  if (o.coloring.empty()) {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument, "need --coloring or --exhaustive");
  }
  const gridsep::Coloring c = gridsep::Coloring::parse(g.dims(), read_text_or_inline(o.coloring));
  const gridsep::ReconnectResult r = gridsep::unseparate(g, c.to_partition(), a, b, ro);
  std::cout << gridsep::reconnect_json(g, r).dump() << '\n';
  return 0;
}

int cmd_walkmap(const Options& o) {
  const gridsep::GridDual g({o.rows, o.cols});
  const gridsep::Walk d = gridsep::parse_dual_path(g, o.path);
  gridsep::EdgeId conditioned = -1;
  for (const gridsep::Incidence& inc : g.dual_incident(d.front())) {
    if (inc.neighbor != d.back()) continue;
    if (std::find(d.edges.begin(), d.edges.end(), inc.edge) != d.edges.end()) continue;
    if (conditioned < 0 || inc.edge < conditioned) conditioned = inc.edge;
  }
  if (conditioned < 0) {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument,
                         "path endpoints must be joined by an edge not on the path");
  }
  std::vector<gridsep::SubgridWindow> windows;
  for (const std::string& w : o.windows) windows.push_back(gridsep::parse_window(w));
  if (o.all_windows) {
    for (int r = 1; r + 1 < g.rows(); ++r) {
      for (int c = 1; c + 1 < g.cols(); ++c) {
        const gridsep::SubgridWindow w{r, r + 1, c, c + 1};
        if (!g.in_window(d.front(), w) && !g.in_window(d.back(), w)) windows.push_back(w);
      }
    }
  }
  if (windows.empty()) throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument, "no window given");
  gridsep::BijectionReport report;
  for (const gridsep::SubgridWindow& w : windows) {
    gridsep::verify_walk_bijection(g, d, conditioned, w, o.max_len, report);
  }
  Json j = gridsep::bijection_report_json(report);
  j["path"] = walk_json(g, d);
  j["windows"] = windows.size();
  std::cout << j.dump() << '\n';
  if (!report.ok()) {
    std::cerr << Json{{"error", "verification-failure"}, {"violations", report.violations}}.dump() << '\n';
    return kExitVerification;
  }
  return 0;
}

int cmd_structure(const Options& o) {
  const gridsep::GridDual g({o.rows, o.cols});
  const gridsep::Coloring c = gridsep::Coloring::parse(g.dims(), read_text_or_inline(o.coloring));
  Json out{{"coloring", c.to_string()}, {"op", o.op}};
  if (o.op == "cross") {
    out["cross"] = vertices_json(g, gridsep::detect_cross_structures(g, c));
  } else if (o.op == "regions" || o.op == "islands") {
    const gridsep::RegionMap map = gridsep::find_regions(g, c);
    Json regions = Json::array();
    for (const gridsep::Region& r : map.regions) {
      if (o.op == "islands" && !r.is_island) continue;
      regions.push_back({{"color", r.color == gridsep::Color::kRed ? "r" : "b"},
                         {"island", r.is_island},
                         {"size", r.vertices.size()},
                         {"vertices", vertices_json(g, r.vertices)}});
    }
    out["regions"] = regions;
    out["feasible"] = gridsep::is_feasible(g, c);
  } else if (o.op == "thin") {
    Json sites = Json::array();
    for (const gridsep::ThinSite& s : gridsep::find_thin_structures(g, c)) {
      sites.push_back({{"kind", s.kind == gridsep::ThinKind::kOne ? "1-thin" : "2-thin"},
                       {"vertices", vertices_json(g, s.vertices)},
                       {"flanks", vertices_json(g, {s.flank_a, s.flank_b})},
                       {"resolved", gridsep::resolve(c, s).to_string()}});
    }
    out["sites"] = sites;
  } else if (o.op == "walk") {
    Json walks = Json::array();
    for (const gridsep::Region& r : gridsep::find_regions(g, c).regions) {
      if (!r.is_island) continue;
      const gridsep::IslandWalk w = gridsep::island_walk(g, c, r);
      const gridsep::IslandWalkCheck chk = gridsep::check_island_walk(g, c, r, w);
      Json spokes = Json::array();
      for (gridsep::EdgeId e : w.spokes) spokes.push_back(gridsep::edge_json(g, e));
      walks.push_back({{"island", vertices_json(g, r.vertices)},
                       {"walk", vertices_json(g, w.vertices)},
                       {"spokes", spokes},
                       {"properties_hold", chk.ok()}});
    }
    out["walks"] = walks;
  } else if (o.op == "case") {
    const gridsep::EdgeId e = gridsep::parse_edge_spec(g, o.edge);
    const auto [a, b] = g.endpoints(e);
    out["case_u_first"] = gridsep::classify_local_case(g, c, a, b);
    out["case_v_first"] = gridsep::classify_local_case(g, c, b, a);
  } else if (o.op == "elbow") {
    const gridsep::VertexId v = parse_vertex(g, o.vertex);
    const gridsep::ElbowClass k = gridsep::elbow_classify(g, c, v);
    out["class"] = k == gridsep::ElbowClass::kDisposable ? "disposable" : "forced_neighborhood";
    out["matches_resolution"] = gridsep::matches_elbow_resolution(g, c, v);
  } else {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument,
                         "op must be cross, regions, islands, thin, walk, case or elbow");
  }
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_enum(const Options& o) {
  const gridsep::GridDual g({o.rows, o.cols});
  std::uint64_t count = 0;
  if (o.what == "walks") {
    gridsep::EnumBudget budget;
    budget.max_walk_len = o.max_len;
    count = gridsep::enumerate_walks(g, parse_dual_vertex(g, o.from), parse_dual_vertex(g, o.to), budget,
                                     [&](const gridsep::Walk& w) {
                                       std::cout << walk_json(g, w).dump() << '\n';
                                       return true;
                                     });
  } else if (o.what == "cycles") {
    gridsep::EnumBudget budget;
    if (o.max_len > 0) budget.max_cycle_len = o.max_len;
    count = gridsep::enumerate_cycles(g, budget, [&](const gridsep::DualCycle& c) {
      std::cout << gridsep::cut_set_json(g, c).dump() << '\n';
      return true;
    });
  } else if (o.what == "partitions") {
    for (const gridsep::Partition2& p : gridsep::enumerate_partitions(g, o.cap)) {
      std::cout << gridsep::partition_json(g, p).dump() << '\n';
      ++count;
    }
  } else {
    throw gridsep::Error(gridsep::ErrorKind::kInvalidArgument, "what must be walks, cycles or partitions");
  }
  std::cout << Json{{"count", count}}.dump() << '\n';
  return 0;
}

int cmd_export_grid(const Options& o) {
  std::cout << gridsep::export_grid_json({o.rows, o.cols}).dump() << '\n';
  return 0;
}

int exit_code_for(gridsep::ErrorKind kind) {
  switch (kind) {
    case gridsep::ErrorKind::kParseError:
    case gridsep::ErrorKind::kInvalidArgument:
    case gridsep::ErrorKind::kDimensionTooSmall:
    case gridsep::ErrorKind::kTooLarge:
    case gridsep::ErrorKind::kDisconnectedGraph:
      return kExitUsage;
    default:
      return kExitVerification;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid 2-partition sampling and separation verification"};
  app.require_subcommand(1);
  Options o;

  auto grid_opts = [&](CLI::App* sub) {
    sub->add_option("--rows", o.rows, "Grid rows")->check(CLI::PositiveNumber);
    sub->add_option("--cols", o.cols, "Grid columns")->check(CLI::PositiveNumber);
  };
  auto sampler_opts = [&](CLI::App* sub) {
    sub->add_option("--lambda", o.lambda, "Smoothness parameter")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Seed");
    sub->add_option("--mode", o.mode, "alg2 or ust");
    sub->add_option("--acceptance", o.acceptance, "auto, exact, leverage or cut");
    sub->add_flag("--restart-edge", o.restart_edge, "Redraw the start edge on every restart");
    sub->add_option("--cap", o.cap, "Vertex cap for exact normalizers");
  };
  auto chain_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "Graph JSON (defaults to the rows x cols grid)");
    sub->add_option("--k", o.k, "Districts")->check(CLI::PositiveNumber);
    sub->add_option("--eps", o.eps, "Population tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--steps", o.steps, "Chain steps")->check(CLI::NonNegativeNumber);
    sub->add_option("--thin", o.thin, "Emit every thin-th state")->check(CLI::PositiveNumber);
  };

  CLI::App* sample = app.add_subcommand("sample", "Draw partitions");
  grid_opts(sample);
  sampler_opts(sample);
  sample->add_option("--n", o.n, "Samples");

  CLI::App* oracle = app.add_subcommand("oracle", "Exact distribution on a small grid");
  grid_opts(oracle);
  oracle->add_option("--lambda", o.lambda, "Smoothness parameter")->check(CLI::NonNegativeNumber);
  oracle->add_option("--edge", o.edge, "Primal edge i,j,i',j'");
  oracle->add_option("--cap", o.cap, "Vertex cap");

  CLI::App* audit = app.add_subcommand("audit", "Per-edge separation histogram");
  grid_opts(audit);
  sampler_opts(audit);
  chain_opts(audit);
  audit->add_option("--source", o.source, "sample or recom");
  audit->add_option("--n", o.n, "Samples");
  audit->add_option("--shards", o.shards, "Sample shards")->check(CLI::PositiveNumber);
  audit->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  audit->add_option("--bins", o.bins, "Histogram bins")->check(CLI::PositiveNumber);
  audit->add_option("--out", o.out, "Output prefix")->required();

  CLI::App* recom = app.add_subcommand("recom", "Run the ReCom chain");
  grid_opts(recom);
  chain_opts(recom);
  recom->add_option("--seed", o.seed, "Seed");

  CLI::App* reconnect = app.add_subcommand("reconnect", "Reconnect a separated edge");
  grid_opts(reconnect);
  reconnect->add_option("--edge", o.edge, "Primal edge i,j,i',j'")->required();
  reconnect->add_flag("--exhaustive", o.exhaustive, "Check the map over all separating cycles");
  reconnect->add_option("--coloring", o.coloring, "Coloring string or file");
  reconnect->add_option("--min-len", o.min_len, "Smallest cycle length in the domain");
  reconnect->add_option("--gamma", o.gamma, "Flip radius");
  reconnect->add_option("--max-flips", o.max_flips, "Search depth");
  reconnect->add_flag("--records", o.records, "Include per-cycle records");
  reconnect->add_option("--cap", o.cap, "Vertex cap for partition enumeration");

  CLI::App* walkmap = app.add_subcommand("walkmap-verify", "Check the walk bijection");
  grid_opts(walkmap);
  walkmap->add_option("--path", o.path, "Erasure D as i,j;i,j;O;...")->required();
  walkmap->add_option("--window", o.windows, "Window r1,r2,c1,c2 (repeatable)");
  walkmap->add_flag("--all-windows", o.all_windows, "Every 2x2 window avoiding D's endpoints");
  walkmap->add_option("--max-len", o.max_len, "Longest walk");

  CLI::App* structure = app.add_subcommand("structure", "Inspect a coloring");
  grid_opts(structure);
  structure->add_option("--op", o.op, "cross, regions, islands, thin, walk, case or elbow");
  structure->add_option("--coloring", o.coloring, "Coloring string or file")->required();
  structure->add_option("--edge", o.edge, "Edge for --op case");
  structure->add_option("--vertex", o.vertex, "Vertex for --op elbow");

  CLI::App* enumerate = app.add_subcommand("enum", "Enumerate walks, cycles or partitions");
  grid_opts(enumerate);
  enumerate->add_option("--what", o.what, "walks, cycles or partitions");
  enumerate->add_option("--from", o.from, "Start face i,j or O");
  enumerate->add_option("--to", o.to, "End face i,j or O");
  enumerate->add_option("--max-len", o.max_len, "Length cap");
  enumerate->add_option("--cap", o.cap, "Vertex cap for partitions");

  CLI::App* export_grid = app.add_subcommand("export-grid", "Write a grid in the graph schema");
  grid_opts(export_grid);

  const std::string start = utc_now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  int code = 0;
  try {
    if (sub == sample) code = cmd_sample(o);
    else if (sub == oracle) code = cmd_oracle(o);
    else if (sub == audit) code = cmd_audit(o);
    else if (sub == recom) code = cmd_recom(o);
    else if (sub == reconnect) code = cmd_reconnect(o);
    else if (sub == walkmap) code = cmd_walkmap(o);
    else if (sub == structure) code = cmd_structure(o);
    else if (sub == enumerate) code = cmd_enum(o);
    else if (sub == export_grid) code = cmd_export_grid(o);
  } catch (const gridsep::Error& e) {
    std::cerr << Json{{"error", gridsep::to_string(e.kind())}, {"message", e.what()}}.dump() << '\n';
    code = exit_code_for(e.kind());
  }
  std::cout.flush();

  Json args = Json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  const Json manifest{{"manifest",
                       {{"subcommand", sub->get_name()},
                        {"args", args},
                        {"seed", o.seed},
                        {"version", GRIDSEP_VERSION},
                        {"start", start},
                        {"end", utc_now()},
                        {"exit", code}}}};
  std::cerr << manifest.dump() << '\n';
  return code;
}
