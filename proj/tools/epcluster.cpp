// Command-line front end: ingestion -> neighborhood generation -> patching ->
// clustering -> reports. See docs/formats.md for every file schema.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epc/bow.hpp"
#include "epc/digraph.hpp"
#include "epc/io.hpp"
#include "epc/patch.hpp"
#include "epc/sampling.hpp"

namespace fs = std::filesystem;
using namespace epc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitCap = 4;

struct Options {
  std::string input;
  std::string kind;      // points-csv | distance-csv | edgelist | transfers | corpus | corpus-jsonl
  std::string strategy;  // k-complete | k-bounded | complete-k-bounded | graph-k | bow-r
  index_t k = 2;
  double S = kInf;
  index_t r = 1;
  std::vector<double> scales;
  index_t dim_cap = 2;
  std::string weight_transform = "raw";  // raw | exp-neg | reciprocal
  std::string path_weight = "min";       // min | sum
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool snapshots = false;

  // sample subcommand
  std::string universe = "grid";
  std::string universe_spec;
  std::vector<index_t> dims{16, 16};
  index_t size = 1000;
  index_t clusters = 2;
  double spread = 0.5;
  double separation = 10.0;
  index_t sample_count = 8;
  index_t sample_size = 128;
  index_t rounds = 3;
  index_t tractable_bound = 1024;
  std::string refine = "accumulate";  // accumulate | expansion
  std::string mode = "estimate";      // estimate | cluster
  index_t base_point = 0;

  // convert subcommand
  std::string to;
  std::string output_file;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write output: " + path.string());
  out << text;
}

PathWeight path_weight_of(const Options& opt) {
  if (opt.path_weight == "min") return PathWeight::MinEdge;
  if (opt.path_weight == "sum") return PathWeight::SumEdges;
  throw ConfigError("unknown path weight rule: " + opt.path_weight);
}

WordWeightTransform transform_of(const Options& opt) {
  if (opt.weight_transform == "raw") return WordWeightTransform::Raw;
  if (opt.weight_transform == "exp-neg") return WordWeightTransform::ExpNeg;
  if (opt.weight_transform == "reciprocal") return WordWeightTransform::Reciprocal;
  throw ConfigError("unknown weight transform: " + opt.weight_transform);
}

bool metric_kind(const std::string& kind) {
  return kind == "points-csv" || kind == "distance-csv";
}

bool graph_kind(const std::string& kind) { return kind == "edgelist" || kind == "transfers"; }

bool corpus_kind(const std::string& kind) { return kind == "corpus" || kind == "corpus-jsonl"; }

void check_compatibility(const Options& opt) {
  const std::string& s = opt.strategy;
  if (metric_kind(opt.kind)) {
    if (s != "k-complete" && s != "k-bounded" && s != "complete-k-bounded") {
      throw ConfigError("strategy '" + s + "' does not apply to metric input");
    }
    if ((s == "k-bounded" || s == "complete-k-bounded") && !is_finite_dist(opt.S)) {
      throw ConfigError("strategy '" + s + "' needs a finite --S bound");
    }
  } else if (graph_kind(opt.kind)) {
    if (s != "graph-k") throw ConfigError("graph input requires the graph-k strategy");
  } else if (corpus_kind(opt.kind)) {
    if (s != "bow-r") throw ConfigError("corpus input requires the bow-r strategy");
  } else {
    throw ConfigError("unknown input kind: " + opt.kind);
  }
  for (index_t i = 1; i < opt.scales.size(); ++i) {
    if (opt.scales[i] < opt.scales[i - 1]) {
      throw ConfigError("--scales must be sorted ascending");
    }
  }
}

EpSpace load_space(const Options& opt) {
  std::istringstream in(slurp(opt.input));
  return opt.kind == "distance-csv" ? load_distance_csv(in) : space_from_points_csv(in);
}

// Everything cmd_cluster and cmd_verify need, regardless of input kind.
struct Pipeline {
  std::vector<std::string> labels;
  FilteredGraph rays;                      // carrier of the clustering
  std::optional<FilteredGraph> nbhd_skel;  // metric strategies
  std::optional<FilteredGraph> rips;       // metric strategies
  std::optional<EpSpace> space;            // metric strategies
  std::optional<NeighborhoodSystem> system;
  WeightedRaySystem ray_system;            // positive-weight rays
  double radius_min = 0.0, radius_max = 0.0;
  double bound_S = kInf;
};

WeightedRaySystem positive_rays_of_system(const EpSpace& space, const NeighborhoodSystem& sys) {
  WeightedRaySystem rays(space.size());
  for (const auto& nb : sys.items) {
    for (index_t y : nb.members) {
      if (y != nb.base && space.d(nb.base, y) > 0.0) rays.add(nb.base, y, space.d(nb.base, y));
    }
  }
  return rays;
}

Pipeline build_pipeline(const Options& opt) {
  Pipeline p;
  if (metric_kind(opt.kind)) {
    const EpSpace space = load_space(opt);
    for (index_t v = 0; v < space.size(); ++v) p.labels.push_back(std::to_string(v));
    p.space = space;
    p.rips = rips_graph(space);
    p.bound_S = opt.S;

    if (opt.strategy == "k-bounded") {
      p.rays = k_bounded_rays(space, opt.S);
      p.nbhd_skel = k_bounded_skeleton(space, opt.k, opt.S);
      p.radius_min = 0.0;
      p.radius_max = opt.S;
      WeightedRaySystem rs(space.size());
      for (const auto& e : p.rays.edges()) {
        if (e.w > 0.0) rs.add(e.u, e.v, e.w);
      }
      p.ray_system = std::move(rs);
    } else {
      NeighborhoodSystem sys = opt.strategy == "k-complete"
                                   ? k_complete_system(space, opt.k)
                                   : complete_k_bounded_system(space, opt.k, opt.S);
      p.rays = ray_complex(space, sys);
      // Component structure only sees the 1-skeleton; the cap bounds the
      // simplices materialized for diagnostics.
      p.nbhd_skel = neighborhood_complex(space, sys, opt.dim_cap).one_skeleton();
      p.radius_min = kInf;
      p.radius_max = 0.0;
      for (const auto& nb : sys.items) {
        p.radius_min = std::min(p.radius_min, nb.radius);
        p.radius_max = std::max(p.radius_max, nb.radius);
      }
      p.ray_system = positive_rays_of_system(space, sys);
      p.system = std::move(sys);
    }
  } else if (graph_kind(opt.kind)) {
    std::istringstream in(slurp(opt.input));
    WeightedDigraph graph;
    if (opt.kind == "edgelist") {
      graph = load_edgelist_csv(in);
      for (index_t v = 0; v < graph.vertex_count(); ++v) p.labels.push_back(std::to_string(v));
    } else {
      const auto records = load_transfer_csv(in);
      TransferGraph tg = transfer_graph(records);
      graph = std::move(tg.graph);
      for (const auto& [account, ts] : tg.vertex_labels) {
        p.labels.push_back(account + "@" + std::to_string(ts));
      }
    }
    p.ray_system = digraph_ray_system(graph, opt.k, path_weight_of(opt));
    p.rays = ray_graph(p.ray_system);
  } else {
    Corpus corpus;
    if (opt.kind == "corpus") {
      corpus = load_corpus_dir(opt.input);
    } else {
      std::istringstream in(slurp(opt.input));
      corpus = load_corpus_jsonl(in);
    }
    const VocabMap vocab = build_vocab(corpus);
    const FibreIndex index = build_fibre_index(corpus, vocab);
    p.labels = vocab.words;
    p.ray_system = word_ray_system(index, opt.r, transform_of(opt));
    p.rays = ray_graph(p.ray_system);
  }
  return p;
}

std::vector<double> scales_for(const Options& opt, const Pipeline& p) {
  if (!opt.scales.empty()) return opt.scales;
  std::vector<double> values;
  for (const auto& e : p.rays.edges()) {
    if (values.empty() || e.w > values.back() + kEps) values.push_back(e.w);
  }
  if (values.empty()) return {0.0};
  std::vector<double> scales = values;
  scales.push_back(values.back() * 1.25);
  if (scales.size() > 24) {
    std::vector<double> trimmed;
    const double step = static_cast<double>(scales.size() - 1) / 23.0;
    for (index_t i = 0; i < 24; ++i) {
      trimmed.push_back(scales[static_cast<index_t>(static_cast<double>(i) * step + 0.5)]);
    }
    trimmed.erase(std::unique(trimmed.begin(), trimmed.end()), trimmed.end());
    return trimmed;
  }
  return scales;
}

Json comparison_entry(const Pipeline& p, double s) {
  Json entry;
  entry["scale"] = json_num(s);
  const Partition ray_part = pi0(p.rays, s);
  entry["ray_components"] = ray_part.count;
  if (p.nbhd_skel && p.rips) {
    const auto ray_vs_nbhd = compare_pi0(p.rays, *p.nbhd_skel, s);
    const auto nbhd_vs_rips = compare_pi0(*p.nbhd_skel, *p.rips, s);
    entry["neighborhood_components"] = ray_vs_nbhd.to.count;
    entry["rips_components"] = nbhd_vs_rips.to.count;
    entry["ray_vs_neighborhood_bijective"] = ray_vs_nbhd.bijective;
    entry["neighborhood_vs_rips_bijective"] = nbhd_vs_rips.bijective;

    Json guaranteed = Json::array();
    if (approx_le(s, p.radius_min)) guaranteed.push_back("all_maps_bijective_below_min_radius");
    if (s >= p.radius_max - kEps) guaranteed.push_back("ray_equals_neighborhood_above_max_radius");
    if (is_finite_dist(p.bound_S) && approx_le(s, p.bound_S)) {
      guaranteed.push_back("skeleton_equals_rips_below_bound");
    }
    if (is_finite_dist(p.bound_S) && s >= p.bound_S - kEps) {
      guaranteed.push_back("ray_components_stable_above_bound");
    }
    entry["guaranteed"] = std::move(guaranteed);
  } else {
    const EpSpace global = global_metric(p.ray_system);
    const Partition metric_part = pi0(rips_graph(global), s);
    const Partition complex_part = amalgamated_complex_pi0(p.ray_system, s);
    entry["patched_metric_components"] = metric_part.count;
    entry["amalgamated_complex_components"] = complex_part.count;
    entry["excision_ok"] = ray_part == metric_part && complex_part == metric_part;
    entry["guaranteed"] = Json::array({"ray_equals_patched_metric_at_every_scale"});
  }
  return entry;
}

int cmd_cluster(const Options& opt) {
  check_compatibility(opt);
  const Pipeline p = build_pipeline(opt);
  const std::vector<double> scales = scales_for(opt, p);
  fs::create_directories(opt.out_dir);
  const fs::path out(opt.out_dir);

  // Cluster assignments per scale.
  std::ostringstream clusters;
  clusters << "point,label,scale,cluster\n";
  const MergeTree tree = merge_tree(p.rays);
  for (const double s : scales) {
    const Partition part = tree.at(s);
    for (index_t v = 0; v < part.rep.size(); ++v) {
      clusters << v << ',' << p.labels[v] << ',' << fmt9(s) << ',' << part.rep[v] << '\n';
    }
  }
  write_file(out / "clusters.csv", clusters.str());

  write_file(out / "merge_tree.json", merge_tree_to_json(tree, p.labels).dump(2) + "\n");
  write_file(out / "merge_tree.dot", merge_tree_to_dot(tree, p.labels));

  std::ostringstream rays_csv;
  save_edge_csv(rays_csv, p.rays);
  write_file(out / "rays.csv", rays_csv.str());

  Json comparison;
  comparison["strategy"] = opt.strategy;
  comparison["scales"] = Json::array();
  for (const double s : scales) comparison["scales"].push_back(comparison_entry(p, s));
  write_file(out / "comparison.json", comparison.dump(2) + "\n");

  if (opt.snapshots) {
    for (index_t i = 0; i < scales.size(); ++i) {
      std::ostringstream name;
      name << "snapshot_" << i << ".dot";
      write_file(out / name.str(), graph_snapshot_dot(p.rays, scales[i], p.labels));
    }
  }
  return kExitOk;
}

Json excision_to_json(const ExcisionReport& report) {
  Json j;
  j["pass"] = report.all_ok;
  Json per_scale = Json::array();
  for (const auto& r : report.scales) {
    Json e;
    e["scale"] = json_num(r.scale);
    e["amalgamated_complex_matches"] = r.complex_matches;
    e["ray_graph_matches"] = r.rays_match;
    if (r.witness) {
      e["witness"] = Json::array({r.witness->first, r.witness->second});
    }
    per_scale.push_back(std::move(e));
  }
  j["scales"] = std::move(per_scale);
  return j;
}

int cmd_verify(const Options& opt) {
  check_compatibility(opt);
  const Pipeline p = build_pipeline(opt);
  const std::vector<double> scales = scales_for(opt, p);
  fs::create_directories(opt.out_dir);

  Json report;
  report["strategy"] = opt.strategy;
  Json checks = Json::array();
  bool all_pass = true;
  auto add_check = [&](const std::string& name, bool pass, Json details) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!details.is_null()) c["details"] = std::move(details);
    checks.push_back(std::move(c));
    all_pass = all_pass && pass;
  };

  // Patched-metric excision: ray clusters equal the global-metric clusters.
  {
    const ExcisionReport ex = verify_excision(p.ray_system, scales);
    add_check("ray_graph_clusters_equal_patched_metric_clusters", ex.all_ok,
              excision_to_json(ex));
  }

  // Colimit route equals the shortest-path route.
  if (p.ray_system.size() <= 96) {
    const EpSpace fast = global_metric(p.ray_system);
    const EpSpace slow = global_metric_via_wedges(p.ray_system);
    bool same = fast.size() == slow.size();
    for (index_t i = 0; same && i < fast.size(); ++i) {
      for (index_t j = i + 1; same && j < fast.size(); ++j) {
        same = approx_eq(fast.d(i, j), slow.d(i, j));
      }
    }
    add_check("patched_metric_equals_colimit_computation", same, {});
  }

  if (p.space && p.system) {
    // Gluing local clusters along intersections reproduces the global ones.
    bool glue_ok = true;
    for (const double s : scales) {
      glue_ok = glue_ok && mapper_coequalizer_check(*p.space, *p.system, s);
    }
    add_check("local_cluster_gluing_matches_neighborhood_complex", glue_ok, {});
  }

  if (p.nbhd_skel && p.rips) {
    // Scale-regime comparisons for the three nested complexes.
    Json per_scale = Json::array();
    bool regimes_ok = true;
    for (const double s : scales) {
      const auto ray_vs_nbhd = compare_pi0(p.rays, *p.nbhd_skel, s);
      const auto nbhd_vs_rips = compare_pi0(*p.nbhd_skel, *p.rips, s);
      Json e;
      e["scale"] = json_num(s);
      bool ok = true;
      if (approx_le(s, p.radius_min)) {
        ok = ok && ray_vs_nbhd.bijective && nbhd_vs_rips.bijective;
        e["below_min_radius_bijections"] = ok;
      }
      if (s >= p.radius_max - kEps) {
        e["ray_equals_neighborhood"] = ray_vs_nbhd.bijective;
        ok = ok && ray_vs_nbhd.bijective;
      }
      regimes_ok = regimes_ok && ok;
      per_scale.push_back(std::move(e));
    }
    // Component stability above the neighborhood radii.
    const double top = std::max(p.radius_max, is_finite_dist(p.bound_S) ? p.bound_S : 0.0);
    const bool stable = pi0(p.rays, top) == pi0(p.rays, 2.0 * top + 1.0) &&
                        pi0(*p.nbhd_skel, top) == pi0(*p.nbhd_skel, 2.0 * top + 1.0);
    add_check("regime_comparisons", regimes_ok, std::move(per_scale));
    add_check("components_stable_above_neighborhood_radii", stable, {});
  }

  report["checks"] = std::move(checks);
  report["all_pass"] = all_pass;
  write_file(fs::path(opt.out_dir) / "verify_report.json", report.dump(2) + "\n");
  std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES, see report\n");
  return all_pass ? kExitOk : 1;
}

int cmd_sample(const Options& opt) {
  SyntheticSpec spec;
  if (!opt.universe_spec.empty()) {
    const Json j = Json::parse(slurp(opt.universe_spec));
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("dims")) spec.dims = j["dims"].get<std::vector<index_t>>();
    if (j.contains("size")) spec.size = j["size"].get<index_t>();
    if (j.contains("clusters")) spec.clusters = j["clusters"].get<index_t>();
    if (j.contains("spread")) spec.spread = j["spread"].get<double>();
    if (j.contains("separation")) spec.separation = j["separation"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  } else {
    spec.kind = opt.universe;
    spec.dims = opt.dims;
    spec.size = opt.size;
    spec.clusters = opt.clusters;
    spec.spread = opt.spread;
    spec.separation = opt.separation;
    spec.seed = opt.seed;
  }

  Universe universe = make_universe(spec);
  universe.tractable_bound = opt.tractable_bound;
  if (opt.sample_size > universe.tractable_bound) {
    throw ConfigError("--sample-size exceeds the tractable bound");
  }
  if (opt.tractable_bound < opt.k || opt.sample_size < opt.k) {
    throw ConfigError("samples of this size cannot hold k points");
  }
  if (opt.base_point >= universe.size) throw ConfigError("--base-point out of range");

  Rng rng(opt.seed);
  const Sampler sampler = uniform_sampler(universe);
  fs::create_directories(opt.out_dir);

  Json report;
  report["universe"] = spec.kind;
  report["universe_size"] = universe.size;
  report["seed"] = opt.seed;
  report["k"] = opt.k;

  if (opt.mode == "estimate") {
    NeighborhoodEstimate est =
        estimate_once(universe, sampler, rng, opt.base_point, opt.k, opt.sample_count,
                      opt.sample_size);
    Json rounds = Json::array();
    auto record = [&](const NeighborhoodEstimate& e) {
      Json r;
      r["radius"] = json_num(e.current.radius);
      r["support_size"] = e.support.size();
      r["members"] = e.current.members;
      rounds.push_back(std::move(r));
    };
    record(est);
    for (index_t round = 0; round < opt.rounds; ++round) {
      est = opt.refine == "expansion"
                ? refine_neighbor_expansion(universe, sampler, rng, est, opt.k, opt.sample_size)
                : refine_accumulate(universe, sampler, rng, est, opt.k, opt.sample_count,
                                    opt.sample_size);
      record(est);
    }
    report["rounds"] = std::move(rounds);
    const Neighborhood truth = true_k_complete(universe, opt.base_point, opt.k);
    report["recall"] = json_num(recall(est.current, truth));
    report["true_radius"] = json_num(truth.radius);
  } else if (opt.mode == "cluster") {
    std::vector<std::vector<index_t>> samples;
    for (index_t i = 0; i < opt.sample_count; ++i) {
      const index_t anchor = bounded(rng, universe.size);
      samples.push_back(sampler(anchor, opt.sample_size, rng));
    }
    const SampledClustering out = cluster_sampled(universe, samples, opt.k);
    report["points"] = out.points.size();
    report["excision_ok"] = out.excision.all_ok;
    report["thresholds"] = Json::array();
    for (const double t : out.tree.thresholds) report["thresholds"].push_back(json_num(t));
    write_file(fs::path(opt.out_dir) / "merge_tree.json", merge_tree_to_json(out.tree).dump(2) + "\n");
  } else {
    throw ConfigError("unknown sample mode: " + opt.mode);
  }

  write_file(fs::path(opt.out_dir) / "sample_report.json", report.dump(2) + "\n");
  return kExitOk;
}

int cmd_convert(const Options& opt) {
  std::string result;
  const std::string& to = opt.to;

  if (metric_kind(opt.kind)) {
    const EpSpace space = load_space(opt);
    if (to == "space-json") {
      result = space_to_json(space).dump(2) + "\n";
    } else if (to == "distance-csv") {
      std::ostringstream out;
      save_distance_csv(out, space);
      result = out.str();
    } else if (to == "neighborhoods-json") {
      if (opt.strategy == "k-bounded") {
        throw ConfigError("the k-bounded family is implicit; export rays instead");
      }
      NeighborhoodSystem sys = opt.strategy == "complete-k-bounded"
                                   ? complete_k_bounded_system(space, opt.k, opt.S)
                                   : k_complete_system(space, opt.k);
      result = system_to_json(sys).dump(2) + "\n";
    } else if (to == "rays-json") {
      const NeighborhoodSystem sys = k_complete_system(space, opt.k);
      result = ray_system_to_json(positive_rays_of_system(space, sys)).dump(2) + "\n";
    } else {
      throw ConfigError("unsupported conversion target: " + to);
    }
  } else if (graph_kind(opt.kind)) {
    std::istringstream in(slurp(opt.input));
    WeightedDigraph graph;
    if (opt.kind == "edgelist") {
      graph = load_edgelist_csv(in);
    } else {
      TransferGraph tg = transfer_graph(load_transfer_csv(in));
      graph = std::move(tg.graph);
    }
    if (to == "rays-json") {
      result = ray_system_to_json(digraph_ray_system(graph, opt.k, path_weight_of(opt))).dump(2) +
               "\n";
    } else if (to == "edge-csv") {
      std::ostringstream out;
      out << "src,dst,weight\n";
      for (const auto& e : graph.edges()) {
        out << e.src << ',' << e.dst << ',' << fmt9(e.w) << '\n';
      }
      result = out.str();
    } else {
      throw ConfigError("unsupported conversion target: " + to);
    }
  } else if (corpus_kind(opt.kind)) {
    Corpus corpus;
    if (opt.kind == "corpus") {
      corpus = load_corpus_dir(opt.input);
    } else {
      std::istringstream in(slurp(opt.input));
      corpus = load_corpus_jsonl(in);
    }
    const VocabMap vocab = build_vocab(corpus);
    const FibreIndex index = build_fibre_index(corpus, vocab);
    if (to == "rays-json") {
      result = ray_system_to_json(word_ray_system(index, opt.r, transform_of(opt))).dump(2) + "\n";
    } else if (to == "vocab-json") {
      Json j;
      j["words"] = vocab.words;
      Json fibres = Json::array();
      for (index_t w = 0; w < index.word_count; ++w) {
        Json f;
        f["word"] = index.words[w];
        f["positions"] = index.positions[w];
        fibres.push_back(std::move(f));
      }
      j["fibres"] = std::move(fibres);
      result = j.dump(2) + "\n";
    } else {
      throw ConfigError("unsupported conversion target: " + to);
    }
  } else {
    throw ConfigError("unknown input kind: " + opt.kind);
  }

  if (opt.output_file.empty() || opt.output_file == "-") {
    std::cout << result;
  } else {
    write_file(opt.output_file, result);
  }
  return kExitOk;
}

void add_input_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("-i,--input", opt.input, "input path, or - for stdin")->required();
  cmd->add_option("--kind", opt.kind,
                  "points-csv | distance-csv | edgelist | transfers | corpus | corpus-jsonl")
      ->required();
  cmd->add_option("--strategy", opt.strategy,
                  "k-complete | k-bounded | complete-k-bounded | graph-k | bow-r");
  cmd->add_option("-k,--k", opt.k, "neighborhood size / hop bound");
  cmd->add_option("-S,--S", opt.S, "ball radius bound");
  cmd->add_option("-r,--r", opt.r, "word window radius");
  cmd->add_option("--scales", opt.scales, "scales to report (ascending)")->delimiter(',');
  cmd->add_option("--dim-cap", opt.dim_cap, "simplex dimension cap");
  cmd->add_option("--weight-transform", opt.weight_transform, "raw | exp-neg | reciprocal");
  cmd->add_option("--path-weight", opt.path_weight, "min | sum");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("-o,--out", opt.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-scale clustering over extended pseudo-metric spaces"};
  app.require_subcommand(1);
  app.set_config("--config");

  Options opt;

  CLI::App* cluster = app.add_subcommand("cluster", "cluster an input and write reports");
  add_input_options(cluster, opt);
  cluster->add_flag("--snapshots", opt.snapshots, "write per-scale DOT snapshots");

  CLI::App* verify = app.add_subcommand("verify", "run the equivalence checks on an input");
  add_input_options(verify, opt);

  CLI::App* sample = app.add_subcommand("sample", "run sampling strategies on a synthetic universe");
  sample->add_option("--universe", opt.universe, "grid | blobs | planted");
  sample->add_option("--universe-spec", opt.universe_spec, "JSON spec file");
  sample->add_option("--dims", opt.dims, "grid extents")->delimiter(',');
  sample->add_option("--size", opt.size, "point count");
  sample->add_option("--clusters", opt.clusters, "cluster count");
  sample->add_option("--spread", opt.spread, "within-cluster spread");
  sample->add_option("--separation", opt.separation, "between-cluster spacing");
  sample->add_option("-k,--k", opt.k, "neighborhood size");
  sample->add_option("--samples", opt.sample_count, "samples per round");
  sample->add_option("--sample-size", opt.sample_size, "points per sample");
  sample->add_option("--tractable-bound", opt.tractable_bound, "largest allowed sample");
  sample->add_option("--rounds", opt.rounds, "refinement rounds");
  sample->add_option("--refine", opt.refine, "accumulate | expansion");
  sample->add_option("--mode", opt.mode, "estimate | cluster");
  sample->add_option("--base-point", opt.base_point, "point whose neighborhood to estimate");
  sample->add_option("--seed", opt.seed, "random seed");
  sample->add_option("-o,--out", opt.out_dir, "output directory");

  CLI::App* convert = app.add_subcommand("convert", "translate between the documented formats");
  add_input_options(convert, opt);
  convert->add_option("--to", opt.to,
                      "space-json | distance-csv | neighborhoods-json | rays-json | edge-csv | "
                      "vocab-json")
      ->required();
  convert->add_option("--output", opt.output_file, "output file, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (cluster->parsed()) return cmd_cluster(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (sample->parsed()) return cmd_sample(opt);
    if (convert->parsed()) return cmd_convert(opt);
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const EnumerationLimit& e) {
    std::cerr << "enumeration cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const InsufficientPoints& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  }
}
