#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "epc/bow.hpp"
#include "epc/digraph.hpp"
#include "epc/filtration.hpp"
#include "epc/patch.hpp"

namespace epc {

using Json = nlohmann::ordered_json;

// All floats in output files pass through a 9-significant-digit round, so
// identical runs produce identical bytes on every platform.
std::string fmt9(double v);
double round9(double v);
Json json_num(double v);

// n rows x n columns, token `inf` (any case) for infinite distances.
EpSpace load_distance_csv(std::istream& in);
void save_distance_csv(std::ostream& out, const EpSpace& space);

// One point per row; Euclidean distances.
EpSpace space_from_points_csv(std::istream& in);

Json space_to_json(const EpSpace& space);
EpSpace space_from_json(const Json& j);

Json neighborhood_to_json(const Neighborhood& nb);
Neighborhood neighborhood_from_json(const Json& j);
Json system_to_json(const NeighborhoodSystem& sys);
NeighborhoodSystem system_from_json(const Json& j);

Json ray_system_to_json(const WeightedRaySystem& sys);
WeightedRaySystem ray_system_from_json(const Json& j);

Json merge_tree_to_json(const MergeTree& tree, const std::vector<std::string>& leaf_labels = {});
// Rebuilds the tree (including per-threshold partitions) by replaying the
// serialized merge events.
MergeTree merge_tree_from_json(const Json& j);
std::string merge_tree_to_dot(const MergeTree& tree,
                              const std::vector<std::string>& leaf_labels = {});

// The graph restricted to scale s, as an undirected DOT graph.
std::string graph_snapshot_dot(const FilteredGraph& graph, double s,
                               const std::vector<std::string>& labels = {});

// i,j,weight rows.
void save_edge_csv(std::ostream& out, const FilteredGraph& graph);

// src,dst,weight rows (0-based integer vertex ids); optional header.
WeightedDigraph load_edgelist_csv(std::istream& in);
WeightedUndirectedGraph load_undirected_edgelist_csv(std::istream& in);

// src_account,dst_account,bytes,src_ts,dst_ts rows; optional header.
std::vector<TransferRecord> load_transfer_csv(std::istream& in);

// Directory of UTF-8 text files (one document each, filename order) or JSON
// lines {"tokens": [...]}.
Corpus load_corpus_dir(const std::string& path);
Corpus load_corpus_jsonl(std::istream& in);

}  // namespace epc
