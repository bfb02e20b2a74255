#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "epc/patch.hpp"

namespace epc {

struct DirectedEdge {
  index_t src = 0;
  index_t dst = 0;
  double w = 0.0;  // > 0
};

// Sparse weighted directed multigraph.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(index_t vertex_count, std::vector<DirectedEdge> edges);

  index_t vertex_count() const { return n_; }
  const std::vector<DirectedEdge>& edges() const { return edges_; }
  // Edge indices leaving / entering a vertex.
  const std::vector<index_t>& out_edges(index_t v) const { return out_[v]; }
  const std::vector<index_t>& in_edges(index_t v) const { return in_[v]; }

 private:
  index_t n_ = 0;
  std::vector<DirectedEdge> edges_;
  std::vector<std::vector<index_t>> out_, in_;
};

// Two rules for the weight of an edge path.
enum class PathWeight {
  MinEdge,   // bottleneck: min over the edges
  SumEdges,  // total: sum over the edges
};

// Vertices lying on some directed path of length <= k through x (paths are
// edge sequences; an edge may appear only once). x itself always included.
std::vector<index_t> neighborhood_k(const WeightedDigraph& graph, index_t x, index_t k);

// Sum of path weights over all distinct edge paths x -> y of length <= k,
// plus the same for y -> x. Throws EnumerationLimit past `cap` paths.
double weight_sum(const WeightedDigraph& graph, index_t x, index_t y, index_t k,
                  PathWeight rule = PathWeight::MinEdge, std::size_t cap = 1000000);

// (y, e^{-weight_sum}) for each y in the k-neighborhood of x with a positive
// sum; the ray inputs of the patching construction.
std::vector<std::pair<index_t, double>> ray_weights(const WeightedDigraph& graph, index_t x,
                                                    index_t k,
                                                    PathWeight rule = PathWeight::MinEdge,
                                                    std::size_t cap = 1000000);

// Rays of every vertex at once.
WeightedRaySystem digraph_ray_system(const WeightedDigraph& graph, index_t k,
                                     PathWeight rule = PathWeight::MinEdge,
                                     std::size_t cap = 1000000);

// One data transfer between two accounts; timestamps order source before
// destination strictly.
struct TransferRecord {
  std::string src_account;
  std::string dst_account;
  double bytes = 0.0;
  std::int64_t src_ts = 0;
  std::int64_t dst_ts = 0;
};

// Transfer graph: vertices are the (account, timestamp) pairs occurring in
// the records; each record yields one edge per pair of admissible timestamps
// (departure at or before the record's source stamp, arrival at or after its
// destination stamp), all weighted by the byte count.
struct TransferGraph {
  WeightedDigraph graph;
  std::vector<std::pair<std::string, std::int64_t>> vertex_labels;  // sorted
  // Per account: its sorted timestamps ("simplex of timestamps").
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> account_timestamps;

  index_t vertex_of(const std::string& account, std::int64_t ts) const;
};

// Throws ParseError when a record has equal accounts, nonpositive bytes, or
// src_ts >= dst_ts.
TransferGraph transfer_graph(std::span<const TransferRecord> records);

struct UndirectedEdge {
  index_t u = 0;
  index_t v = 0;
  double w = 0.0;  // > 0
};

// Sparse weighted undirected multigraph.
class WeightedUndirectedGraph {
 public:
  WeightedUndirectedGraph() = default;
  WeightedUndirectedGraph(index_t vertex_count, std::vector<UndirectedEdge> edges);

  index_t vertex_count() const { return n_; }
  const std::vector<UndirectedEdge>& edges() const { return edges_; }
  const std::vector<index_t>& incident(index_t v) const { return incident_[v]; }

 private:
  index_t n_ = 0;
  std::vector<UndirectedEdge> edges_;
  std::vector<std::vector<index_t>> incident_;
};

std::vector<index_t> neighborhood_k(const WeightedUndirectedGraph& graph, index_t x, index_t k);

// Single-direction sum: undirected paths x -- y of length <= k.
double weight_sum(const WeightedUndirectedGraph& graph, index_t x, index_t y, index_t k,
                  PathWeight rule = PathWeight::MinEdge, std::size_t cap = 1000000);

std::vector<std::pair<index_t, double>> undirected_ray_weights(
    const WeightedUndirectedGraph& graph, index_t x, index_t k,
    PathWeight rule = PathWeight::MinEdge, std::size_t cap = 1000000);

WeightedRaySystem undirected_ray_system(const WeightedUndirectedGraph& graph, index_t k,
                                        PathWeight rule = PathWeight::MinEdge,
                                        std::size_t cap = 1000000);

}  // namespace epc
