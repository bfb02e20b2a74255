#pragma once

#include <optional>
#include <span>
#include <vector>

#include "epc/neighborhoods.hpp"

namespace epc {

struct FilteredEdge {
  index_t u = 0, v = 0;  // u < v
  double w = 0.0;        // finite, >= 0

  bool operator==(const FilteredEdge&) const = default;
};

// Weighted graph queried at any scale: edge {u,v} is present at scale s when
// w <= s + eps. Duplicate edges keep the minimum weight.
class FilteredGraph {
 public:
  FilteredGraph() = default;
  explicit FilteredGraph(index_t vertex_count) : n_(vertex_count) {}

  static FilteredGraph from_edges(index_t vertex_count, std::vector<FilteredEdge> edges);

  index_t vertex_count() const { return n_; }
  const std::vector<FilteredEdge>& edges() const { return edges_; }  // sorted by (w, u, v)

  // Edges with weight <= s + eps; the prefix of edges() by monotonicity.
  std::span<const FilteredEdge> at_scale(double s) const;

  // Largest finite edge weight, or 0 when edgeless.
  double max_weight() const { return edges_.empty() ? 0.0 : edges_.back().w; }

  bool operator==(const FilteredGraph&) const = default;

 private:
  index_t n_ = 0;
  std::vector<FilteredEdge> edges_;
};

// Partition of the vertex set in canonical form: rep[v] is the least vertex
// index in v's class.
struct Partition {
  std::vector<index_t> rep;
  index_t count = 0;

  bool operator==(const Partition&) const = default;
};

// Path components of the graph at scale s.
Partition pi0(const FilteredGraph& graph, double s);

struct Simplex {
  std::vector<index_t> vertices;  // sorted
  double birth = 0.0;             // max pairwise distance

  index_t dim() const { return vertices.size() - 1; }
  bool operator==(const Simplex&) const = default;
};

// Simplices up to a dimension cap, closed under faces; each face is born no
// later than its cofaces. pi0 sees only the 1-skeleton.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(index_t vertex_count, std::vector<Simplex> simplices);

  index_t vertex_count() const { return n_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  FilteredGraph one_skeleton() const;
  std::size_t count_at_scale(double s, index_t dim) const;

 private:
  index_t n_ = 0;
  std::vector<Simplex> simplices_;  // sorted by (dim, birth, vertices)
};

// One edge per finite-distance pair, weighted by the distance.
FilteredGraph rips_graph(const EpSpace& space);

// All finite-diameter subsets of size <= dim_cap+1, born at their diameter.
// Throws EnumerationLimit past size_cap simplices.
FilteredComplex rips_complex(const EpSpace& space, index_t dim_cap,
                             std::size_t size_cap = 1000000);

// Rays x -> y for y in N_x - {x}, weighted d(x,y), min-deduplicated.
FilteredGraph ray_complex(const EpSpace& space, const NeighborhoodSystem& system);

// Subsets of the individual neighborhoods (size <= dim_cap+1), born at their
// diameter. Vertices of the space always present.
FilteredComplex neighborhood_complex(const EpSpace& space, const NeighborhoodSystem& system,
                                     index_t dim_cap, std::size_t size_cap = 1000000);

// Single-linkage dendrogram: the full directed system of partitions across
// the distinct (eps-grouped) edge weights.
struct MergeEvent {
  double threshold = 0.0;
  std::vector<index_t> joined;  // representatives of the clusters that fused
  index_t rep = 0;              // representative of the fused cluster
};

struct MergeTree {
  index_t vertex_count = 0;
  std::vector<double> thresholds;     // ascending, distinct
  std::vector<Partition> components;  // partition after each threshold
  std::vector<MergeEvent> merges;

  // Partition at an arbitrary scale (discrete below the first threshold).
  Partition at(double s) const;
};

MergeTree merge_tree(const FilteredGraph& graph);

// The map pi0(a at s) -> pi0(b at s) induced by an edgewise inclusion a ⊆ b.
// Always surjective (same vertices); bijective iff the counts agree.
struct Pi0Comparison {
  Partition from, to;
  bool bijective = false;
  // When only surjective: a vertex pair split in `a` but joined in `b`.
  std::optional<std::pair<index_t, index_t>> merged_witness;
};

// Throws std::invalid_argument when a is not an edgewise subcomplex of b
// at scale s or vertex counts differ.
Pi0Comparison compare_pi0(const FilteredGraph& a, const FilteredGraph& b, double s);

// Connectivity through chains of pairwise-intersecting neighborhoods,
// restricted to scale s when given (a neighborhood restricted to scale s
// keeps its base and the members within distance s). Agrees with ray-complex
// connectivity at every scale.
struct NeighborhoodChain {
  bool connected = false;
  // (point, index into system.items of the chosen neighborhood) per hop.
  std::vector<std::pair<index_t, index_t>> chain;
};

NeighborhoodChain neighborhood_path(const EpSpace& space, const NeighborhoodSystem& system,
                                    index_t x, index_t y,
                                    std::optional<double> s = std::nullopt);

// Checks that gluing the per-neighborhood partitions along shared points
// reproduces pi0 of the neighborhood complex at scale s.
bool mapper_coequalizer_check(const EpSpace& space, const NeighborhoodSystem& system, double s);

// --- Implicit complexes for bounded-neighborhood systems. ---
// The family of all neighborhoods with at most k+1 members inside an S-ball
// is far too large to enumerate; its ray graph and 1-skeleton have closed
// forms, which is all pi0 needs.

// Rays of the bounded family: every pair within distance S.
FilteredGraph k_bounded_rays(const EpSpace& space, double S);

// 1-skeleton of the bounded-family complex: pairs {u,v} lying in a common
// neighborhood. With k >= 2 any witness base x with u,v in Z(x,S) serves;
// with k = 1 only pairs with d(u,v) <= S qualify.
FilteredGraph k_bounded_skeleton(const EpSpace& space, index_t k, double S);

// Star complexes around a fixed base: the rays x–y for y in the S-ball, and
// the 1-skeleton of the union of x's bounded neighborhoods. Both graphs are
// indexed by position in `points` (the sorted ball), their common vertex set.
struct StarComplexes {
  std::vector<index_t> points;
  FilteredGraph rays;
  FilteredGraph skeleton;
};
StarComplexes star_complexes(const EpSpace& space, index_t x, index_t k, double S);

// Rips graph of the sub-space on a sorted subset of points, with vertices
// renumbered to 0..subset.size()-1.
FilteredGraph rips_graph_on(const EpSpace& space, std::span<const index_t> subset);

}  // namespace epc
