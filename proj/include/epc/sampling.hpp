#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "epc/filtration.hpp"
#include "epc/patch.hpp"
#include "epc/rng.hpp"

namespace epc {

// A data set too large to hold as a matrix: distances come from a callback
// and subsets come from a seeded sampler. The callback must be a valid
// ep-metric on any finite subset and safe to call concurrently.
struct Universe {
  index_t size = 0;
  std::function<double(index_t, index_t)> distance;
  index_t tractable_bound = 1024;  // M: the largest sample worth asking for
};

// Returns a sorted sample of distinct point ids containing `required`, of the
// requested size (capped at the universe size).
using Sampler = std::function<std::vector<index_t>(index_t required, index_t size, Rng&)>;

Sampler uniform_sampler(const Universe& universe);

// A growing approximation of the k-complete neighborhood of one point.
struct NeighborhoodEstimate {
  index_t base = 0;
  Neighborhood current;               // k-complete within the support
  std::vector<index_t> support;       // all points seen so far, sorted
  std::vector<double> radius_history; // radius after each round
};

// Draws sample_count samples containing x, computes the per-sample k-complete
// neighborhoods and merges them. Throws InsufficientPoints when a sample is
// smaller than k.
NeighborhoodEstimate estimate_once(const Universe& universe, const Sampler& sampler, Rng& rng,
                                   index_t x, index_t k, index_t sample_count,
                                   index_t sample_size);

// One round of the expansion strategy: fresh samples around every current
// member, merged into the support. The radius never increases.
NeighborhoodEstimate refine_neighbor_expansion(const Universe& universe, const Sampler& sampler,
                                               Rng& rng, NeighborhoodEstimate estimate, index_t k,
                                               index_t sample_size);

// Adds extra samples containing the base and re-merges.
NeighborhoodEstimate refine_accumulate(const Universe& universe, const Sampler& sampler, Rng& rng,
                                       NeighborhoodEstimate estimate, index_t k,
                                       index_t extra_samples, index_t sample_size);

// Clusters the union of the given samples: per-point k-complete
// neighborhoods, rays, and the resulting dendrogram, cross-checked against
// the patched global metric.
struct SampledClustering {
  std::vector<index_t> points;  // sorted union of the samples (universe ids)
  EpSpace space;                // materialized sub-space on `points`
  NeighborhoodSystem system;
  FilteredGraph rays;
  MergeTree tree;
  ExcisionReport excision;
};

SampledClustering cluster_sampled(const Universe& universe,
                                  std::span<const std::vector<index_t>> samples, index_t k);

// Synthetic universes with exact distance callbacks.
struct SyntheticSpec {
  std::string kind;                // "grid" | "blobs" | "planted"
  std::vector<index_t> dims;       // grid: lattice extents
  index_t size = 0;                // blobs/planted: total points
  index_t clusters = 2;            // blobs/planted: cluster count
  double spread = 0.5;             // blobs: within-cluster stddev
  double separation = 10.0;        // blobs/planted: center spacing
  std::uint64_t seed = 1;
};

Universe make_universe(const SyntheticSpec& spec);

// Exact k-complete neighborhood by full scan; ground truth for recall.
Neighborhood true_k_complete(const Universe& universe, index_t x, index_t k);

double recall(const Neighborhood& estimate, const Neighborhood& truth);

}  // namespace epc
