#pragma once

#include <span>
#include <vector>

#include "epc/filtration.hpp"

namespace epc {

struct Ray {
  index_t source = 0;
  index_t target = 0;
  double weight = 0.0;  // strictly positive, finite
};

// Per-point weighted rays: the local input of the patching construction.
// Weights are strictly positive and finite; duplicate rays out of the same
// source keep the minimum weight.
class WeightedRaySystem {
 public:
  WeightedRaySystem() = default;
  explicit WeightedRaySystem(index_t n) : rays_(n) {}

  static WeightedRaySystem from_rays(index_t n, std::span<const Ray> rays);

  index_t size() const { return rays_.size(); }
  const std::vector<std::pair<index_t, double>>& rays_of(index_t x) const { return rays_[x]; }

  void add(index_t x, index_t y, double w);

  // Flattened view grouped by source, for serialization.
  std::vector<Ray> all_rays() const;

 private:
  std::vector<std::vector<std::pair<index_t, double>>> rays_;  // sorted by target
};

// The star metric around x: ray ends sit at their weight from x and at the
// sum of weights from each other; everything else is infinitely far.
EpSpace local_metric(const WeightedRaySystem& system, index_t x);

// The global metric patched from all local stars: shortest paths over the
// min-deduplicated symmetric ray multigraph. Unreachable pairs stay at inf.
EpSpace global_metric(const WeightedRaySystem& system);

// Same object computed through the generic colimit machinery (iterated
// amalgamation of the local metrics). Slow; used to cross-check
// global_metric.
EpSpace global_metric_via_wedges(const WeightedRaySystem& system);

// Symmetric graph of all rays, min-deduplicated.
FilteredGraph ray_graph(const WeightedRaySystem& system);

// pi0 of the amalgamated complex at scale s: union-find over the union of
// local 1-skeleta (rays plus two-ray star chords).
Partition amalgamated_complex_pi0(const WeightedRaySystem& system, double s);

// Per-scale verification that the amalgamated complex, the global metric and
// the ray graph all cluster identically.
struct ExcisionScaleResult {
  double scale = 0.0;
  bool complex_matches = false;  // pi0 of amalgamated complex == pi0 of global metric
  bool rays_match = false;    // pi0 of ray graph == pi0 of global metric
  // On failure, a vertex pair assigned differently by the two sides.
  std::optional<std::pair<index_t, index_t>> witness;
};

struct ExcisionReport {
  std::vector<ExcisionScaleResult> scales;
  bool all_ok = true;
};

ExcisionReport verify_excision(const WeightedRaySystem& system, std::span<const double> scales);

// Evenly spread scale samples covering the global metric's finite range,
// including the exact edge weights (count permitting).
std::vector<double> default_scales(const WeightedRaySystem& system, std::size_t count = 20);

}  // namespace epc
