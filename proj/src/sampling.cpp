#include "epc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace epc {

Sampler uniform_sampler(const Universe& universe) {
  const index_t n = universe.size;
  return [n](index_t required, index_t size, Rng& rng) {
    const index_t want = std::min(std::max<index_t>(size, 1), n);
    std::vector<index_t> picked = sample_without_replacement(rng, n, want);
    if (!std::binary_search(picked.begin(), picked.end(), required)) {
      // Swap a uniformly chosen victim for the required point.
      picked.erase(picked.begin() + static_cast<std::ptrdiff_t>(bounded(rng, picked.size())));
      picked.insert(std::lower_bound(picked.begin(), picked.end(), required), required);
    }
    return picked;
  };
}

namespace {

Neighborhood k_complete_in_universe(const Universe& universe, index_t x, index_t k,
                                    std::span<const index_t> candidates) {
  return k_complete_over([&](index_t y) { return universe.distance(x, y); }, x, k, candidates);
}

std::vector<index_t> sorted_union(std::span<const index_t> a, std::span<const index_t> b) {
  std::vector<index_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

NeighborhoodEstimate estimate_once(const Universe& universe, const Sampler& sampler, Rng& rng,
                                   index_t x, index_t k, index_t sample_count,
                                   index_t sample_size) {
  if (sample_count < 1) throw ConfigError("at least one sample required");
  if (sample_size > universe.tractable_bound) {
    throw ConfigError("sample size exceeds the tractable bound");
  }
  NeighborhoodEstimate est;
  est.base = x;
  std::vector<index_t> pool;  // union of the per-sample neighborhoods
  for (index_t i = 0; i < sample_count; ++i) {
    const std::vector<index_t> sample = sampler(x, sample_size, rng);
    if (sample.size() < k) throw InsufficientPoints("sample smaller than k");
    const Neighborhood local = k_complete_in_universe(universe, x, k, sample);
    pool = sorted_union(pool, local.members);
    est.support = sorted_union(est.support, sample);
  }
  est.current = k_complete_in_universe(universe, x, k, pool);
  est.radius_history.push_back(est.current.radius);
  return est;
}

NeighborhoodEstimate refine_neighbor_expansion(const Universe& universe, const Sampler& sampler,
                                               Rng& rng, NeighborhoodEstimate estimate, index_t k,
                                               index_t sample_size) {
  // New support = old support plus the members' own neighborhoods; the
  // support only grows, so the recomputed radius cannot increase.
  for (index_t y : estimate.current.members) {
    const std::vector<index_t> sample = sampler(y, sample_size, rng);
    if (sample.size() < k) throw InsufficientPoints("sample smaller than k");
    const Neighborhood around_y = k_complete_in_universe(universe, y, k, sample);
    estimate.support = sorted_union(estimate.support, around_y.members);
  }
  estimate.current = k_complete_in_universe(universe, estimate.base, k, estimate.support);
  estimate.radius_history.push_back(estimate.current.radius);
  return estimate;
}

NeighborhoodEstimate refine_accumulate(const Universe& universe, const Sampler& sampler, Rng& rng,
                                       NeighborhoodEstimate estimate, index_t k,
                                       index_t extra_samples, index_t sample_size) {
  std::vector<index_t> pool = estimate.current.members;
  for (index_t i = 0; i < extra_samples; ++i) {
    const std::vector<index_t> sample = sampler(estimate.base, sample_size, rng);
    if (sample.size() < k) throw InsufficientPoints("sample smaller than k");
    const Neighborhood local = k_complete_in_universe(universe, estimate.base, k, sample);
    pool = sorted_union(pool, local.members);
    estimate.support = sorted_union(estimate.support, sample);
  }
  estimate.current = k_complete_in_universe(universe, estimate.base, k, pool);
  estimate.radius_history.push_back(estimate.current.radius);
  return estimate;
}

SampledClustering cluster_sampled(const Universe& universe,
                                  std::span<const std::vector<index_t>> samples, index_t k) {
  SampledClustering out;
  for (const auto& sample : samples) out.points = sorted_union(out.points, sample);
  const index_t m = out.points.size();

  out.space = EpSpace(m);
  for (index_t a = 0; a < m; ++a) {
    for (index_t b = a + 1; b < m; ++b) {
      out.space.set(a, b, universe.distance(out.points[a], out.points[b]));
    }
  }

  out.system = k_complete_system(out.space, k);
  out.rays = ray_complex(out.space, out.system);

  // The same rays as a weighted system, for the patched-metric cross-check.
  WeightedRaySystem ray_system(m);
  for (const auto& nb : out.system.items) {
    for (index_t y : nb.members) {
      if (y != nb.base && out.space.d(nb.base, y) > 0.0) {
        ray_system.add(nb.base, y, out.space.d(nb.base, y));
      }
    }
  }
  out.tree = merge_tree(out.rays);
  out.excision = verify_excision(ray_system, default_scales(ray_system));
  return out;
}

namespace {

struct PointCloud {
  std::vector<std::vector<double>> coords;

  double dist(index_t a, index_t b) const {
    double sq = 0.0;
    for (index_t d = 0; d < coords[a].size(); ++d) {
      const double delta = coords[a][d] - coords[b][d];
      sq += delta * delta;
    }
    return std::sqrt(sq);
  }
};

}  // namespace

Universe make_universe(const SyntheticSpec& spec) {
  auto cloud = std::make_shared<PointCloud>();
  Rng rng(spec.seed);

  if (spec.kind == "grid") {
    if (spec.dims.empty()) throw ConfigError("grid universes need dims");
    std::vector<index_t> at(spec.dims.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<double> p(at.size());
      for (index_t d = 0; d < at.size(); ++d) p[d] = static_cast<double>(at[d]);
      cloud->coords.push_back(std::move(p));
      done = true;
      for (index_t d = 0; d < at.size(); ++d) {
        if (++at[d] < spec.dims[d]) {
          done = false;
          break;
        }
        at[d] = 0;
      }
    }
  } else if (spec.kind == "blobs" || spec.kind == "planted") {
    if (spec.size == 0 || spec.clusters == 0) {
      throw ConfigError("blob universes need a size and cluster count");
    }
    const index_t dims = 3;
    std::vector<std::vector<double>> centers;
    for (index_t c = 0; c < spec.clusters; ++c) {
      std::vector<double> center(dims, 0.0);
      center[0] = static_cast<double>(c) * spec.separation;
      centers.push_back(std::move(center));
    }
    // "blobs" interleaves cluster membership; "planted" keeps each cluster
    // a contiguous id block, which makes ground-truth bookkeeping easy.
    for (index_t i = 0; i < spec.size; ++i) {
      const index_t c = spec.kind == "planted" ? std::min(spec.clusters - 1, i * spec.clusters / spec.size)
                                               : i % spec.clusters;
      std::vector<double> p(dims);
      for (index_t d = 0; d < dims; ++d) p[d] = centers[c][d] + spec.spread * gaussian(rng);
      cloud->coords.push_back(std::move(p));
    }
  } else {
    throw ConfigError("unknown synthetic universe kind: " + spec.kind);
  }

  Universe u;
  u.size = cloud->coords.size();
  u.distance = [cloud](index_t a, index_t b) { return cloud->dist(a, b); };
  u.tractable_bound = 1024;
  return u;
}

Neighborhood true_k_complete(const Universe& universe, index_t x, index_t k) {
  std::vector<index_t> all(universe.size);
  for (index_t i = 0; i < universe.size; ++i) all[i] = i;
  return k_complete_over([&](index_t y) { return universe.distance(x, y); }, x, k, all);
}

double recall(const Neighborhood& estimate, const Neighborhood& truth) {
  if (truth.members.empty()) return 1.0;
  index_t hit = 0;
  for (index_t m : truth.members) {
    if (std::binary_search(estimate.members.begin(), estimate.members.end(), m)) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(truth.members.size());
}

}  // namespace epc
