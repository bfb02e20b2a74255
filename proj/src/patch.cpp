#include "epc/patch.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace epc {

void WeightedRaySystem::add(index_t x, index_t y, double w) {
  if (x >= rays_.size() || y >= rays_.size()) {
    throw std::invalid_argument("ray endpoint out of range");
  }
  if (y == x) throw std::invalid_argument("rays must join distinct points");
  if (!(w > 0.0) || !is_finite_dist(w)) {
    throw std::invalid_argument("ray weights must be positive and finite");
  }
  auto& list = rays_[x];
  auto it = std::lower_bound(list.begin(), list.end(), y,
                             [](const auto& p, index_t t) { return p.first < t; });
  if (it != list.end() && it->first == y) {
    it->second = std::min(it->second, w);
  } else {
    list.insert(it, {y, w});
  }
}

WeightedRaySystem WeightedRaySystem::from_rays(index_t n, std::span<const Ray> rays) {
  WeightedRaySystem sys(n);
  for (const auto& r : rays) sys.add(r.source, r.target, r.weight);
  return sys;
}

std::vector<Ray> WeightedRaySystem::all_rays() const {
  std::vector<Ray> out;
  for (index_t x = 0; x < rays_.size(); ++x) {
    for (const auto& [y, w] : rays_[x]) out.push_back({x, y, w});
  }
  return out;
}

EpSpace local_metric(const WeightedRaySystem& system, index_t x) {
  EpSpace out(system.size());
  const auto& star = system.rays_of(x);
  for (index_t a = 0; a < star.size(); ++a) {
    out.set(x, star[a].first, star[a].second);
    for (index_t b = a + 1; b < star.size(); ++b) {
      out.set(star[a].first, star[b].first, star[a].second + star[b].second);
    }
  }
  return out;
}

FilteredGraph ray_graph(const WeightedRaySystem& system) {
  std::vector<FilteredEdge> edges;
  for (index_t x = 0; x < system.size(); ++x) {
    for (const auto& [y, w] : system.rays_of(x)) {
      edges.push_back({std::min(x, y), std::max(x, y), w});
    }
  }
  return FilteredGraph::from_edges(system.size(), std::move(edges));
}

EpSpace global_metric(const WeightedRaySystem& system) {
  const index_t n = system.size();
  const FilteredGraph graph = ray_graph(system);
  std::vector<std::vector<std::pair<index_t, double>>> adj(n);
  for (const auto& e : graph.edges()) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }

  EpSpace out(n);
  std::vector<double> dist(n);
  using Item = std::pair<double, index_t>;
  for (index_t src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[src] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          heap.push({dist[v], v});
        }
      }
    }
    for (index_t v = 0; v < n; ++v) {
      if (v != src && is_finite_dist(dist[v])) out.set(src, v, dist[v]);
    }
  }
  return out;
}

EpSpace global_metric_via_wedges(const WeightedRaySystem& system) {
  if (system.size() == 0) return EpSpace(0);
  EpSpace acc = local_metric(system, 0);
  for (index_t x = 1; x < system.size(); ++x) {
    acc = wedge_identity(acc, local_metric(system, x));
  }
  return acc;
}

Partition amalgamated_complex_pi0(const WeightedRaySystem& system, double s) {
  std::vector<FilteredEdge> edges;
  for (index_t x = 0; x < system.size(); ++x) {
    const auto& star = system.rays_of(x);
    for (index_t a = 0; a < star.size(); ++a) {
      if (approx_le(star[a].second, s)) {
        edges.push_back({std::min(x, star[a].first), std::max(x, star[a].first),
                         star[a].second});
      }
      for (index_t b = a + 1; b < star.size(); ++b) {
        const double chord = star[a].second + star[b].second;
        if (approx_le(chord, s)) {
          edges.push_back({std::min(star[a].first, star[b].first),
                           std::max(star[a].first, star[b].first), chord});
        }
      }
    }
  }
  return pi0(FilteredGraph::from_edges(system.size(), std::move(edges)), s);
}

ExcisionReport verify_excision(const WeightedRaySystem& system, std::span<const double> scales) {
  ExcisionReport report;
  const EpSpace global = global_metric(system);
  const FilteredGraph global_graph = rips_graph(global);
  const FilteredGraph rays = ray_graph(system);

  auto first_disagreement = [](const Partition& a, const Partition& b)
      -> std::optional<std::pair<index_t, index_t>> {
    for (index_t v = 0; v < a.rep.size(); ++v) {
      if (a.rep[v] != b.rep[v]) return std::make_pair(std::min(a.rep[v], b.rep[v]), v);
    }
    return std::nullopt;
  };

  for (const double s : scales) {
    ExcisionScaleResult r;
    r.scale = s;
    const Partition metric_side = pi0(global_graph, s);
    const Partition complex_side = amalgamated_complex_pi0(system, s);
    const Partition ray_side = pi0(rays, s);
    r.complex_matches = complex_side == metric_side;
    r.rays_match = ray_side == metric_side;
    if (!r.complex_matches) {
      r.witness = first_disagreement(complex_side, metric_side);
    } else if (!r.rays_match) {
      r.witness = first_disagreement(ray_side, metric_side);
    }
    report.all_ok = report.all_ok && r.complex_matches && r.rays_match;
    report.scales.push_back(r);
  }
  return report;
}

std::vector<double> default_scales(const WeightedRaySystem& system, std::size_t count) {
  const EpSpace global = global_metric(system);
  std::set<double> values;
  double top = 0.0;
  for (index_t i = 0; i < global.size(); ++i) {
    for (index_t j = i + 1; j < global.size(); ++j) {
      if (is_finite_dist(global.d(i, j))) {
        values.insert(global.d(i, j));
        top = std::max(top, global.d(i, j));
      }
    }
  }
  std::vector<double> scales(values.begin(), values.end());
  if (scales.empty()) return {0.0};
  // Prefer the exact distance values; pad with midpoints, trim evenly.
  if (scales.size() < count) {
    std::vector<double> padded = scales;
    for (std::size_t i = 0; i + 1 < scales.size() && padded.size() < count; ++i) {
      padded.push_back(0.5 * (scales[i] + scales[i + 1]));
    }
    padded.push_back(top * 1.25);
    std::sort(padded.begin(), padded.end());
    return padded;
  }
  if (scales.size() > count) {
    std::vector<double> trimmed;
    const double step = static_cast<double>(scales.size() - 1) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      trimmed.push_back(scales[static_cast<std::size_t>(i * step + 0.5)]);
    }
    trimmed.erase(std::unique(trimmed.begin(), trimmed.end()), trimmed.end());
    return trimmed;
  }
  return scales;
}

}  // namespace epc
