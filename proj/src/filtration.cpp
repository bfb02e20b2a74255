#include "epc/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace epc {

namespace {

// Plain union-find with the least index of each class as representative.
class UnionFind {
 public:
  explicit UnionFind(index_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), index_t{0});
  }

  index_t find(index_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(index_t a, index_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);  // smaller index becomes the root
    parent_[a] = b;
  }

  Partition partition() {
    Partition p;
    p.rep.resize(parent_.size());
    for (index_t v = 0; v < parent_.size(); ++v) {
      p.rep[v] = find(v);
      if (p.rep[v] == v) ++p.count;
    }
    return p;
  }

 private:
  std::vector<index_t> parent_;
};

bool edge_order(const FilteredEdge& a, const FilteredEdge& b) {
  if (a.w != b.w) return a.w < b.w;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

}  // namespace

FilteredGraph FilteredGraph::from_edges(index_t vertex_count, std::vector<FilteredEdge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw std::invalid_argument("self-loop in filtered graph");
    if (e.v >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
    if (!(e.w >= 0.0) || !is_finite_dist(e.w)) {
      throw std::invalid_argument("edge weights must be finite and nonnegative");
    }
  }
  // Deduplicate keeping the minimum weight per pair.
  std::sort(edges.begin(), edges.end(), [](const FilteredEdge& a, const FilteredEdge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  });
  std::vector<FilteredEdge> dedup;
  for (const auto& e : edges) {
    if (!dedup.empty() && dedup.back().u == e.u && dedup.back().v == e.v) continue;
    dedup.push_back(e);
  }
  std::sort(dedup.begin(), dedup.end(), edge_order);
  FilteredGraph g(vertex_count);
  g.edges_ = std::move(dedup);
  return g;
}

std::span<const FilteredEdge> FilteredGraph::at_scale(double s) const {
  const auto end = std::upper_bound(edges_.begin(), edges_.end(), s,
                                    [](double lhs, const FilteredEdge& e) { return lhs + kEps < e.w; });
  return {edges_.data(), static_cast<std::size_t>(end - edges_.begin())};
}

Partition pi0(const FilteredGraph& graph, double s) {
  UnionFind uf(graph.vertex_count());
  for (const auto& e : graph.at_scale(s)) uf.unite(e.u, e.v);
  return uf.partition();
}

FilteredComplex::FilteredComplex(index_t vertex_count, std::vector<Simplex> simplices)
    : n_(vertex_count), simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end(), [](const Simplex& a, const Simplex& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.vertices < b.vertices;
  });
}

FilteredGraph FilteredComplex::one_skeleton() const {
  std::vector<FilteredEdge> edges;
  for (const auto& s : simplices_) {
    if (s.dim() == 1) edges.push_back({s.vertices[0], s.vertices[1], s.birth});
  }
  return FilteredGraph::from_edges(n_, std::move(edges));
}

std::size_t FilteredComplex::count_at_scale(double s, index_t dim) const {
  std::size_t c = 0;
  for (const auto& sx : simplices_) {
    if (sx.dim() == dim && approx_le(sx.birth, s)) ++c;
  }
  return c;
}

FilteredGraph rips_graph(const EpSpace& space) {
  std::vector<FilteredEdge> edges;
  for (index_t i = 0; i < space.size(); ++i) {
    for (index_t j = i + 1; j < space.size(); ++j) {
      if (is_finite_dist(space.d(i, j))) edges.push_back({i, j, space.d(i, j)});
    }
  }
  return FilteredGraph::from_edges(space.size(), std::move(edges));
}

namespace {

// Extends `current` by vertices beyond its last entry, keeping the running
// diameter finite; emits every subset of size <= max_size.
void grow_finite_subsets(const EpSpace& space, std::span<const index_t> pool, index_t pool_from,
                         std::vector<index_t>& current, double diam, index_t max_size,
                         std::size_t size_cap, std::vector<Simplex>& out) {
  if (!current.empty()) {
    if (out.size() >= size_cap) {
      throw EnumerationLimit("simplex cap of " + std::to_string(size_cap) + " exceeded");
    }
    out.push_back({current, diam});
  }
  if (current.size() == max_size) return;
  for (index_t p = pool_from; p < pool.size(); ++p) {
    const index_t cand = pool[p];
    double grown = diam;
    bool finite = true;
    for (index_t v : current) {
      const double d = space.d(v, cand);
      if (!is_finite_dist(d)) {
        finite = false;
        break;
      }
      grown = std::max(grown, d);
    }
    if (!finite) continue;
    current.push_back(cand);
    grow_finite_subsets(space, pool, p + 1, current, grown, max_size, size_cap, out);
    current.pop_back();
  }
}

}  // namespace

FilteredComplex rips_complex(const EpSpace& space, index_t dim_cap, std::size_t size_cap) {
  if (dim_cap < 1) throw ConfigError("dimension cap must be at least 1");
  std::vector<index_t> all(space.size());
  std::iota(all.begin(), all.end(), index_t{0});
  std::vector<Simplex> simplices;
  std::vector<index_t> current;
  grow_finite_subsets(space, all, 0, current, 0.0, dim_cap + 1, size_cap, simplices);
  return FilteredComplex(space.size(), std::move(simplices));
}

FilteredGraph ray_complex(const EpSpace& space, const NeighborhoodSystem& system) {
  std::vector<FilteredEdge> edges;
  for (const auto& nb : system.items) {
    for (index_t y : nb.members) {
      if (y == nb.base) continue;
      const index_t u = std::min(nb.base, y);
      const index_t v = std::max(nb.base, y);
      edges.push_back({u, v, space.d(nb.base, y)});
    }
  }
  return FilteredGraph::from_edges(space.size(), std::move(edges));
}

FilteredComplex neighborhood_complex(const EpSpace& space, const NeighborhoodSystem& system,
                                     index_t dim_cap, std::size_t size_cap) {
  if (dim_cap < 1) throw ConfigError("dimension cap must be at least 1");
  // Simplices of distinct neighborhoods coincide when their vertex sets do;
  // keep the minimum birth (they agree whenever the ambient metric is shared).
  std::map<std::vector<index_t>, double> births;
  std::vector<Simplex> scratch;
  for (const auto& nb : system.items) {
    scratch.clear();
    std::vector<index_t> current;
    grow_finite_subsets(space, nb.members, 0, current, 0.0, dim_cap + 1, size_cap, scratch);
    for (auto& sx : scratch) {
      auto [it, inserted] = births.try_emplace(std::move(sx.vertices), sx.birth);
      if (!inserted) it->second = std::min(it->second, sx.birth);
      if (births.size() > size_cap) {
        throw EnumerationLimit("simplex cap of " + std::to_string(size_cap) + " exceeded");
      }
    }
  }
  // Points outside every neighborhood's span still appear as vertices.
  for (index_t v = 0; v < space.size(); ++v) births.try_emplace({v}, 0.0);
  std::vector<Simplex> simplices;
  simplices.reserve(births.size());
  for (auto& [verts, birth] : births) simplices.push_back({verts, birth});
  return FilteredComplex(space.size(), std::move(simplices));
}

MergeTree merge_tree(const FilteredGraph& graph) {
  MergeTree tree;
  tree.vertex_count = graph.vertex_count();
  UnionFind uf(graph.vertex_count());
  const auto& edges = graph.edges();

  std::size_t i = 0;
  while (i < edges.size()) {
    const double value = edges[i].w;  // threshold group start
    std::size_t j = i;
    while (j < edges.size() && edges[j].w - value <= kEps) ++j;

    // Snapshot the old representative of every vertex touched by the group,
    // then apply the unions and report each cluster fusion once.
    std::map<index_t, std::set<index_t>> fused;  // new rep -> old reps
    bool any = false;
    for (std::size_t e = i; e < j; ++e) {
      const index_t ru = uf.find(edges[e].u);
      const index_t rv = uf.find(edges[e].v);
      if (ru == rv) continue;
      any = true;
      const index_t target = std::min(ru, rv);
      const index_t other = std::max(ru, rv);
      // Reparent bookkeeping: classes already recorded under `other` move
      // under `target`.
      auto moved = fused.extract(other);
      auto& bucket = fused[target];
      if (!moved.empty()) bucket.merge(moved.mapped());
      bucket.insert(ru);
      bucket.insert(rv);
      uf.unite(ru, rv);
    }
    if (any) {
      tree.thresholds.push_back(value);
      for (auto& [root, olds] : fused) {
        MergeEvent ev;
        ev.threshold = value;
        ev.rep = uf.find(root);
        ev.joined.assign(olds.begin(), olds.end());
        tree.merges.push_back(std::move(ev));
      }
      tree.components.push_back(uf.partition());
    }
    i = j;
  }
  return tree;
}

Partition MergeTree::at(double s) const {
  Partition discrete;
  discrete.rep.resize(vertex_count);
  std::iota(discrete.rep.begin(), discrete.rep.end(), index_t{0});
  discrete.count = vertex_count;

  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), s + kEps);
  if (it == thresholds.begin()) return discrete;
  return components[static_cast<std::size_t>(it - thresholds.begin()) - 1];
}

Pi0Comparison compare_pi0(const FilteredGraph& a, const FilteredGraph& b, double s) {
  if (a.vertex_count() != b.vertex_count()) {
    throw std::invalid_argument("pi0 comparison requires a common vertex set");
  }
  // a must be a subcomplex of b at this scale: each active edge of a is an
  // active edge of b (b's copy may be lighter).
  std::map<std::pair<index_t, index_t>, double> b_weight;
  for (const auto& e : b.edges()) b_weight[{e.u, e.v}] = e.w;
  for (const auto& e : a.at_scale(s)) {
    const auto it = b_weight.find({e.u, e.v});
    if (it == b_weight.end() || !approx_le(it->second, s)) {
      throw std::invalid_argument("first graph is not a subcomplex of the second at this scale");
    }
  }

  Pi0Comparison cmp;
  cmp.from = pi0(a, s);
  cmp.to = pi0(b, s);
  cmp.bijective = cmp.from.count == cmp.to.count;
  if (!cmp.bijective) {
    // Two a-classes share a b-class; report the first witnessing pair of
    // representatives.
    std::map<index_t, index_t> seen;  // b-rep -> first a-rep mapped to it
    for (index_t v = 0; v < cmp.from.rep.size(); ++v) {
      if (cmp.from.rep[v] != v) continue;  // walk a-representatives only
      const index_t image = cmp.to.rep[v];
      auto [it, inserted] = seen.try_emplace(image, v);
      if (!inserted) {
        cmp.merged_witness = {it->second, v};
        break;
      }
    }
  }
  return cmp;
}

NeighborhoodChain neighborhood_path(const EpSpace& space, const NeighborhoodSystem& system,
                                    index_t x, index_t y, std::optional<double> s) {
  // The scale-s restriction of a neighborhood keeps the base and the members
  // within distance s of it.
  auto restricted = [&](const Neighborhood& nb) {
    std::vector<index_t> kept;
    for (index_t m : nb.members) {
      if (m == nb.base || !s || approx_le(space.d(nb.base, m), *s)) kept.push_back(m);
    }
    return kept;
  };

  const index_t count = system.items.size();
  std::vector<std::vector<index_t>> sets(count);
  for (index_t i = 0; i < count; ++i) sets[i] = restricted(system.items[i]);

  auto intersects = [&](index_t a, index_t b) {
    const auto& A = sets[a];
    const auto& B = sets[b];
    index_t i = 0, j = 0;
    while (i < A.size() && j < B.size()) {
      if (A[i] == B[j]) return true;
      if (A[i] < B[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return false;
  };

  NeighborhoodChain result;
  if (x == y) {
    result.connected = true;
    for (index_t i = 0; i < count; ++i) {
      if (system.items[i].base == x) {
        result.chain = {{x, i}};
        break;
      }
    }
    return result;
  }

  // BFS over (point, chosen neighborhood) states.
  std::vector<index_t> prev(count, count);
  std::vector<bool> visited(count, false);
  std::queue<index_t> queue;
  for (index_t i = 0; i < count; ++i) {
    if (system.items[i].base == x) {
      visited[i] = true;
      prev[i] = i;
      queue.push(i);
    }
  }
  index_t found = count;
  while (!queue.empty() && found == count) {
    const index_t cur = queue.front();
    queue.pop();
    if (system.items[cur].base == y) {
      found = cur;
      break;
    }
    for (index_t nxt = 0; nxt < count; ++nxt) {
      if (visited[nxt] || !intersects(cur, nxt)) continue;
      visited[nxt] = true;
      prev[nxt] = cur;
      queue.push(nxt);
      if (system.items[nxt].base == y) {
        found = nxt;
        break;
      }
    }
  }
  if (found == count) return result;

  result.connected = true;
  std::vector<std::pair<index_t, index_t>> chain;
  for (index_t at = found;; at = prev[at]) {
    chain.emplace_back(system.items[at].base, at);
    if (prev[at] == at) break;
  }
  std::reverse(chain.begin(), chain.end());
  result.chain = std::move(chain);
  return result;
}

bool mapper_coequalizer_check(const EpSpace& space, const NeighborhoodSystem& system, double s) {
  const index_t count = system.items.size();

  // Local clusters: partition of each neighborhood by its edges at scale s.
  // Cells are keyed (neighborhood index, least member of the cell).
  struct LocalPi0 {
    std::vector<index_t> rep;  // per member position
  };
  std::vector<LocalPi0> locals(count);
  std::map<std::pair<index_t, index_t>, index_t> cell_id;
  auto member_pos = [&](const Neighborhood& nb, index_t point) {
    return static_cast<index_t>(
        std::lower_bound(nb.members.begin(), nb.members.end(), point) - nb.members.begin());
  };
  for (index_t i = 0; i < count; ++i) {
    const auto& nb = system.items[i];
    UnionFind uf(nb.members.size());
    for (index_t a = 0; a < nb.members.size(); ++a) {
      for (index_t b = a + 1; b < nb.members.size(); ++b) {
        if (approx_le(space.d(nb.members[a], nb.members[b]), s)) uf.unite(a, b);
      }
    }
    locals[i].rep.resize(nb.members.size());
    for (index_t m = 0; m < nb.members.size(); ++m) {
      locals[i].rep[m] = uf.find(m);
    }
    for (index_t m = 0; m < nb.members.size(); ++m) {
      if (locals[i].rep[m] == m) {
        cell_id.try_emplace({i, m}, cell_id.size());
      }
    }
  }

  // Glue: for each pair of neighborhoods, each cluster of their intersection
  // complex identifies the local cells containing it on both sides.
  UnionFind glue(cell_id.size());
  for (index_t i = 0; i < count; ++i) {
    for (index_t j = i + 1; j < count; ++j) {
      const auto& A = system.items[i];
      const auto& B = system.items[j];
      std::vector<index_t> common;
      std::set_intersection(A.members.begin(), A.members.end(), B.members.begin(),
                            B.members.end(), std::back_inserter(common));
      if (common.empty()) continue;
      UnionFind uf(common.size());
      for (index_t a = 0; a < common.size(); ++a) {
        for (index_t b = a + 1; b < common.size(); ++b) {
          if (approx_le(space.d(common[a], common[b]), s)) uf.unite(a, b);
        }
      }
      for (index_t a = 0; a < common.size(); ++a) {
        if (uf.find(a) != a) continue;  // one gluing per intersection cluster
        const index_t point = common[a];
        const index_t ca = cell_id.at({i, locals[i].rep[member_pos(A, point)]});
        const index_t cb = cell_id.at({j, locals[j].rep[member_pos(B, point)]});
        glue.unite(ca, cb);
      }
    }
  }
  index_t coequalizer_classes = 0;
  for (index_t c = 0; c < cell_id.size(); ++c) {
    if (glue.find(c) == c) ++coequalizer_classes;
  }

  // Direct side: pi0 of the neighborhood complex, whose 1-skeleton is the
  // set of pairs lying together in some neighborhood. Points covered only by
  // singleton neighborhoods contribute isolated cells on both sides.
  std::vector<FilteredEdge> edges;
  for (const auto& nb : system.items) {
    for (index_t a = 0; a < nb.members.size(); ++a) {
      for (index_t b = a + 1; b < nb.members.size(); ++b) {
        const double d = space.d(nb.members[a], nb.members[b]);
        if (is_finite_dist(d)) edges.push_back({nb.members[a], nb.members[b], d});
      }
    }
  }
  const Partition direct = pi0(FilteredGraph::from_edges(space.size(), std::move(edges)), s);

  // Vertices with no covering cell (impossible when the system covers the
  // space) would break the count comparison; systems are validated upstream.
  std::vector<bool> covered(space.size(), false);
  for (const auto& nb : system.items) {
    for (index_t m : nb.members) covered[m] = true;
  }
  index_t uncovered = 0;
  for (index_t v = 0; v < space.size(); ++v) {
    if (!covered[v]) ++uncovered;
  }
  return coequalizer_classes + uncovered == direct.count;
}

FilteredGraph k_bounded_rays(const EpSpace& space, double S) {
  std::vector<FilteredEdge> edges;
  for (index_t i = 0; i < space.size(); ++i) {
    for (index_t j = i + 1; j < space.size(); ++j) {
      const double d = space.d(i, j);
      if (is_finite_dist(d) && approx_le(d, S)) edges.push_back({i, j, d});
    }
  }
  return FilteredGraph::from_edges(space.size(), std::move(edges));
}

FilteredGraph k_bounded_skeleton(const EpSpace& space, index_t k, double S) {
  if (k < 1) throw ConfigError("bounded neighborhoods require k >= 1");
  std::vector<FilteredEdge> edges;
  for (index_t i = 0; i < space.size(); ++i) {
    for (index_t j = i + 1; j < space.size(); ++j) {
      const double d = space.d(i, j);
      if (!is_finite_dist(d)) continue;
      bool admissible = approx_le(d, S);  // witness base i (or j)
      if (!admissible && k >= 2) {
        for (index_t x = 0; x < space.size() && !admissible; ++x) {
          admissible = approx_le(space.d(x, i), S) && approx_le(space.d(x, j), S);
        }
      }
      if (admissible) edges.push_back({i, j, d});
    }
  }
  return FilteredGraph::from_edges(space.size(), std::move(edges));
}

StarComplexes star_complexes(const EpSpace& space, index_t x, index_t k, double S) {
  if (k < 1) throw ConfigError("bounded neighborhoods require k >= 1");
  StarComplexes star;
  star.points = ball(space, x, S);
  const index_t m = star.points.size();
  const index_t x_pos = static_cast<index_t>(
      std::lower_bound(star.points.begin(), star.points.end(), x) - star.points.begin());

  std::vector<FilteredEdge> rays;
  std::vector<FilteredEdge> skeleton;
  for (index_t a = 0; a < m; ++a) {
    for (index_t b = a + 1; b < m; ++b) {
      const double d = space.d(star.points[a], star.points[b]);
      if (!is_finite_dist(d)) continue;
      const bool touches_base = a == x_pos || b == x_pos;
      if (touches_base) rays.push_back({a, b, d});
      // {u,v} must fit in a bounded neighborhood of x: either one endpoint is
      // x itself, or the triple {x,u,v} needs k >= 2.
      if (touches_base || k >= 2) skeleton.push_back({a, b, d});
    }
  }
  star.rays = FilteredGraph::from_edges(m, std::move(rays));
  star.skeleton = FilteredGraph::from_edges(m, std::move(skeleton));
  return star;
}

FilteredGraph rips_graph_on(const EpSpace& space, std::span<const index_t> subset) {
  std::vector<FilteredEdge> edges;
  for (index_t a = 0; a < subset.size(); ++a) {
    for (index_t b = a + 1; b < subset.size(); ++b) {
      const double d = space.d(subset[a], subset[b]);
      if (is_finite_dist(d)) edges.push_back({a, b, d});
    }
  }
  return FilteredGraph::from_edges(subset.size(), std::move(edges));
}

}  // namespace epc
