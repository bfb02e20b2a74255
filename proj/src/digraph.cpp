#include "epc/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace epc {

namespace {

void check_weight(double w) {
  if (!(w > 0.0) || !is_finite_dist(w)) {
    throw std::invalid_argument("edge weights must be positive and finite");
  }
}

// Vertices within <= k hops of x along the supplied adjacency, x included.
std::vector<index_t> bfs_within(index_t n, index_t x, index_t k,
                                const std::vector<std::vector<index_t>>& adjacency) {
  std::vector<index_t> depth(n, n);
  depth[x] = 0;
  std::queue<index_t> queue;
  queue.push(x);
  std::vector<index_t> seen{x};
  while (!queue.empty()) {
    const index_t u = queue.front();
    queue.pop();
    if (depth[u] == k) continue;
    for (index_t v : adjacency[u]) {
      if (depth[v] != n) continue;
      depth[v] = depth[u] + 1;
      seen.push_back(v);
      queue.push(v);
    }
  }
  return seen;
}

double combine(PathWeight rule, double acc, double w) {
  return rule == PathWeight::MinEdge ? std::min(acc, w) : acc + w;
}

double start_value(PathWeight rule) { return rule == PathWeight::MinEdge ? kInf : 0.0; }

}  // namespace

WeightedDigraph::WeightedDigraph(index_t vertex_count, std::vector<DirectedEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)), out_(vertex_count), in_(vertex_count) {
  for (index_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.src >= n_ || edge.dst >= n_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    check_weight(edge.w);
    out_[edge.src].push_back(e);
    in_[edge.dst].push_back(e);
  }
}

std::vector<index_t> neighborhood_k(const WeightedDigraph& graph, index_t x, index_t k) {
  if (k < 1) throw ConfigError("graph neighborhoods require k >= 1");
  const index_t n = graph.vertex_count();
  std::vector<std::vector<index_t>> fwd(n), bwd(n);
  for (const auto& e : graph.edges()) {
    fwd[e.src].push_back(e.dst);
    bwd[e.dst].push_back(e.src);
  }
  // A path through x restricts to a path from x (or into x) of the same
  // length bound, so BFS both ways suffices.
  std::set<index_t> members;
  for (index_t v : bfs_within(n, x, k, fwd)) members.insert(v);
  for (index_t v : bfs_within(n, x, k, bwd)) members.insert(v);
  return {members.begin(), members.end()};
}

namespace {

// One DFS over all edge-distinct sequences out of `source` with length <= k,
// accumulating the summed path weight per end vertex. Every prefix is a path
// in its own right. The cap bounds the sequences explored per call, i.e. per
// (source, k) pair.
class DirectedPathSums {
 public:
  DirectedPathSums(const WeightedDigraph& graph, PathWeight rule, std::size_t cap, bool reversed)
      : graph_(graph),
        rule_(rule),
        cap_(cap),
        reversed_(reversed),
        used_(graph.edges().size(), false),
        totals_(graph.vertex_count(), 0.0) {}

  std::vector<double> run(index_t source, index_t k) {
    extend(source, start_value(rule_), 0, k);
    return std::move(totals_);
  }

 private:
  void extend(index_t at, double acc, index_t length, index_t k) {
    if (length == k) return;
    for (index_t e : reversed_ ? graph_.in_edges(at) : graph_.out_edges(at)) {
      if (used_[e]) continue;
      if (++paths_ > cap_) {
        throw EnumerationLimit("path enumeration cap of " + std::to_string(cap_) + " exceeded");
      }
      const auto& edge = graph_.edges()[e];
      const index_t next = reversed_ ? edge.src : edge.dst;
      const double value = combine(rule_, acc, edge.w);
      totals_[next] += value;
      used_[e] = true;
      extend(next, value, length + 1, k);
      used_[e] = false;
    }
  }

  const WeightedDigraph& graph_;
  PathWeight rule_;
  std::size_t cap_;
  bool reversed_;
  std::vector<bool> used_;
  std::vector<double> totals_;
  std::size_t paths_ = 0;
};

// exp(-sigma) underflows to 0 for sigma beyond ~745; the true distance is
// positive, so clamp at the smallest normal double.
double shannon_distance(double sigma) {
  return std::max(std::exp(-sigma), std::numeric_limits<double>::min());
}

}  // namespace

double weight_sum(const WeightedDigraph& graph, index_t x, index_t y, index_t k, PathWeight rule,
                  std::size_t cap) {
  const std::vector<double> from_x = DirectedPathSums(graph, rule, cap, false).run(x, k);
  const std::vector<double> into_x = DirectedPathSums(graph, rule, cap, true).run(x, k);
  return from_x[y] + into_x[y];
}

std::vector<std::pair<index_t, double>> ray_weights(const WeightedDigraph& graph, index_t x,
                                                    index_t k, PathWeight rule, std::size_t cap) {
  const std::vector<double> from_x = DirectedPathSums(graph, rule, cap, false).run(x, k);
  const std::vector<double> into_x = DirectedPathSums(graph, rule, cap, true).run(x, k);
  std::vector<std::pair<index_t, double>> out;
  for (index_t y : neighborhood_k(graph, x, k)) {
    if (y == x) continue;
    const double sigma = from_x[y] + into_x[y];
    if (sigma > 0.0) out.emplace_back(y, shannon_distance(sigma));
  }
  return out;
}

WeightedRaySystem digraph_ray_system(const WeightedDigraph& graph, index_t k, PathWeight rule,
                                     std::size_t cap) {
  WeightedRaySystem sys(graph.vertex_count());
  for (index_t x = 0; x < graph.vertex_count(); ++x) {
    for (const auto& [y, d] : ray_weights(graph, x, k, rule, cap)) sys.add(x, y, d);
  }
  return sys;
}

index_t TransferGraph::vertex_of(const std::string& account, std::int64_t ts) const {
  const std::pair<std::string, std::int64_t> key{account, ts};
  const auto it = std::lower_bound(vertex_labels.begin(), vertex_labels.end(), key);
  if (it == vertex_labels.end() || *it != key) {
    throw std::invalid_argument("no such (account, timestamp) vertex");
  }
  return static_cast<index_t>(it - vertex_labels.begin());
}

TransferGraph transfer_graph(std::span<const TransferRecord> records) {
  for (const auto& r : records) {
    if (r.src_account == r.dst_account) {
      throw ParseError("transfer between identical accounts: " + r.src_account);
    }
    if (!(r.bytes > 0.0)) throw ParseError("transfer byte count must be positive");
    if (r.src_ts >= r.dst_ts) {
      throw ParseError("transfer timestamps must satisfy source < destination");
    }
  }

  TransferGraph tg;
  std::set<std::pair<std::string, std::int64_t>> vertex_set;
  std::map<std::string, std::set<std::int64_t>> stamps;
  for (const auto& r : records) {
    vertex_set.insert({r.src_account, r.src_ts});
    vertex_set.insert({r.dst_account, r.dst_ts});
    stamps[r.src_account].insert(r.src_ts);
    stamps[r.dst_account].insert(r.dst_ts);
  }
  tg.vertex_labels.assign(vertex_set.begin(), vertex_set.end());
  for (const auto& [account, times] : stamps) {
    tg.account_timestamps.emplace_back(account, std::vector<std::int64_t>(times.begin(), times.end()));
  }

  std::vector<DirectedEdge> edges;
  for (const auto& r : records) {
    const auto& src_times = stamps.at(r.src_account);
    const auto& dst_times = stamps.at(r.dst_account);
    for (std::int64_t s : src_times) {
      if (s > r.src_ts) break;
      for (auto t = dst_times.lower_bound(r.dst_ts); t != dst_times.end(); ++t) {
        edges.push_back({tg.vertex_of(r.src_account, s), tg.vertex_of(r.dst_account, *t), r.bytes});
      }
    }
  }
  tg.graph = WeightedDigraph(tg.vertex_labels.size(), std::move(edges));
  return tg;
}

WeightedUndirectedGraph::WeightedUndirectedGraph(index_t vertex_count,
                                                 std::vector<UndirectedEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)), incident_(vertex_count) {
  for (index_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u >= n_ || edge.v >= n_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (edge.u == edge.v) throw std::invalid_argument("self-loops are not allowed");
    check_weight(edge.w);
    incident_[edge.u].push_back(e);
    incident_[edge.v].push_back(e);
  }
}

std::vector<index_t> neighborhood_k(const WeightedUndirectedGraph& graph, index_t x, index_t k) {
  if (k < 1) throw ConfigError("graph neighborhoods require k >= 1");
  const index_t n = graph.vertex_count();
  std::vector<std::vector<index_t>> adj(n);
  for (const auto& e : graph.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<index_t> members = bfs_within(n, x, k, adj);
  std::sort(members.begin(), members.end());
  return members;
}

namespace {

class UndirectedPathSums {
 public:
  UndirectedPathSums(const WeightedUndirectedGraph& graph, PathWeight rule, std::size_t cap)
      : graph_(graph),
        rule_(rule),
        cap_(cap),
        used_(graph.edges().size(), false),
        totals_(graph.vertex_count(), 0.0) {}

  std::vector<double> run(index_t source, index_t k) {
    extend(source, start_value(rule_), 0, k);
    return std::move(totals_);
  }

 private:
  void extend(index_t at, double acc, index_t length, index_t k) {
    if (length == k) return;
    for (index_t e : graph_.incident(at)) {
      if (used_[e]) continue;
      if (++paths_ > cap_) {
        throw EnumerationLimit("path enumeration cap of " + std::to_string(cap_) + " exceeded");
      }
      const auto& edge = graph_.edges()[e];
      const index_t next = edge.u == at ? edge.v : edge.u;
      const double value = combine(rule_, acc, edge.w);
      totals_[next] += value;
      used_[e] = true;
      extend(next, value, length + 1, k);
      used_[e] = false;
    }
  }

  const WeightedUndirectedGraph& graph_;
  PathWeight rule_;
  std::size_t cap_;
  std::vector<bool> used_;
  std::vector<double> totals_;
  std::size_t paths_ = 0;
};

}  // namespace

double weight_sum(const WeightedUndirectedGraph& graph, index_t x, index_t y, index_t k,
                  PathWeight rule, std::size_t cap) {
  return UndirectedPathSums(graph, rule, cap).run(x, k)[y];
}

std::vector<std::pair<index_t, double>> undirected_ray_weights(
    const WeightedUndirectedGraph& graph, index_t x, index_t k, PathWeight rule,
    std::size_t cap) {
  const std::vector<double> sums = UndirectedPathSums(graph, rule, cap).run(x, k);
  std::vector<std::pair<index_t, double>> out;
  for (index_t y : neighborhood_k(graph, x, k)) {
    if (y == x) continue;
    if (sums[y] > 0.0) out.emplace_back(y, shannon_distance(sums[y]));
  }
  return out;
}

WeightedRaySystem undirected_ray_system(const WeightedUndirectedGraph& graph, index_t k,
                                        PathWeight rule, std::size_t cap) {
  WeightedRaySystem sys(graph.vertex_count());
  for (index_t x = 0; x < graph.vertex_count(); ++x) {
    for (const auto& [y, d] : undirected_ray_weights(graph, x, k, rule, cap)) sys.add(x, y, d);
  }
  return sys;
}

}  // namespace epc
