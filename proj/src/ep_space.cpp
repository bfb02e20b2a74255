#include "epc/ep_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace epc {

EpSpace EpSpace::from_rows(const std::vector<std::vector<double>>& rows) {
  const index_t n = rows.size();
  for (const auto& row : rows) {
    if (row.size() != n) throw ParseError("distance matrix is not square");
  }
  EpSpace s(n);
  for (index_t i = 0; i < n; ++i) {
    for (index_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (std::isnan(v) || v < 0.0) {
        throw std::domain_error("distance entries must lie in [0, inf]");
      }
      s.dist_[i * n + j] = v;
    }
  }
  return s;
}

std::string AxiomViolation::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::SelfDistance:
      out << "d(" << i << "," << i << ") = " << lhs << " != 0";
      break;
    case Kind::Symmetry:
      out << "d(" << i << "," << j << ") = " << lhs << " != d(" << j << "," << i << ") = " << rhs;
      break;
    case Kind::Triangle:
      out << "d(" << i << "," << k << ") = " << lhs << " > d(" << i << "," << j << ") + d(" << j
          << "," << k << ") = " << rhs;
      break;
  }
  return out.str();
}

std::optional<AxiomViolation> find_violation(const EpSpace& space) {
  const index_t n = space.size();
  for (index_t i = 0; i < n; ++i) {
    if (!approx_eq(space.d(i, i), 0.0)) {
      return AxiomViolation{AxiomViolation::Kind::SelfDistance, i, i, i, space.d(i, i), 0.0};
    }
  }
  for (index_t i = 0; i < n; ++i) {
    for (index_t j = i + 1; j < n; ++j) {
      if (!approx_eq(space.d(i, j), space.d(j, i))) {
        return AxiomViolation{AxiomViolation::Kind::Symmetry, i, j, j, space.d(i, j),
                              space.d(j, i)};
      }
    }
  }
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = 0; i < n; ++i) {
      for (index_t k = 0; k < n; ++k) {
        const double lhs = space.d(i, k);
        const double rhs = space.d(i, j) + space.d(j, k);
        if (lhs > rhs + kEps) {
          return AxiomViolation{AxiomViolation::Kind::Triangle, i, j, k, lhs, rhs};
        }
      }
    }
  }
  return std::nullopt;
}

EpSpace validated(const std::vector<std::vector<double>>& rows) {
  EpSpace s = EpSpace::from_rows(rows);
  if (auto v = find_violation(s)) {
    throw ParseError("not an ep-metric space: " + v->to_string());
  }
  return s;
}

Surjection Surjection::identity(index_t n) {
  Surjection p;
  p.source_size = n;
  p.target_size = n;
  p.map.resize(n);
  std::iota(p.map.begin(), p.map.end(), index_t{0});
  return p;
}

Surjection Surjection::validated(index_t target_size, std::vector<index_t> map) {
  std::vector<bool> hit(target_size, false);
  for (index_t v : map) {
    if (v >= target_size) throw std::domain_error("surjection value out of range");
    hit[v] = true;
  }
  for (index_t z = 0; z < target_size; ++z) {
    if (!hit[z]) throw std::domain_error("map misses a target index; not surjective");
  }
  Surjection p;
  p.source_size = map.size();
  p.target_size = target_size;
  p.map = std::move(map);
  return p;
}

EpSpace coproduct(std::span<const EpSpace> spaces) {
  if (spaces.empty()) throw std::invalid_argument("coproduct of an empty list");
  index_t total = 0;
  for (const auto& s : spaces) total += s.size();
  EpSpace out(total);
  index_t base = 0;
  for (const auto& s : spaces) {
    for (index_t i = 0; i < s.size(); ++i) {
      for (index_t j = i + 1; j < s.size(); ++j) {
        out.set(base + i, base + j, s.d(i, j));
      }
    }
    base += s.size();
  }
  return out;
}

EpSpace coproduct(const EpSpace& a, const EpSpace& b) {
  const EpSpace parts[2] = {a, b};
  return coproduct(std::span<const EpSpace>(parts, 2));
}

namespace {

// Dense Dijkstra over the auxiliary graph: all pairs keep their distance
// d(u,v), and points in the same fibre of p are additionally joined at cost 0.
std::vector<double> quotient_distances_from(const EpSpace& space, const Surjection& p,
                                            index_t source) {
  const index_t n = space.size();
  std::vector<double> dist(n, kInf);
  std::vector<bool> done(n, false);
  dist[source] = 0.0;
  for (index_t round = 0; round < n; ++round) {
    index_t u = n;
    double best = kInf;
    for (index_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] < best) {
        best = dist[v];
        u = v;
      }
    }
    if (u == n) break;  // only unreachable points remain
    done[u] = true;
    for (index_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = p.map[u] == p.map[v] ? 0.0 : space.d(u, v);
      if (!is_finite_dist(w)) continue;
      if (dist[u] + w < dist[v]) dist[v] = dist[u] + w;
    }
  }
  return dist;
}

}  // namespace

EpSpace quotient(const EpSpace& space, const Surjection& p) {
  if (p.source_size != space.size()) {
    throw std::domain_error("surjection source size does not match the space");
  }
  const index_t n = space.size();
  const index_t m = p.target_size;

  if (m == n) {
    // Bijective case: a pure relabeling. The triangle inequality already
    // rules out shorter paths, so skip the searches (and their rounding).
    EpSpace out(n);
    for (index_t i = 0; i < n; ++i) {
      for (index_t j = i + 1; j < n; ++j) out.set(p.map[i], p.map[j], space.d(i, j));
    }
    return out;
  }

  // Smallest-index representative per fibre; every representative of a fibre
  // sees the same distances because fibre members are joined at cost 0.
  std::vector<index_t> rep(m, n);
  for (index_t u = 0; u < n; ++u) {
    if (rep[p.map[u]] == n) rep[p.map[u]] = u;
  }

  EpSpace out(m);
  for (index_t z = 0; z < m; ++z) {
    const std::vector<double> dist = quotient_distances_from(space, p, rep[z]);
    for (index_t w = 0; w < m; ++w) {
      if (w == z) continue;
      double best = kInf;
      for (index_t u = 0; u < n; ++u) {
        if (p.map[u] == w) best = std::min(best, dist[u]);
      }
      out.set(z, w, std::min(out.d(z, w), best));
    }
  }
  return out;
}

EpSpace wedge(const EpSpace& a, const EpSpace& b, const Pairing& identified) {
  const index_t na = a.size();
  const index_t nb = b.size();
  std::vector<index_t> b_to_target(nb, nb);
  std::vector<bool> a_seen(na, false);
  for (const auto& [ia, ib] : identified) {
    if (ia >= na || ib >= nb) throw std::domain_error("pairing references a missing point");
    if (a_seen[ia] || b_to_target[ib] != nb) {
      throw std::domain_error("pairing is not injective");
    }
    a_seen[ia] = true;
    b_to_target[ib] = ia;
  }

  index_t next = na;
  std::vector<index_t> map(na + nb);
  for (index_t i = 0; i < na; ++i) map[i] = i;
  for (index_t j = 0; j < nb; ++j) {
    map[na + j] = b_to_target[j] != nb ? b_to_target[j] : next++;
  }
  return quotient(coproduct(a, b), Surjection::validated(next, std::move(map)));
}

EpSpace wedge_identity(const EpSpace& a, const EpSpace& b) {
  if (a.size() != b.size()) {
    throw std::domain_error("identity wedge requires equal point counts");
  }
  Pairing pairing;
  pairing.reserve(a.size());
  for (index_t i = 0; i < a.size(); ++i) pairing.emplace_back(i, i);
  return wedge(a, b, pairing);
}

}  // namespace epc
