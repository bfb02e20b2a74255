#include "epc/neighborhoods.hpp"

#include <algorithm>
#include <set>

namespace epc {

bool NeighborhoodSystem::covers(index_t n) const {
  std::vector<bool> seen(n, false);
  for (const auto& nb : items) seen[nb.base] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<index_t> ball(const EpSpace& space, index_t x, double s) {
  std::vector<index_t> out;
  for (index_t y = 0; y < space.size(); ++y) {
    if (approx_le(space.d(x, y), s)) out.push_back(y);
  }
  return out;
}

namespace {

double radius_of(const EpSpace& space, index_t x, const std::vector<index_t>& members) {
  double r = 0.0;
  for (index_t y : members) r = std::max(r, space.d(x, y));
  return r;
}

Neighborhood make_neighborhood(const EpSpace& space, index_t x, std::vector<index_t> members) {
  std::sort(members.begin(), members.end());
  Neighborhood nb;
  nb.base = x;
  nb.radius = radius_of(space, x, members);
  nb.members = std::move(members);
  return nb;
}

}  // namespace

bool is_complete(const EpSpace& space, const Neighborhood& nbhd) {
  return nbhd.members == ball(space, nbhd.base, nbhd.radius);
}

bool is_nearest_neighbor_set(const EpSpace& space, const Neighborhood& nbhd) {
  index_t m = 0;  // members is sorted, so one sweep finds the complement
  for (index_t z = 0; z < space.size(); ++z) {
    if (m < nbhd.members.size() && nbhd.members[m] == z) {
      ++m;
      continue;
    }
    if (space.d(nbhd.base, z) < nbhd.radius - kEps) return false;
  }
  return true;
}

std::vector<DistanceFibre> distance_fibres(const EpSpace& space, index_t x,
                                           std::span<const index_t> candidates) {
  std::vector<std::pair<double, index_t>> finite;
  auto consider = [&](index_t y) {
    const double d = space.d(x, y);
    if (is_finite_dist(d)) finite.emplace_back(d, y);
  };
  if (candidates.empty()) {
    for (index_t y = 0; y < space.size(); ++y) consider(y);
  } else {
    for (index_t y : candidates) consider(y);
  }
  std::sort(finite.begin(), finite.end());

  std::vector<DistanceFibre> fibres;
  for (const auto& [d, y] : finite) {
    if (fibres.empty() || d - fibres.back().value > kEps) {
      fibres.push_back({d, {}});
    }
    fibres.back().points.push_back(y);
  }
  return fibres;
}

Neighborhood k_complete_over(const std::function<double(index_t)>& dist_from_x, index_t x,
                             index_t k, std::span<const index_t> candidates) {
  if (k < 1) throw ConfigError("k-complete neighborhoods require k >= 1");
  std::vector<std::pair<double, index_t>> finite;
  for (index_t y : candidates) {
    const double d = dist_from_x(y);
    if (is_finite_dist(d)) finite.emplace_back(d, y);
  }
  if (finite.size() < k) {
    throw InsufficientPoints("fewer than k points at finite distance from the base");
  }
  std::sort(finite.begin(), finite.end());

  // Walk whole fibres (values grouped within eps) until at least k members.
  std::vector<index_t> members;
  double radius = 0.0;
  index_t i = 0;
  while (i < finite.size() && (members.size() < k || approx_le(finite[i].first, radius))) {
    const double value = finite[i].first;
    while (i < finite.size() && finite[i].first - value <= kEps) {
      members.push_back(finite[i].second);
      radius = std::max(radius, finite[i].first);
      ++i;
    }
  }
  std::sort(members.begin(), members.end());
  Neighborhood nb;
  nb.base = x;
  nb.members = std::move(members);
  nb.radius = radius;
  return nb;
}

Neighborhood k_complete(const EpSpace& space, index_t x, index_t k) {
  std::vector<index_t> all(space.size());
  for (index_t y = 0; y < space.size(); ++y) all[y] = y;
  return k_complete_within(space, x, k, all);
}

Neighborhood k_complete_within(const EpSpace& space, index_t x, index_t k,
                               std::span<const index_t> candidates) {
  return k_complete_over([&](index_t y) { return space.d(x, y); }, x, k, candidates);
}

std::vector<index_t> nn_sequence(const EpSpace& space, index_t x, index_t k) {
  std::vector<std::pair<double, index_t>> finite;
  for (index_t y = 0; y < space.size(); ++y) {
    if (y == x) continue;
    const double d = space.d(x, y);
    if (is_finite_dist(d)) finite.emplace_back(d, y);
  }
  if (finite.size() < k) {
    throw InsufficientPoints("fewer than k points at finite distance from the base");
  }
  std::sort(finite.begin(), finite.end());  // distance, then smallest index
  std::vector<index_t> seq(k);
  for (index_t i = 0; i < k; ++i) seq[i] = finite[i].second;
  return seq;
}

std::vector<Neighborhood> k_bounded_maximal(const EpSpace& space, index_t x, index_t k, double S,
                                            std::size_t cap) {
  if (k < 1) throw ConfigError("k-bounded neighborhoods require k >= 1");
  if (!is_finite_dist(S)) throw ConfigError("k-bounded neighborhoods require finite S");
  const std::vector<index_t> in_ball = ball(space, x, S);
  std::vector<Neighborhood> out;
  if (in_ball.size() <= k + 1) {
    out.push_back(make_neighborhood(space, x, in_ball));
    return out;
  }

  std::vector<index_t> others;
  for (index_t y : in_ball) {
    if (y != x) others.push_back(y);
  }
  // All k-subsets of the ball minus the base, each completed by the base.
  std::vector<index_t> chosen;
  auto emit = [&]() {
    if (out.size() >= cap) {
      throw KBoundedEnumerationLimit(
          "maximal k-bounded neighborhood cap of " + std::to_string(cap) + " exceeded", out);
    }
    std::vector<index_t> members = chosen;
    members.push_back(x);
    out.push_back(make_neighborhood(space, x, std::move(members)));
  };
  auto recurse = [&](auto&& self, index_t from) -> void {
    if (chosen.size() == k) {
      emit();
      return;
    }
    for (index_t i = from; i < others.size(); ++i) {
      chosen.push_back(others[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

Neighborhood complete_k_bounded(const EpSpace& space, index_t x, index_t k, double S) {
  if (k <= 1) throw ConfigError("complete k-bounded neighborhoods require k > 1");
  if (!is_finite_dist(S)) throw ConfigError("complete k-bounded neighborhoods require finite S");
  try {
    Neighborhood kc = k_complete(space, x, k);
    if (approx_le(kc.radius, S)) return kc;
  } catch (const InsufficientPoints&) {
    // No k-complete neighborhood exists; fall through to the S-ball.
  }
  return make_neighborhood(space, x, ball(space, x, S));
}

Neighborhood merge_k_complete(const EpSpace& space, index_t x,
                              std::span<const std::vector<index_t>> samples, index_t k) {
  std::set<index_t> pool;
  for (const auto& sample : samples) {
    if (std::find(sample.begin(), sample.end(), x) == sample.end()) {
      throw std::invalid_argument("every sample must contain the base point");
    }
    index_t finite = 0;
    for (index_t y : sample) {
      if (is_finite_dist(space.d(x, y))) ++finite;
    }
    if (finite >= k) {
      const Neighborhood local = k_complete_within(space, x, k, sample);
      pool.insert(local.members.begin(), local.members.end());
    } else {
      // A sample too small for a k-complete neighborhood contributes its
      // whole finite-distance part; the merged result still matches the
      // direct computation on the union.
      for (index_t y : sample) {
        if (is_finite_dist(space.d(x, y))) pool.insert(y);
      }
    }
  }
  const std::vector<index_t> candidates(pool.begin(), pool.end());
  return k_complete_within(space, x, k, candidates);
}

NeighborhoodSystem k_complete_system(const EpSpace& space, index_t k) {
  NeighborhoodSystem sys;
  sys.items.reserve(space.size());
  for (index_t x = 0; x < space.size(); ++x) {
    sys.items.push_back(k_complete(space, x, k));
  }
  return sys;
}

NeighborhoodSystem complete_ball_system(const EpSpace& space, std::span<const double> radii) {
  if (radii.size() != space.size()) throw ConfigError("one radius per point required");
  NeighborhoodSystem sys;
  sys.items.reserve(space.size());
  for (index_t x = 0; x < space.size(); ++x) {
    sys.items.push_back(make_neighborhood(space, x, ball(space, x, radii[x])));
  }
  return sys;
}

NeighborhoodSystem complete_k_bounded_system(const EpSpace& space, index_t k, double S) {
  NeighborhoodSystem sys;
  sys.items.reserve(space.size());
  for (index_t x = 0; x < space.size(); ++x) {
    sys.items.push_back(complete_k_bounded(space, x, k, S));
  }
  return sys;
}

}  // namespace epc
