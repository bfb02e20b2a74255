#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "epc/ep_space.hpp"

namespace epc {

// A finite-radius subset of the space containing its base point.
struct Neighborhood {
  index_t base = 0;
  std::vector<index_t> members;  // sorted ascending, includes base
  double radius = 0.0;           // max distance base -> member, always finite

  bool operator==(const Neighborhood&) const = default;
};

// One or more neighborhoods per point of the space.
struct NeighborhoodSystem {
  std::vector<Neighborhood> items;

  // Every point of an n-point space has at least one neighborhood.
  bool covers(index_t n) const;
};

// Closed ball {y : d(x,y) <= s + eps}, sorted.
std::vector<index_t> ball(const EpSpace& space, index_t x, double s);

// N equals the closed ball of its own radius.
bool is_complete(const EpSpace& space, const Neighborhood& nbhd);

// Every point outside N sits at distance >= radius(N) from the base.
bool is_nearest_neighbor_set(const EpSpace& space, const Neighborhood& nbhd);

// Distinct finite values of d(x, .) over the candidates (all points when
// empty), each with its fibre of points, grouped within eps and sorted.
struct DistanceFibre {
  double value;
  std::vector<index_t> points;
};
std::vector<DistanceFibre> distance_fibres(const EpSpace& space, index_t x,
                                           std::span<const index_t> candidates = {});

// Smallest complete neighborhood of x with at least k members. Throws
// InsufficientPoints when fewer than k points sit at finite distance from x.
Neighborhood k_complete(const EpSpace& space, index_t x, index_t k);

// Same, with the search restricted to a candidate subset (x included
// implicitly). Used by the sample-merge machinery.
Neighborhood k_complete_within(const EpSpace& space, index_t x, index_t k,
                               std::span<const index_t> candidates);

// Core of k_complete over an arbitrary distance callback; candidates must
// contain x. Shared with the sampling module, where the space is an oracle.
Neighborhood k_complete_over(const std::function<double(index_t)>& dist_from_x, index_t x,
                             index_t k, std::span<const index_t> candidates);

// (x_1,...,x_k) ordered by distance then index; the distance sequence is
// unique even when the point sequence is not.
std::vector<index_t> nn_sequence(const EpSpace& space, index_t x, index_t k);

// Maximal neighborhoods of x inside the S-ball holding at most k+1 points:
// each has exactly k+1 members, or is the whole ball when that is smaller.
// Past `cap` results the enumeration stops with an error carrying what was
// found so far. Diagnostic API only; the filtered complexes never enumerate.
struct KBoundedEnumerationLimit : EnumerationLimit {
  KBoundedEnumerationLimit(const std::string& msg, std::vector<Neighborhood> got)
      : EnumerationLimit(msg), partial(std::move(got)) {}
  std::vector<Neighborhood> partial;
};
std::vector<Neighborhood> k_bounded_maximal(const EpSpace& space, index_t x, index_t k, double S,
                                            std::size_t cap = 10000);

// Z(x, s_x) ∩ Z(x, S) for the k-complete radius s_x: the k-complete
// neighborhood when it fits inside the S-ball, otherwise the S-ball itself
// (which then has fewer than k members). Never throws; {x} is a valid result.
Neighborhood complete_k_bounded(const EpSpace& space, index_t x, index_t k, double S);

// k-complete neighborhood of x in the union of the samples, computed via the
// per-sample k-complete neighborhoods only. Each sample must contain x.
Neighborhood merge_k_complete(const EpSpace& space, index_t x,
                              std::span<const std::vector<index_t>> samples, index_t k);

// One k-complete neighborhood per point.
NeighborhoodSystem k_complete_system(const EpSpace& space, index_t k);

// N_x = Z(x, r_x) for given per-point radii.
NeighborhoodSystem complete_ball_system(const EpSpace& space, std::span<const double> radii);

// One complete k-bounded neighborhood per point.
NeighborhoodSystem complete_k_bounded_system(const EpSpace& space, index_t k, double S);

}  // namespace epc
