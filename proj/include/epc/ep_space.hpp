#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "epc/common.hpp"

namespace epc {

// Finite extended pseudo-metric space: a symmetric matrix of distances in
// [0, inf] with zero diagonal and the triangle inequality. Distinct points may
// sit at distance 0 and unrelated points at distance inf.
class EpSpace {
 public:
  EpSpace() = default;

  // n points, all off-diagonal distances inf.
  explicit EpSpace(index_t n) : n_(n), dist_(n * n, kInf) {
    for (index_t i = 0; i < n; ++i) dist_[i * n + i] = 0.0;
  }

  // Builds from full rows. Throws ParseError on a non-square shape and
  // std::domain_error on negative or NaN entries. Axioms are NOT checked
  // here; see find_violation / validated.
  static EpSpace from_rows(const std::vector<std::vector<double>>& rows);

  index_t size() const { return n_; }

  double d(index_t i, index_t j) const { return dist_[i * n_ + j]; }

  // Symmetric assignment.
  void set(index_t i, index_t j, double v) {
    dist_[i * n_ + j] = v;
    dist_[j * n_ + i] = v;
  }

  bool operator==(const EpSpace&) const = default;

 private:
  index_t n_ = 0;
  std::vector<double> dist_;
};

struct AxiomViolation {
  enum class Kind { SelfDistance, Symmetry, Triangle };
  Kind kind;
  index_t i = 0, j = 0, k = 0;
  double lhs = 0.0, rhs = 0.0;

  std::string to_string() const;
};

// First violated axiom with witnessing indices, or nullopt if (X,d) is a
// valid ep-metric space. The triangle check fires only when
// d(i,k) > d(i,j) + d(j,k) + eps.
std::optional<AxiomViolation> find_violation(const EpSpace& space);

// from_rows + axiom check; throws ParseError carrying the violation text.
EpSpace validated(const std::vector<std::vector<double>>& rows);

// Surjective map of point sets; the quotient construction identifies points
// within each fibre.
struct Surjection {
  index_t source_size = 0;
  index_t target_size = 0;
  std::vector<index_t> map;  // length source_size, values in [0, target_size)

  static Surjection identity(index_t n);

  // Throws std::domain_error if an entry is out of range or a target index
  // is never hit.
  static Surjection validated(index_t target_size, std::vector<index_t> map);
};

// Disjoint union: distances preserved inside each summand, inf across.
// Throws std::invalid_argument on an empty list.
EpSpace coproduct(std::span<const EpSpace> spaces);
EpSpace coproduct(const EpSpace& a, const EpSpace& b);

// Quotient metric D(z,w) = inf over fibre-respecting paths of the summed
// distances, realized as shortest paths on the point graph with zero-weight
// hops inside each fibre. Output indices are the surjection's target indices.
EpSpace quotient(const EpSpace& space, const Surjection& p);

// Pairs (point of a, point of b) to identify; must be injective on each side.
using Pairing = std::vector<std::pair<index_t, index_t>>;

// Amalgamation of two spaces along identified points, computed as coproduct
// followed by quotient. Result indices: points of `a` keep their indices,
// unidentified points of `b` follow in order.
EpSpace wedge(const EpSpace& a, const EpSpace& b, const Pairing& identified);

// Wedge along the full identity pairing of two same-size spaces.
EpSpace wedge_identity(const EpSpace& a, const EpSpace& b);

}  // namespace epc
