#include <doctest.h>

#include "epc/ep_space.hpp"
#include "oracles.hpp"

using namespace epc;

namespace {

bool spaces_close(const EpSpace& a, const EpSpace& b) {
  if (a.size() != b.size()) return false;
  for (index_t i = 0; i < a.size(); ++i) {
    for (index_t j = 0; j < a.size(); ++j) {
      if (!approx_eq(a.d(i, j), b.d(i, j))) return false;
    }
  }
  return true;
}

bool matrix_close(const EpSpace& a, const std::vector<std::vector<double>>& m) {
  for (index_t i = 0; i < a.size(); ++i) {
    for (index_t j = 0; j < a.size(); ++j) {
      if (!approx_eq(a.d(i, j), m[i][j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("epspace") {

TEST_CASE("validation accepts a single point") {
  CHECK_FALSE(find_violation(EpSpace::from_rows({{0.0}})).has_value());
}

TEST_CASE("validation reports the first triangle violation with witnesses") {
  const EpSpace s = EpSpace::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  const auto v = find_violation(s);
  REQUIRE(v.has_value());
  CHECK(v->kind == AxiomViolation::Kind::Triangle);
  CHECK(v->i == 0);
  CHECK(v->k == 2);
  CHECK(v->lhs == 3.0);
  CHECK(v->rhs == 2.0);
}

TEST_CASE("infinite distances are allowed") {
  CHECK_FALSE(find_violation(EpSpace::from_rows({{0, kInf}, {kInf, 0}})).has_value());
}

TEST_CASE("asymmetry and nonzero diagonal are violations") {
  const auto sym = find_violation(EpSpace::from_rows({{0, 1}, {2, 0}}));
  REQUIRE(sym.has_value());
  CHECK(sym->kind == AxiomViolation::Kind::Symmetry);

  const auto diag = find_violation(EpSpace::from_rows({{1.0}}));
  REQUIRE(diag.has_value());
  CHECK(diag->kind == AxiomViolation::Kind::SelfDistance);
}

TEST_CASE("malformed input is rejected before validation") {
  CHECK_THROWS_AS(EpSpace::from_rows({{0, 1}}), ParseError);
  CHECK_THROWS_AS(EpSpace::from_rows({{0, -1}, {-1, 0}}), std::domain_error);
}

TEST_CASE("coproduct of two points") {
  const EpSpace point = EpSpace::from_rows({{0.0}});
  const EpSpace c = coproduct(point, point);
  CHECK(matrix_close(c, {{0, kInf}, {kInf, 0}}));
}

TEST_CASE("coproduct of a single space is the space") {
  const EpSpace x = EpSpace::from_rows({{0, 2}, {2, 0}});
  const EpSpace one[] = {x};
  CHECK(coproduct(std::span<const EpSpace>(one, 1)) == x);
}

TEST_CASE("coproduct of two 2-point spaces has an infinite off-diagonal block") {
  const EpSpace x = EpSpace::from_rows({{0, 2}, {2, 0}});
  const EpSpace y = EpSpace::from_rows({{0, 5}, {5, 0}});
  const EpSpace c = coproduct(x, y);
  REQUIRE(c.size() == 4);
  CHECK(c.d(0, 1) == 2.0);
  CHECK(c.d(2, 3) == 5.0);
  for (index_t i : {0, 1}) {
    for (index_t j : {2, 3}) CHECK(c.d(i, j) == kInf);
  }
}

TEST_CASE("coproduct of nothing is an error") {
  CHECK_THROWS_AS(coproduct(std::span<const EpSpace>{}), std::invalid_argument);
}

TEST_CASE("quotient collapsing a 2-point space yields one point") {
  const EpSpace x = EpSpace::from_rows({{0, 2}, {2, 0}});
  const EpSpace q = quotient(x, Surjection::validated(1, {0, 0}));
  REQUIRE(q.size() == 1);
  CHECK(q.d(0, 0) == 0.0);
}

TEST_CASE("quotient finds the cheaper path through an identified pair") {
  // d(a,b)=1, d(c,d)=2, d(a,d)=10, rest consistent and large.
  const EpSpace x = EpSpace::from_rows({{0, 1, 8.5, 10},
                                        {1, 0, 8, 9.5},
                                        {8.5, 8, 0, 2},
                                        {10, 9.5, 2, 0}});
  REQUIRE_FALSE(find_violation(x).has_value());
  const Surjection p = Surjection::validated(3, {0, 1, 1, 2});  // b ~ c
  const EpSpace q = quotient(x, p);
  CHECK(q.d(0, 2) == doctest::Approx(3.0).epsilon(1e-12));
  const auto brute = oracles::brute_quotient(x, p, x.size());
  CHECK(matrix_close(q, brute));
}

TEST_CASE("quotient along the identity is the space itself") {
  Rng rng(11);
  for (int it = 0; it < 20; ++it) {
    const EpSpace s = oracles::random_space(rng);
    CHECK(quotient(s, Surjection::identity(s.size())) == s);
  }
}

TEST_CASE("quotient output is a valid ep-metric and non-expanding") {
  Rng rng(12);
  for (int it = 0; it < 50; ++it) {
    const EpSpace s = oracles::random_space(rng);
    const Surjection p = oracles::random_surjection(rng, s.size());
    const EpSpace q = quotient(s, p);
    CHECK_FALSE(find_violation(q).has_value());
    for (index_t x = 0; x < s.size(); ++x) {
      for (index_t y = 0; y < s.size(); ++y) {
        CHECK(approx_le(q.d(p.map[x], p.map[y]), s.d(x, y)));
      }
    }
  }
}

TEST_CASE("quotient matches the brute-force path formula on small spaces") {
  Rng rng(13);
  for (int it = 0; it < 50; ++it) {
    const EpSpace s = oracles::random_space(rng);
    const Surjection p = oracles::random_surjection(rng, s.size());
    CHECK(matrix_close(quotient(s, p), oracles::brute_quotient(s, p, s.size())));
  }
}

TEST_CASE("wedge picks the smaller metric on an identified pair") {
  const EpSpace a = EpSpace::from_rows({{0, 5}, {5, 0}});
  const EpSpace b = EpSpace::from_rows({{0, 3}, {3, 0}});
  const EpSpace w = wedge_identity(a, b);
  CHECK(w.d(0, 1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("wedge of a space with itself is the space") {
  Rng rng(14);
  const EpSpace s = oracles::random_space(rng);
  CHECK(spaces_close(wedge_identity(s, s), s));
}

TEST_CASE("wedge routes through finite legs of both summands") {
  const EpSpace a = EpSpace::from_rows({{0, 1, kInf}, {1, 0, kInf}, {kInf, kInf, 0}});
  const EpSpace b = EpSpace::from_rows({{0, kInf, kInf}, {kInf, 0, 1}, {kInf, 1, 0}});
  const EpSpace w = wedge_identity(a, b);
  CHECK(w.d(0, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(matrix_close(w, oracles::wedge_formula(a, b)));
}

TEST_CASE("wedge rejects bad pairings") {
  const EpSpace a = EpSpace::from_rows({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(wedge(a, a, {{0, 5}}), std::domain_error);
  CHECK_THROWS_AS(wedge(a, a, {{0, 0}, {0, 1}}), std::domain_error);
}

TEST_CASE("wedge matches the same-set shortest-path formula") {
  Rng rng(15);
  for (int it = 0; it < 30; ++it) {
    const EpSpace a = oracles::random_space(rng);
    oracles::SpaceOptions opt;
    opt.min_n = a.size();
    opt.max_n = a.size();
    const EpSpace b = oracles::random_space(rng, opt);
    CHECK(matrix_close(wedge_identity(a, b), oracles::wedge_formula(a, b)));
  }
}

TEST_CASE("wedge outputs always validate") {
  Rng rng(17);
  for (int it = 0; it < 30; ++it) {
    const EpSpace a = oracles::random_space(rng);
    oracles::SpaceOptions opt;
    opt.min_n = a.size();
    opt.max_n = a.size();
    const EpSpace b = oracles::random_space(rng, opt);
    CHECK_FALSE(find_violation(wedge_identity(a, b)).has_value());
  }
}

TEST_CASE("wedge is commutative and associative up to relabeling") {
  Rng rng(16);
  for (int it = 0; it < 20; ++it) {
    const EpSpace a = oracles::random_space(rng);
    oracles::SpaceOptions opt;
    opt.min_n = a.size();
    opt.max_n = a.size();
    const EpSpace b = oracles::random_space(rng, opt);
    const EpSpace c = oracles::random_space(rng, opt);

    // Same-set identity gluing keeps labels stable on both sides.
    CHECK(spaces_close(wedge_identity(a, b), wedge_identity(b, a)));
    CHECK(spaces_close(wedge_identity(wedge_identity(a, b), c),
                       wedge_identity(a, wedge_identity(b, c))));
  }

  // General pairing: glue two spaces in both orders and compare through the
  // known relabeling.
  const EpSpace a = EpSpace::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  const EpSpace b = EpSpace::from_rows({{0, 4}, {4, 0}});
  const EpSpace w_ab = wedge(a, b, {{0, 0}});  // labels: a0 a1 a2, b1 -> 3
  const EpSpace w_ba = wedge(b, a, {{0, 0}});  // labels: b0 b1, a1 -> 2, a2 -> 3
  REQUIRE(w_ab.size() == 4);
  REQUIRE(w_ba.size() == 4);
  const index_t relabel[4] = {0, 2, 3, 1};  // w_ab index -> w_ba index
  for (index_t i = 0; i < 4; ++i) {
    for (index_t j = 0; j < 4; ++j) {
      CHECK(approx_eq(w_ab.d(i, j), w_ba.d(relabel[i], relabel[j])));
    }
  }
}

}  // TEST_SUITE
