#include <doctest.h>

#include "epc/filtration.hpp"
#include "oracles.hpp"

using namespace epc;

namespace {

EpSpace line_space(const std::vector<double>& xs) {
  EpSpace s(xs.size());
  for (index_t i = 0; i < xs.size(); ++i) {
    for (index_t j = i + 1; j < xs.size(); ++j) {
      s.set(i, j, std::abs(xs[i] - xs[j]));
    }
  }
  return s;
}

NeighborhoodSystem three_point_chain_system(const EpSpace& s) {
  // N_0 = {0,1}, N_1 = {1,2}, N_2 = {2} on the line {0,1,2}.
  NeighborhoodSystem sys;
  sys.items.push_back({0, {0, 1}, s.d(0, 1)});
  sys.items.push_back({1, {1, 2}, s.d(1, 2)});
  sys.items.push_back({2, {2}, 0.0});
  return sys;
}

// Radii drawn from each point's actual distance profile, so balls vary.
std::vector<double> random_radii(const EpSpace& s, Rng& rng) {
  std::vector<double> radii(s.size(), 0.0);
  for (index_t x = 0; x < s.size(); ++x) {
    const auto fibres = distance_fibres(s, x);
    radii[x] = fibres[bounded(rng, fibres.size())].value;
  }
  return radii;
}

}  // namespace

TEST_SUITE("filtration") {

TEST_CASE("rips graph basics") {
  CHECK(rips_graph(line_space({0, 3})).edges() == std::vector<FilteredEdge>{{0, 1, 3.0}});

  const EpSpace split = coproduct(line_space({0, 1}), line_space({0, 1}));
  CHECK(rips_graph(split).edges().size() == 2);  // no cross edges

  const auto edges = rips_graph(line_space({0, 1, 2})).edges();
  CHECK(edges == std::vector<FilteredEdge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}});
}

TEST_CASE("duplicate edges keep the minimum weight") {
  const FilteredGraph g = FilteredGraph::from_edges(2, {{0, 1, 5.0}, {1, 0, 3.0}});
  CHECK(g.edges() == std::vector<FilteredEdge>{{0, 1, 3.0}});
}

TEST_CASE("rips complex births") {
  SUBCASE("equilateral triangle") {
    EpSpace s(3);
    s.set(0, 1, 1.0);
    s.set(0, 2, 1.0);
    s.set(1, 2, 1.0);
    const FilteredComplex c = rips_complex(s, 2);
    bool found = false;
    for (const auto& sx : c.simplices()) {
      if (sx.vertices == std::vector<index_t>{0, 1, 2}) {
        found = true;
        CHECK(sx.birth == 1.0);
      }
    }
    CHECK(found);
  }

  SUBCASE("line triple is born at its diameter") {
    const FilteredComplex c = rips_complex(line_space({0, 1, 2}), 2);
    for (const auto& sx : c.simplices()) {
      if (sx.vertices.size() == 3) CHECK(sx.birth == 2.0);
    }
    CHECK(c.count_at_scale(1.0, 2) == 0);
    CHECK(c.count_at_scale(2.0, 2) == 1);
  }

  SUBCASE("dimension cap 1 reproduces the rips graph") {
    const EpSpace s = line_space({0, 1, 2, 5});
    CHECK(rips_complex(s, 1).one_skeleton() == rips_graph(s));
  }

  SUBCASE("the simplex cap fires on dense spaces") {
    EpSpace s(12);
    for (index_t i = 0; i < 12; ++i) {
      for (index_t j = i + 1; j < 12; ++j) s.set(i, j, 1.0);
    }
    CHECK_THROWS_AS(rips_complex(s, 3, 100), EnumerationLimit);
  }

  SUBCASE("faces are present with earlier births") {
    Rng rng(31);
    const EpSpace s = oracles::random_space(rng);
    const FilteredComplex c = rips_complex(s, 2);
    std::map<std::vector<index_t>, double> birth;
    for (const auto& sx : c.simplices()) birth[sx.vertices] = sx.birth;
    for (const auto& sx : c.simplices()) {
      if (sx.vertices.size() < 2) continue;
      for (index_t drop = 0; drop < sx.vertices.size(); ++drop) {
        std::vector<index_t> face = sx.vertices;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        REQUIRE(birth.count(face) == 1);
        CHECK(birth[face] <= sx.birth + kEps);
      }
    }
  }
}

TEST_CASE("ray complex of a neighborhood system") {
  const EpSpace s = line_space({0, 1, 2});

  SUBCASE("singleton neighborhoods produce no rays") {
    NeighborhoodSystem sys;
    for (index_t x = 0; x < 3; ++x) sys.items.push_back({x, {x}, 0.0});
    CHECK(ray_complex(s, sys).edges().empty());
  }

  SUBCASE("chain system misses the long edge") {
    const auto edges = ray_complex(s, three_point_chain_system(s)).edges();
    CHECK(edges == std::vector<FilteredEdge>{{0, 1, 1.0}, {1, 2, 1.0}});
  }

  SUBCASE("2-complete neighborhoods give the nearest-neighbor graph") {
    const EpSpace pts = line_space({0, 1, 3, 7});
    const auto sys = k_complete_system(pts, 2);
    const auto edges = ray_complex(pts, sys).edges();
    // Each point contributes a ray to its nearest neighbor.
    CHECK(edges == std::vector<FilteredEdge>{{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 4.0}});
  }
}

TEST_CASE("neighborhood complex") {
  const EpSpace s = line_space({0, 1, 2});

  SUBCASE("full neighborhoods reproduce the rips complex") {
    NeighborhoodSystem sys;
    for (index_t x = 0; x < 3; ++x) sys.items.push_back({x, {0, 1, 2}, 2.0});
    const auto nc = neighborhood_complex(s, sys, 2);
    const auto rc = rips_complex(s, 2);
    CHECK(nc.simplices() == rc.simplices());
  }

  SUBCASE("chain system admits no triangle") {
    const auto nc = neighborhood_complex(s, three_point_chain_system(s), 2);
    for (const auto& sx : nc.simplices()) CHECK(sx.vertices.size() <= 2);
  }

  SUBCASE("singleton neighborhoods give a discrete complex") {
    NeighborhoodSystem sys;
    for (index_t x = 0; x < 3; ++x) sys.items.push_back({x, {x}, 0.0});
    const auto nc = neighborhood_complex(s, sys, 2);
    CHECK(nc.simplices().size() == 3);  // vertices only
  }
}

TEST_CASE("path components at a scale") {
  const EpSpace s = line_space({0, 1, 3});
  const FilteredGraph g = rips_graph(s);

  CHECK(pi0(g, 0.5).count == 3);  // below every weight
  const Partition at1 = pi0(g, 1.0);
  CHECK(at1.count == 2);
  CHECK(at1.rep == std::vector<index_t>{0, 0, 2});
  CHECK(pi0(g, g.max_weight()).count == 1);
}

TEST_CASE("infinite distances never join components") {
  const EpSpace split = coproduct(line_space({0, 1}), line_space({0, 1}));
  const FilteredGraph g = rips_graph(split);
  CHECK(pi0(g, g.max_weight()).count == 2);
}

TEST_CASE("merge trees") {
  SUBCASE("isolated points never merge") {
    const MergeTree t = merge_tree(FilteredGraph(4));
    CHECK(t.merges.empty());
    CHECK(t.at(100.0).count == 4);
  }

  SUBCASE("line with two thresholds") {
    const MergeTree t = merge_tree(rips_graph(line_space({0, 1, 3})));
    REQUIRE(t.thresholds == std::vector<double>{1.0, 2.0});
    REQUIRE(t.merges.size() == 2);
    CHECK(t.merges[0].threshold == 1.0);
    CHECK(t.merges[0].joined == std::vector<index_t>{0, 1});
    CHECK(t.merges[1].threshold == 2.0);
    CHECK(t.merges[1].joined == std::vector<index_t>{0, 2});
  }

  SUBCASE("simultaneous merge of an equal-weight clique") {
    EpSpace s(4);
    for (index_t i = 0; i < 4; ++i) {
      for (index_t j = i + 1; j < 4; ++j) s.set(i, j, 2.0);
    }
    const MergeTree t = merge_tree(rips_graph(s));
    REQUIRE(t.merges.size() == 1);
    CHECK(t.merges[0].joined == std::vector<index_t>{0, 1, 2, 3});
    CHECK(t.merges[0].rep == 0);
  }

  SUBCASE("partitions along the sweep match independent pi0 runs") {
    Rng rng(32);
    oracles::SpaceOptions opt;
    opt.min_n = 4;
    opt.max_n = 24;
    for (int it = 0; it < 20; ++it) {
      const EpSpace s = oracles::random_space(rng, opt);
      const FilteredGraph g = rips_graph(s);
      const MergeTree t = merge_tree(g);
      for (index_t i = 0; i < t.thresholds.size(); ++i) {
        CHECK(t.components[i] == pi0(g, t.thresholds[i]));
      }
      CHECK(t.at(-1.0).count == s.size());
    }
  }
}

TEST_CASE("pi0 comparison across inclusions") {
  const EpSpace s = line_space({0, 1, 2});
  const FilteredGraph rays = ray_complex(s, three_point_chain_system(s));
  const FilteredGraph rips = rips_graph(s);

  SUBCASE("identical graphs compare as bijections") {
    CHECK(compare_pi0(rips, rips, 1.0).bijective);
  }

  SUBCASE("chain rays already connect everything at full scale") {
    const auto cmp = compare_pi0(rays, rips, 2.0);
    CHECK(cmp.bijective);
    CHECK(cmp.from.count == 1);
  }

  SUBCASE("a missing short edge shows up as a genuine merge") {
    // Rays only know 0-1; the rips side also joins 1-2 at scale 1.
    NeighborhoodSystem sparse;
    sparse.items.push_back({0, {0, 1}, 1.0});
    sparse.items.push_back({1, {1}, 0.0});
    sparse.items.push_back({2, {2}, 0.0});
    const auto cmp = compare_pi0(ray_complex(s, sparse), rips, 1.0);
    CHECK_FALSE(cmp.bijective);
    REQUIRE(cmp.merged_witness.has_value());
    CHECK(cmp.from.count == 2);
    CHECK(cmp.to.count == 1);
  }

  SUBCASE("non-subcomplexes are rejected") {
    CHECK_THROWS_AS(compare_pi0(rips, rays, 2.0), std::invalid_argument);
  }
}

TEST_CASE("neighborhood chains witness ray connectivity") {
  const EpSpace s = line_space({0, 1, 2});
  const NeighborhoodSystem sys = three_point_chain_system(s);

  SUBCASE("trivial chain") {
    const auto r = neighborhood_path(s, sys, 1, 1);
    CHECK(r.connected);
    REQUIRE_FALSE(r.chain.empty());
    CHECK(r.chain.front().first == 1);
  }

  SUBCASE("chain through a shared member") {
    const auto r = neighborhood_path(s, sys, 0, 2);
    REQUIRE(r.connected);
    CHECK(r.chain.front().first == 0);
    CHECK(r.chain.back().first == 2);
  }

  SUBCASE("separate coproduct summands never connect") {
    const EpSpace split = coproduct(line_space({0, 1}), line_space({0, 1}));
    const auto sys2 = k_complete_system(split, 2);
    CHECK_FALSE(neighborhood_path(split, sys2, 0, 2).connected);
  }

  SUBCASE("agreement with ray-complex components at every scale") {
    Rng rng(33);
    oracles::SpaceOptions opt;
    opt.min_n = 3;
    opt.max_n = 12;
    for (int it = 0; it < 25; ++it) {
      const EpSpace sp = oracles::random_space(rng, opt);
      index_t k = 2;
      NeighborhoodSystem sys3;
      bool feasible = true;
      for (index_t x = 0; x < sp.size() && feasible; ++x) {
        try {
          sys3.items.push_back(k_complete(sp, x, k));
        } catch (const InsufficientPoints&) {
          feasible = false;
        }
      }
      if (!feasible) continue;
      const FilteredGraph rays = ray_complex(sp, sys3);
      for (const double scale : {0.5, 1.0, 2.0, kInf}) {
        const Partition p = pi0(rays, scale);
        for (index_t a = 0; a < sp.size(); ++a) {
          for (index_t b = a + 1; b < sp.size(); ++b) {
            const bool chained = neighborhood_path(sp, sys3, a, b, scale).connected;
            CHECK(chained == (p.rep[a] == p.rep[b]));
          }
        }
      }
    }
  }
}

TEST_CASE("gluing local clusters reproduces the global ones") {
  const EpSpace s = line_space({0, 1, 2});

  SUBCASE("single neighborhood") {
    NeighborhoodSystem sys;
    sys.items.push_back({0, {0, 1, 2}, 2.0});
    CHECK(mapper_coequalizer_check(s, sys, 1.0));
  }

  SUBCASE("disjoint neighborhoods") {
    NeighborhoodSystem sys;
    for (index_t x = 0; x < 3; ++x) sys.items.push_back({x, {x}, 0.0});
    CHECK(mapper_coequalizer_check(s, sys, 5.0));
  }

  SUBCASE("random systems at random scales") {
    Rng rng(34);
    oracles::SpaceOptions opt;
    opt.min_n = 3;
    opt.max_n = 32;
    for (int it = 0; it < 30; ++it) {
      const EpSpace sp = oracles::random_space(rng, opt);
      NeighborhoodSystem sys;
      bool feasible = true;
      for (index_t x = 0; x < sp.size() && feasible; ++x) {
        try {
          sys.items.push_back(k_complete(sp, x, 1 + bounded(rng, 3)));
        } catch (const InsufficientPoints&) {
          feasible = false;
        }
      }
      if (!feasible) continue;
      for (const double scale : {0.25, 0.75, 1.5, 3.0}) {
        CHECK(mapper_coequalizer_check(sp, sys, scale));
      }
    }
  }
}

TEST_CASE("ray, neighborhood and rips skeleta nest at every scale") {
  Rng rng(35);
  oracles::SpaceOptions opt;
  opt.min_n = 4;
  opt.max_n = 20;
  for (int it = 0; it < 20; ++it) {
    const EpSpace sp = oracles::random_space(rng, opt);
    NeighborhoodSystem sys;
    bool feasible = true;
    for (index_t x = 0; x < sp.size() && feasible; ++x) {
      try {
        sys.items.push_back(k_complete(sp, x, 2));
      } catch (const InsufficientPoints&) {
        feasible = false;
      }
    }
    if (!feasible) continue;
    const FilteredGraph rays = ray_complex(sp, sys);
    const FilteredGraph nbhd = neighborhood_complex(sp, sys, 1).one_skeleton();
    const FilteredGraph rips = rips_graph(sp);
    for (const double scale : {0.5, 1.0, 2.0, 4.0}) {
      // compare_pi0 validates the subcomplex relation along the way.
      const auto a = compare_pi0(rays, nbhd, scale);
      const auto b = compare_pi0(nbhd, rips, scale);
      CHECK(a.from.count >= a.to.count);
      CHECK(b.from.count >= b.to.count);
    }
  }
}

TEST_CASE("bounded-neighborhood complexes in their scale regimes") {
  Rng rng(36);
  oracles::SpaceOptions opt;
  opt.min_n = 4;
  opt.max_n = 24;
  opt.island_prob = 0.0;
  for (int it = 0; it < 20; ++it) {
    const EpSpace sp = oracles::random_space(rng, opt);
    const double S = 0.25 * static_cast<double>(1 + bounded(rng, 10));
    const index_t k = 1 + bounded(rng, 3);
    const FilteredGraph skeleton = k_bounded_skeleton(sp, k, S);
    const FilteredGraph rays = k_bounded_rays(sp, S);
    const FilteredGraph rips = rips_graph(sp);

    for (double t : {0.3 * S, 0.7 * S, S}) {
      // Below the bound the skeleton carries every short edge.
      CHECK(skeleton.at_scale(t).size() == rips.at_scale(t).size());
      CHECK(compare_pi0(skeleton, rips, t).bijective);
    }
    for (double t : {S, 1.5 * S, 3.0 * S}) {
      CHECK(compare_pi0(rays, skeleton, t).bijective);
    }
    // Ray edges never exceed the bound, so their components freeze there.
    CHECK(pi0(rays, S) == pi0(rays, 100.0 * S));
  }
}

TEST_CASE("star complexes around a base point") {
  Rng rng(37);
  oracles::SpaceOptions opt;
  opt.min_n = 4;
  opt.max_n = 20;
  for (int it = 0; it < 20; ++it) {
    const EpSpace sp = oracles::random_space(rng, opt);
    const index_t x = bounded(rng, sp.size());
    const index_t k = 2 + bounded(rng, 2);
    const auto fibres = distance_fibres(sp, x);
    const double S = fibres[bounded(rng, fibres.size())].value;
    const auto star = star_complexes(sp, x, k, S);
    const FilteredGraph sub_rips = rips_graph_on(sp, star.points);

    for (double t : {0.4 * S, S}) {
      CHECK(compare_pi0(star.skeleton, sub_rips, t).bijective);
    }
    for (double t : {S, 2.0 * S}) {
      CHECK(pi0(star.rays, t).count == 1);
      CHECK(pi0(star.skeleton, t).count == 1);
      CHECK(pi0(sub_rips, t).count == 1);
    }
  }
}

TEST_CASE("complete neighborhood systems in their scale regimes") {
  Rng rng(38);
  oracles::SpaceOptions opt;
  opt.min_n = 4;
  opt.max_n = 24;
  for (int it = 0; it < 20; ++it) {
    const EpSpace sp = oracles::random_space(rng, opt);
    const std::vector<double> radii = random_radii(sp, rng);
    const NeighborhoodSystem sys = complete_ball_system(sp, radii);
    const FilteredGraph rays = ray_complex(sp, sys);
    const FilteredGraph nbhd = neighborhood_complex(sp, sys, 1).one_skeleton();
    const FilteredGraph rips = rips_graph(sp);

    const double r_min = *std::min_element(radii.begin(), radii.end());
    const double r_max = *std::max_element(radii.begin(), radii.end());

    for (double t : {0.0, 0.5 * r_min, r_min}) {
      CHECK(compare_pi0(rays, nbhd, t).bijective);
      CHECK(compare_pi0(nbhd, rips, t).bijective);
    }
    for (double t : {r_max, 1.5 * r_max + 0.1}) {
      CHECK(compare_pi0(rays, nbhd, t).bijective);
    }
    const double S = r_max + 0.25;
    for (double t : {S, 2.0 * S}) {
      CHECK(pi0(rays, S) == pi0(rays, t));
      CHECK(pi0(nbhd, S) == pi0(nbhd, t));
    }

    // Points whose ball is trivial split off as singletons below every radius.
    auto is_singleton = [](const Partition& p, index_t x) {
      for (index_t y = 0; y < p.rep.size(); ++y) {
        if (y != x && p.rep[y] == p.rep[x]) return false;
      }
      return true;
    };
    for (index_t x = 0; x < sp.size(); ++x) {
      if (sys.items[x].members.size() == 1) {
        for (double t : {0.0, 0.5 * r_min, r_min}) {
          CHECK(is_singleton(pi0(rips, t), x));
          CHECK(is_singleton(pi0(nbhd, t), x));
          CHECK(is_singleton(pi0(rays, t), x));
        }
      }
    }
  }
}

}  // TEST_SUITE
