#include <doctest.h>

#include <map>

#include "epc/sampling.hpp"
#include "oracles.hpp"

using namespace epc;

namespace {

// Wraps a sampler and keeps every drawn sample for soundness checks.
struct RecordingSampler {
  Sampler inner;
  std::vector<std::vector<index_t>> drawn;

  Sampler fn() {
    return [this](index_t required, index_t size, Rng& rng) {
      auto s = inner(required, size, rng);
      drawn.push_back(s);
      return s;
    };
  }
};

Universe line_universe(index_t n) {
  Universe u;
  u.size = n;
  u.distance = [](index_t a, index_t b) {
    return std::abs(static_cast<double>(a) - static_cast<double>(b));
  };
  return u;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("estimates are deterministic under a fixed seed") {
  const Universe u = make_universe({.kind = "blobs", .size = 300, .clusters = 3, .seed = 7});
  const Sampler sampler = uniform_sampler(u);
  Rng r1(99), r2(99);
  const auto a = estimate_once(u, sampler, r1, 5, 4, 3, 64);
  const auto b = estimate_once(u, sampler, r2, 5, 4, 3, 64);
  CHECK(a.current == b.current);
  CHECK(a.support == b.support);
}

TEST_CASE("merged estimate equals the direct computation on everything seen") {
  const Universe u = make_universe({.kind = "grid", .dims = {32, 32}, .seed = 1});
  Rng rng(42);
  RecordingSampler rec{uniform_sampler(u), {}};
  const Sampler sampler = rec.fn();
  for (int it = 0; it < 10; ++it) {
    rec.drawn.clear();
    const index_t x = bounded(rng, u.size);
    const index_t k = 2 + bounded(rng, 6);
    const auto est = estimate_once(u, sampler, rng, x, k, 3, 48);

    std::vector<index_t> seen;
    for (const auto& s : rec.drawn) {
      seen.insert(seen.end(), s.begin(), s.end());
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    CHECK(est.support == seen);

    const auto direct =
        k_complete_over([&](index_t y) { return u.distance(x, y); }, x, k, seen);
    CHECK(est.current == direct);
  }
}

TEST_CASE("a sample covering the true neighborhood pins the estimate") {
  const Universe u = line_universe(1000);
  const index_t x = 500;
  const index_t k = 5;
  const Neighborhood truth = true_k_complete(u, x, k);

  // Scripted sampler: the one drawn sample contains the whole truth.
  Sampler scripted = [&](index_t, index_t, Rng&) {
    std::vector<index_t> s = truth.members;
    s.push_back(0);
    s.push_back(999);
    std::sort(s.begin(), s.end());
    return s;
  };
  Rng rng(1);
  const auto est = estimate_once(u, scripted, rng, x, k, 1, 16);
  CHECK(est.current == truth);
  CHECK(recall(est.current, truth) == 1.0);
}

TEST_CASE("neighbor expansion pulls in closer points and shrinks the radius") {
  // Base 0 with a near ring the first sample misses entirely.
  Universe u = line_universe(40);
  const index_t x = 0;
  const index_t k = 4;

  std::map<index_t, std::vector<index_t>> script;
  script[0] = {0, 20, 21, 22, 23};  // initial sample: far block only
  // Expansion samples around the far members see the near ring 1..4.
  for (index_t far : {20, 21, 22, 23}) script[far] = {1, 2, 3, 4, far};
  Sampler scripted = [&](index_t required, index_t, Rng&) {
    auto found = script.find(required);
    REQUIRE(found != script.end());
    auto s = found->second;
    if (std::find(s.begin(), s.end(), required) == s.end()) s.push_back(required);
    std::sort(s.begin(), s.end());
    return s;
  };

  Rng rng(2);
  auto est = estimate_once(u, scripted, rng, x, k, 1, 8);
  const double before = est.current.radius;
  CHECK(before == 22.0);
  est = refine_neighbor_expansion(u, scripted, rng, est, k, 8);
  CHECK(est.current.radius < before);
  CHECK(est.current.members == std::vector<index_t>{0, 2, 3, 4});
  REQUIRE(est.radius_history.size() == 2);
  CHECK(est.radius_history[1] < est.radius_history[0]);
}

TEST_CASE("expansion on full support is a fixed point") {
  const Universe u = line_universe(12);
  Sampler everything = [&](index_t, index_t, Rng&) {
    std::vector<index_t> all(u.size);
    for (index_t i = 0; i < u.size; ++i) all[i] = i;
    return all;
  };
  Rng rng(3);
  auto est = estimate_once(u, everything, rng, 6, 3, 1, 12);
  const auto before = est.current;
  est = refine_neighbor_expansion(u, everything, rng, est, 3, 12);
  CHECK(est.current == before);
}

TEST_CASE("accumulation is monotone and exhausts the universe") {
  const Universe u = make_universe({.kind = "blobs", .size = 200, .clusters = 2, .seed = 5});
  const Sampler sampler = uniform_sampler(u);
  Rng rng(7);
  for (int run = 0; run < 10; ++run) {
    const index_t x = bounded(rng, u.size);
    auto est = estimate_once(u, sampler, rng, x, 6, 2, 40);
    const auto unchanged = refine_accumulate(u, sampler, rng, est, 6, 0, 40);
    CHECK(unchanged.current == est.current);

    for (int round = 0; round < 4; ++round) {
      est = refine_accumulate(u, sampler, rng, est, 6, 2, 40);
    }
    for (index_t i = 1; i < est.radius_history.size(); ++i) {
      CHECK(est.radius_history[i] <= est.radius_history[i - 1] + kEps);
    }
  }

  // Exhaustion: once the support is the whole universe the estimate is true.
  const Universe tiny = line_universe(30);
  Sampler everything = [&](index_t, index_t, Rng&) {
    std::vector<index_t> all(tiny.size);
    for (index_t i = 0; i < tiny.size; ++i) all[i] = i;
    return all;
  };
  auto est = estimate_once(tiny, everything, rng, 4, 5, 1, 30);
  est = refine_accumulate(tiny, everything, rng, est, 5, 1, 30);
  CHECK(est.current == true_k_complete(tiny, 4, 5));
  CHECK(recall(est.current, true_k_complete(tiny, 4, 5)) == 1.0);
}

TEST_CASE("clustering a sampled union") {
  SUBCASE("full coverage reproduces the rips clusters at small scales") {
    const Universe u = line_universe(24);
    std::vector<std::vector<index_t>> samples(3);
    for (index_t i = 0; i < u.size; ++i) samples[i % 3].push_back(i);
    for (auto& s : samples) std::sort(s.begin(), s.end());
    const auto out = cluster_sampled(u, samples, 3);
    CHECK(out.excision.all_ok);
    REQUIRE(out.points.size() == u.size);

    // With 3-complete neighborhoods every radius is at least 1, and below
    // the minimum radius the ray clusters equal the rips clusters.
    double min_radius = kInf;
    for (const auto& nb : out.system.items) min_radius = std::min(min_radius, nb.radius);
    const FilteredGraph rips = rips_graph(out.space);
    for (double t : {0.5 * min_radius, min_radius}) {
      CHECK(out.tree.at(t) == pi0(rips, t));
    }
    // At any scale the ray clusters refine the rips clusters (the inclusion
    // induces a surjection); compare_pi0 validates the containment.
    for (double t : {0.5, 1.0, 3.0, 10.0}) {
      const auto cmp = compare_pi0(out.rays, rips, t);
      CHECK(cmp.from.count >= cmp.to.count);
    }
  }

  SUBCASE("two separated blobs stay apart at intermediate scales") {
    const Universe u =
        make_universe({.kind = "planted", .size = 60, .clusters = 2, .spread = 0.4, .separation = 50.0, .seed = 11});
    std::vector<std::vector<index_t>> samples(1);
    for (index_t i = 0; i < u.size; ++i) samples[0].push_back(i);
    const auto out = cluster_sampled(u, samples, 4);
    CHECK(out.excision.all_ok);
    const Partition mid = out.tree.at(10.0);
    CHECK(mid.count == 2);
  }

  SUBCASE("a single k-point sample cascades into one cluster") {
    const Universe u = line_universe(100);
    const std::vector<std::vector<index_t>> samples{{10, 11, 12, 13}};
    const auto out = cluster_sampled(u, samples, 4);
    CHECK(out.points.size() == 4);
    CHECK(out.tree.at(out.rays.max_weight()).count == 1);
  }
}

}  // TEST_SUITE
