#include <algorithm>
#include <cmath>

#include "altitude/bounds.hpp"
#include "altitude/error.hpp"
#include "altitude/graph.hpp"
#include "altitude/height_table.hpp"
#include "altitude/monotone.hpp"
#include "altitude/oracle.hpp"
#include "altitude/path_engine.hpp"
#include "altitude/rng.hpp"
#include "doctest.h"

using namespace altitude;

namespace {

Graph k3() {
  const std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {0, 2}, {1, 2}};
  return Graph::build(3, e);
}

Graph random_graph(std::uint64_t seed, int max_n) {
  Rng rng(seed);
  const int n = 2 + static_cast<int>(rng.below(max_n - 1));
  return reorder_edges(generate({FamilyKind::gnp, n, 0.2 + 0.7 * rng.uniform01()}, rng.next()), rng.next());
}

}  // namespace

TEST_CASE("K3: ab extends to a, b, c") {
  const Graph g = k3();
  const HeightTable t(g);
  const MonotonePath ab = edge_path(g, t, 1);
  CHECK(ab.vertices == std::vector<Vertex>{0, 1});
  CHECK(ab.height == 2);
  const MonotonePath abc = extend_once(g, t, ab);
  CHECK(abc.vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(abc.edges == std::vector<EdgeRank>{1, 3});
  CHECK(abc.height >= 1);
  CHECK(check_path(g, abc).empty());
  CHECK_THROWS_AS(extend_once(g, t, abc), InvalidInput);

  CHECK(extend_iterated(g, t, 1, 2).vertices == std::vector<Vertex>{0, 1, 2});
  const MonotonePath one = extend_iterated(g, t, 1, 1);
  CHECK(one.length() == 1);
  CHECK(one.height == 2);
  CHECK_THROWS_AS(extend_iterated(g, t, 2, 2), InvalidInput);
}

TEST_CASE("extend_once keeps height >= r - k on random tables") {
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = random_graph(splitmix64(1000 + trial), 16);
    if (g.edge_count() == 0) continue;
    const HeightTable t(g);
    MonotonePath p = edge_path(g, t, t.max_height_edge().first);
    const int r = p.height;
    while (p.length() < p.height) {
      const int k = p.length();
      const int h = p.height;
      p = extend_once(g, t, p);
      REQUIRE(check_path(g, p).empty());
      CHECK(p.height >= h - k);
      ++checked;
    }
    CHECK(p.height >= r - static_cast<int>(choose2(p.length())));
  }
  CHECK(checked > 1000);
}

TEST_CASE("extend_iterated on lexicographic K10") {
  const Graph g = generate({FamilyKind::complete, 10});
  const HeightTable t(g);
  const auto [e, r] = t.max_height_edge();
  int tmax = 1;
  while (choose2(tmax + 1) < r) ++tmax;
  const MonotonePath p = extend_iterated(g, t, e, tmax);
  CHECK(p.length() == tmax);
  CHECK(p.height >= r - choose2(tmax));
  CHECK(check_path(g, p).empty());
}

TEST_CASE("rodl length is exact at perfect squares") {
  CHECK(rodl_length(25, 300) == 5);  // K25, d = 24
  CHECK(rodl_length(2, 1) == 1);
  CHECK(rodl_length(4, 6) == 2);
  // floor(1/2 + sqrt(d)) steps up exactly when d passes (t - 1/2)^2
  CHECK(rodl_length(4, 12) == 2);  // d = 6 < 6.25
  CHECK(rodl_length(8, 25) == 3);  // d = 6.25
  for (int n = 1; n <= 40; ++n)
    for (int m = 0; m <= n * (n - 1) / 2; ++m) {
      const double d = 2.0 * m / n;
      const int t = rodl_length(n, m);
      if (t > 0) CHECK((t - 0.5) * (t - 0.5) <= d + 1e-12);
      CHECK((t + 0.5) * (t + 0.5) > d - 1e-12);
    }
}

TEST_CASE("long_path_rodl reaches the floor") {
  const Graph k25 = generate({FamilyKind::complete, 25});
  for (int i = 0; i < 50; ++i) {
    const Graph g = reorder_edges(k25, splitmix64(3000 + i));
    const MonotonePath p = long_path_rodl(g);
    CHECK(check_path(g, p).empty());
    CHECK(p.length() >= 5);
  }
  const std::vector<std::pair<Vertex, Vertex>> one{{0, 1}};
  CHECK(long_path_rodl(Graph::build(2, one)).length() >= 1);
  CHECK(long_path_rodl(generate({FamilyKind::complete, 4})).length() >= 2);
  CHECK_THROWS_AS(long_path_rodl(Graph::build(3, {})), InvalidInput);
}

TEST_CASE("long_path_delete meets its own guarantee") {
  const Graph k50 = generate({FamilyKind::complete, 50});
  for (int i = 0; i < 20; ++i) {
    const Graph g = reorder_edges(k50, splitmix64(4000 + i));
    const DeletionRun run = long_path_delete(g, 3);
    CHECK(check_path(g, run.path).empty());
    CHECK(run.path.length() >= run.guarantee);
    CHECK(run.max_drop == std::max(0, run.drops.empty() ? 0 : *std::max_element(run.drops.begin(), run.drops.end())));
    for (int d : run.drops) CHECK(d >= 0);
  }
  const DeletionRun small = long_path_delete(k3(), 1);
  CHECK(check_path(k3(), small.path).empty());
  CHECK(small.rounds <= 1);
  CHECK_THROWS_AS(long_path_delete(k3(), 2), InvalidInput);
  CHECK_THROWS_AS(long_path_delete(k3(), 0), InvalidInput);
}

TEST_CASE("pedestrians on K3") {
  const auto trails = pedestrian_trails(k3());
  REQUIRE(trails.size() == 3);
  CHECK(trails[0].length() == 2);
  CHECK(trails[1].length() == 3);
  CHECK(trails[2].length() == 1);
  for (const auto& tr : trails) CHECK(check_trail(k3(), tr).empty());
  for (const auto& tr : pedestrian_trails(Graph::build(4, {}))) CHECK(tr.length() == 0);
}

TEST_CASE("pedestrians: every edge walked twice, some trail reaches n-1 on K5") {
  const Graph k5 = generate({FamilyKind::complete, 5});
  for (int i = 0; i < 200; ++i) {
    const Graph g = reorder_edges(k5, splitmix64(5000 + i));
    const auto trails = pedestrian_trails(g);
    std::vector<int> walked(g.edge_count() + 1, 0);
    int total = 0, best = 0;
    for (const auto& tr : trails) {
      CHECK(check_trail(g, tr).empty());
      for (EdgeRank e : tr.edges) ++walked[e];
      total += tr.length();
      best = std::max(best, tr.length());
    }
    CHECK(total == 2 * g.edge_count());
    CHECK(best >= 4);
    for (int e = 1; e <= g.edge_count(); ++e) CHECK(walked[e] == 2);
  }
}

TEST_CASE("girth bound") {
  const Graph q3 = generate({FamilyKind::hypercube, 3});
  for (int i = 0; i < 100; ++i) {
    const Graph g = reorder_edges(q3, splitmix64(6000 + i));
    const GirthBound b = girth_altitude_bound(g);
    CHECK(b.girth == 4);
    CHECK(b.certified >= 3);
    CHECK(check_path(g, b.witness).empty());
    CHECK(b.witness.length() >= b.certified);
  }
  CHECK(girth_altitude_bound(k3()).certified == 2);
  const Graph p = generate({FamilyKind::path, 6});
  const GirthBound forest = girth_altitude_bound(p);
  CHECK_FALSE(forest.girth.has_value());
  CHECK(forest.certified == forest.longest_trail);
}

TEST_CASE("closed-form bounds") {
  CHECK(guaranteed_bounds(25, 24).rodl_floor == 5);
  const BoundReport thin = guaranteed_bounds(100, 2.5);
  REQUIRE(thin.dense_bound.has_value());
  CHECK_FALSE(thin.dense_positive);
  CHECK(*thin.dense_bound <= 0.0);
  CHECK_FALSE(guaranteed_bounds(100, 2.0).dense_bound.has_value());
  CHECK(token_game_upper(4, 1) == doctest::Approx(44.0));
  CHECK_THROWS_AS(guaranteed_bounds(1, 0), InvalidInput);
  const BoundReport big = guaranteed_bounds(1'000'000, 999'999);
  CHECK(big.s == doctest::Approx(3635.9907982461632));
  CHECK(big.ghat_upper == doctest::Approx(std::sqrt(1e6 * big.s) * 11.0 * std::log2(1e6)));
}
