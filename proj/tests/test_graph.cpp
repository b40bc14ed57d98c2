#include <algorithm>
#include <filesystem>
#include <set>

#include "altitude/error.hpp"
#include "altitude/graph.hpp"
#include "altitude/graph_io.hpp"
#include "altitude/oracle.hpp"
#include "altitude/rng.hpp"
#include "doctest.h"

using namespace altitude;

namespace {

Graph k3() {
  const std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {0, 2}, {1, 2}};
  return Graph::build(3, e);
}

}  // namespace

TEST_CASE("build keeps list order as rank") {
  const Graph g = k3();
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.find_edge(0, 1) == 1);
  CHECK(g.find_edge(2, 0) == 2);
  CHECK(g.find_edge(1, 2) == 3);
}

TEST_CASE("build rejects self-loops, duplicates and bad endpoints") {
  const std::vector<std::pair<Vertex, Vertex>> loop{{0, 0}};
  CHECK_THROWS_AS(Graph::build(2, loop), InvalidInput);
  const std::vector<std::pair<Vertex, Vertex>> dup{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(Graph::build(4, dup), InvalidInput);
  const std::vector<std::pair<Vertex, Vertex>> flipped{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph::build(4, flipped), InvalidInput);
  const std::vector<std::pair<Vertex, Vertex>> outside{{0, 5}};
  CHECK_THROWS_AS(Graph::build(3, outside), InvalidInput);
  CHECK_THROWS_AS(Graph::build(-1, {}), InvalidInput);
}

TEST_CASE("families") {
  const Graph k4 = generate({FamilyKind::complete, 4});
  CHECK(k4.edge_count() == 6);
  for (Vertex v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

  const Graph q3 = generate({FamilyKind::hypercube, 3});
  CHECK(q3.vertex_count() == 8);
  CHECK(q3.edge_count() == 12);
  CHECK(girth(q3) == 4);

  CHECK(generate({FamilyKind::gnp, 10, 0.0}, 1).edge_count() == 0);
  CHECK(generate({FamilyKind::gnp, 10, 1.0}, 1).edge_count() == 45);
  CHECK(generate({FamilyKind::gnp, 30, 0.5}, 9) == generate({FamilyKind::gnp, 30, 0.5}, 9));

  CHECK(generate({FamilyKind::star, 5}).edge_count() == 5);
  CHECK(generate({FamilyKind::cycle, 5}).edge_count() == 5);
  CHECK(generate({FamilyKind::path, 5}).edge_count() == 4);
  CHECK(parse_family("hypercube") == FamilyKind::hypercube);
  CHECK_FALSE(parse_family("petersen").has_value());
}

TEST_CASE("known orbits cover every edge once") {
  for (const FamilySpec f : {FamilySpec{FamilyKind::complete, 5}, FamilySpec{FamilyKind::hypercube, 3},
                             FamilySpec{FamilyKind::star, 4}, FamilySpec{FamilyKind::cycle, 6}}) {
    const auto orbits = known_edge_orbits(f);
    REQUIRE(orbits.has_value());
    std::set<std::pair<Vertex, Vertex>> seen;
    std::size_t total = 0;
    for (const auto& orbit : *orbits) {
      total += orbit.size();
      seen.insert(orbit.begin(), orbit.end());
    }
    const Graph g = generate(f);
    CHECK(total == static_cast<std::size_t>(g.edge_count()));
    CHECK(seen.size() == total);
  }
  CHECK_FALSE(known_edge_orbits({FamilyKind::gnp, 5, 0.5}).has_value());
}

TEST_CASE("reordering") {
  const Graph g = k3();
  const std::vector<EdgeRank> identity{1, 2, 3};
  CHECK(reorder_edges(g, identity) == g);

  const std::vector<EdgeRank> reverse{3, 2, 1};
  const Graph r = reorder_edges(g, reverse);
  CHECK(r.find_edge(1, 2) == 1);
  CHECK(r.find_edge(0, 1) == 3);

  const Graph big = generate({FamilyKind::complete, 9});
  CHECK(reorder_edges(big, std::uint64_t{7}) == reorder_edges(big, std::uint64_t{7}));
  CHECK_FALSE(reorder_edges(big, std::uint64_t{7}) == reorder_edges(big, std::uint64_t{8}));

  const auto perm = random_permutation(20, 3);
  const auto inv = inverse_permutation(perm);
  for (int r = 1; r <= 20; ++r) CHECK(inv[perm[r - 1] - 1] == r);

  const std::vector<EdgeRank> bad{1, 1, 2};
  CHECK_THROWS_AS(reorder_edges(g, bad), InvalidInput);
}

TEST_CASE("edge colourings are proper and within max degree + 1") {
  for (int t = 0; t < 200; ++t) {
    Rng rng(splitmix64(500 + t));
    const int n = 2 + static_cast<int>(rng.below(14));
    const Graph g = reorder_edges(generate({FamilyKind::gnp, n, 0.5}, rng.next()), rng.next());
    int delta = 0;
    for (Vertex v = 0; v < n; ++v) delta = std::max(delta, g.degree(v));
    for (const EdgeColoring& c : {greedy_edge_coloring(g), misra_gries_coloring(g)}) {
      CHECK(c.classes <= delta + 1);
      for (Vertex v = 0; v < n; ++v) {
        std::set<int> at_v;
        for (const Incidence& inc : g.incident(v)) at_v.insert(c.color[inc.rank - 1]);
        CHECK(at_v.size() == static_cast<std::size_t>(g.degree(v)));
      }
    }
  }
}

TEST_CASE("matching interval ordering") {
  const auto k4 = matching_interval_ordering(generate({FamilyKind::complete, 4}));
  CHECK(k4.intervals.size() == 3);
  CHECK(longest_monotone_trail(k4.graph).length == 3);

  const std::vector<std::pair<Vertex, Vertex>> one{{0, 1}};
  const auto single = matching_interval_ordering(Graph::build(2, one));
  CHECK(single.intervals.size() == 1);
  CHECK(longest_monotone_trail(single.graph).length == 1);

  const auto p3 = matching_interval_ordering(generate({FamilyKind::path, 3}));
  CHECK(p3.intervals.size() == 2);
}

TEST_CASE("stats") {
  const GraphStats k4 = graph_stats(generate({FamilyKind::complete, 4}));
  CHECK(k4.average_degree == doctest::Approx(3.0));
  CHECK(k4.max_degree == 3);
  CHECK(k4.girth == 3);

  const GraphStats q3 = graph_stats(generate({FamilyKind::hypercube, 3}));
  CHECK(q3.average_degree == doctest::Approx(3.0));
  CHECK(q3.girth == 4);

  CHECK_FALSE(graph_stats(generate({FamilyKind::path, 5})).girth.has_value());
}

TEST_CASE("json round trip is byte-identical") {
  const Graph g = reorder_edges(generate({FamilyKind::gnp, 12, 0.4}, 5), std::uint64_t{11});
  const std::string text = write_graph_json(g);
  CHECK(read_graph_json(text) == g);
  CHECK(write_graph_json(read_graph_json(text)) == text);

  const auto path = std::filesystem::temp_directory_path() / "altitude_graph_roundtrip.json";
  save_graph(g, path);
  CHECK(load_graph(path) == g);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_graph_json("{\"n\":2}"), InvalidInput);
  CHECK_THROWS_AS(read_graph_json("not json"), InvalidInput);
  CHECK_THROWS_AS(read_graph_json("{\"n\":2,\"edges\":[[0,0]]}"), InvalidInput);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), InvalidInput);
}
