#include <algorithm>

#include "altitude/error.hpp"
#include "altitude/graph.hpp"
#include "altitude/height_table.hpp"
#include "altitude/rng.hpp"
#include "doctest.h"

using namespace altitude;

namespace {

// a=0, b=1, c=2 with ab=1, ac=2, bc=3
Graph k3() {
  const std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {0, 2}, {1, 2}};
  return Graph::build(3, e);
}

}  // namespace

TEST_CASE("K3 table") {
  const HeightTable t(k3());
  CHECK(t.row_count() == 2);
  CHECK(t.cell(1, 0) == 2);
  CHECK(t.cell(1, 1) == 3);
  CHECK_FALSE(t.cell(1, 2).has_value());
  CHECK(t.cell(2, 0) == 1);
  CHECK_FALSE(t.cell(2, 1).has_value());
  CHECK_FALSE(t.cell(7, 0).has_value());

  CHECK(t.height(2) == 1);
  CHECK(t.height(3) == 1);
  CHECK(t.height(1) == 2);
  CHECK(t.column_of(1) == 0);
  CHECK(t.max_height_edge() == std::pair<EdgeRank, int>{1, 2});
  CHECK_THROWS_AS(t.height(4), InvalidInput);
  CHECK_THROWS_AS(t.height(0), InvalidInput);

  const auto rows = t.rows();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::optional<EdgeRank>>{2, 3, std::nullopt});
}

TEST_CASE("single edge and empty graph") {
  const std::vector<std::pair<Vertex, Vertex>> one{{0, 1}};
  const HeightTable t(Graph::build(2, one));
  CHECK(t.cell(1, 0) == 1);
  CHECK_FALSE(t.cell(1, 1).has_value());
  CHECK(t.height(1) == 1);
  CHECK(t.max_height_edge() == std::pair<EdgeRank, int>{1, 1});

  const HeightTable empty(Graph::build(4, {}));
  CHECK(empty.row_count() == 0);
  CHECK(empty.rows().empty());
  CHECK_THROWS_AS(empty.max_height_edge(), InvalidInput);
}

TEST_CASE("deleting c from K3 leaves ab alone in row 1") {
  const HeightTable t(k3(), std::vector<bool>{false, false, true});
  CHECK(t.row_count() == 1);
  CHECK(t.cell(1, 0) == 1);
  CHECK(t.height(1) == 1);
  CHECK_FALSE(t.contains(2));
  CHECK_THROWS_AS(t.height(3), InvalidInput);
}

TEST_CASE("star K_{1,3}: max height at least 1 under every ordering") {
  const Graph star = generate({FamilyKind::star, 3});
  std::vector<EdgeRank> perm{1, 2, 3};
  do {
    const HeightTable t(reorder_edges(star, perm));
    CHECK(t.max_height_edge().second >= 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// Rebuilds the table straight from its definition: scan cells in row-major
// order and give each the largest unused incident edge.
TEST_CASE("random tables match a direct re-fill") {
  for (int trial = 0; trial < 300; ++trial) {
    Rng rng(splitmix64(70 + trial));
    const int n = 1 + static_cast<int>(rng.below(15));
    const Graph g = reorder_edges(generate({FamilyKind::gnp, n, 0.1 + 0.8 * rng.uniform01()}, rng.next()), rng.next());
    const HeightTable t(g);
    std::vector<bool> used(g.edge_count() + 1, false);
    int placed = 0;
    for (int row = 1; placed < g.edge_count(); ++row) {
      for (Vertex u = 0; u < n; ++u) {
        EdgeRank best = 0;
        for (const Incidence& inc : g.incident(u))
          if (!used[inc.rank]) best = std::max(best, inc.rank);
        if (best == 0) {
          CHECK_FALSE(t.cell(row, u).has_value());
        } else {
          CHECK(t.cell(row, u) == best);
          used[best] = true;
          ++placed;
        }
      }
    }
    // average column height bound: max height >= ceil(m / n)
    if (g.edge_count() > 0) CHECK(static_cast<long long>(t.max_height_edge().second) * n >= g.edge_count());
  }
}
