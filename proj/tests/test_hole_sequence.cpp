#include <algorithm>

#include "altitude/error.hpp"
#include "altitude/graph.hpp"
#include "altitude/height_table.hpp"
#include "altitude/hole_sequence.hpp"
#include "altitude/rng.hpp"
#include "altitude/token_game.hpp"
#include "doctest.h"

using namespace altitude;

namespace {

Graph k3() {
  const std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {0, 2}, {1, 2}};
  return Graph::build(3, e);
}

struct Instance {
  Graph g;
  std::vector<Vertex> removed;
};

Instance random_instance(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 3 + static_cast<int>(rng.below(10));
  const int s = 1 + static_cast<int>(rng.below(std::min(3, n - 2)));
  Graph g = reorder_edges(generate({FamilyKind::gnp, n, 0.2 + 0.7 * rng.uniform01()}, rng.next()), rng.next());
  std::vector<Vertex> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  rng.shuffle(std::span<Vertex>(all));
  all.resize(s);
  std::sort(all.begin(), all.end());
  return {std::move(g), all};
}

}  // namespace

TEST_CASE("empty S: no holes, every array equals the reduced table") {
  const Graph g = reorder_edges(generate({FamilyKind::complete, 6}), std::uint64_t{3});
  const HoleArraySequence seq = hole_sequence(g, {});
  CHECK(validate_hole_sequence(g, seq).empty());
  CHECK(seq.initial == seq.reduced);
  for (int c = 0; c < seq.column_count(); ++c) CHECK(seq.initial.hole_count(c) == 0);
  for (std::size_t k = 0; k <= seq.steps.size(); ++k) CHECK(seq.array_at(static_cast<int>(k)) == seq.reduced);

  const GameTranscript t = transcript_from_holes(seq);
  CHECK(t.total_tokens() == 0);
  CHECK(t.transfer_count() == 0);
  for (const auto& d : measure_drops(g, {})) CHECK(d.drop == 0);
}

TEST_CASE("K3 without c") {
  const Graph g = k3();
  const std::vector<Vertex> s{2};
  const HoleArraySequence seq = hole_sequence(g, s);
  CHECK(validate_hole_sequence(g, seq).empty());
  REQUIRE(seq.column_count() == 2);
  CHECK(seq.initial.at({1, 0}).is_hole());
  CHECK(seq.initial.at({1, 1}).is_hole());
  CHECK(seq.initial.at({2, 0}) == HoleCell::make_edge(1));
  CHECK(seq.initial.hole_count(0) == 1);
  CHECK(seq.initial.hole_count(1) == 1);

  const GameTranscript t = transcript_from_holes(seq);
  CHECK(t.initial.column_count() == 2);
  CHECK(validate_transcript(t, 1).empty());

  // ab sits in row 2 of the full table and row 1 once c is gone
  const DropReport d = measure_drop(g, s, 1);
  CHECK(d.height_full == 2);
  CHECK(d.height_reduced == 1);
  CHECK(d.drop == 1);
  CHECK(d.drop <= d.critical_height);
  CHECK_THROWS_AS(measure_drop(g, s, 2), InvalidInput);
}

TEST_CASE("bad deletion sets") {
  const Graph g = k3();
  const std::vector<Vertex> too_many{0, 1};
  CHECK_THROWS_AS(hole_sequence(g, too_many), InvalidInput);
  const std::vector<Vertex> unknown{7};
  CHECK_THROWS_AS(hole_sequence(g, unknown), InvalidInput);
  const Graph k5 = generate({FamilyKind::complete, 5});
  const std::vector<Vertex> repeated{1, 1};
  CHECK_THROWS_AS(hole_sequence(k5, repeated), InvalidInput);
}

TEST_CASE("500 random instances: invariants, legal games, bounded drops") {
  for (int t = 0; t < 500; ++t) {
    const Instance in = random_instance(splitmix64(12'000 + t));
    const HoleArraySequence seq = hole_sequence(in.g, in.removed);
    REQUIRE(validate_hole_sequence(in.g, seq).empty());
    const int s = static_cast<int>(in.removed.size());
    const GameTranscript game = transcript_from_holes(seq);
    CHECK(validate_transcript(game, s).empty());
    for (int k = 0; k < game.step_count(); k += std::max(1, game.step_count() / 5))
      CHECK(game.board_at(k).occupancy() == board_from_holes(seq, k).occupancy());

    const HeightTable full(in.g);
    const HeightTable reduced(in.g, vertex_mask(in.g.vertex_count(), in.removed));
    for (const DropReport& d : measure_drops(in.g, in.removed)) {
      CHECK(d.height_full == full.height(d.edge));
      CHECK(d.height_reduced == reduced.height(d.edge));
      CHECK(d.drop == d.height_full - d.height_reduced);
      CHECK(d.drop >= 0);
      CHECK(d.drop <= d.critical_height);
      CHECK(d.critical_height <= d.column_tokens);
    }
  }
}

TEST_CASE("drop scan on K4 finds the worst single deletion") {
  const Graph g = generate({FamilyKind::complete, 4});
  const DropScan scan = scan_drops(g, 1);
  CHECK(scan.subsets == 4);
  int best = 0;
  for (Vertex v = 0; v < 4; ++v) {
    const std::vector<Vertex> s{v};
    for (const auto& d : measure_drops(g, s)) best = std::max(best, d.drop);
  }
  CHECK(scan.max_drop == best);
  REQUIRE(scan.worst_set.size() == 1);
}
