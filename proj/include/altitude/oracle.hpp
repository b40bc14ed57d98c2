#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altitude/graph.hpp"
#include "altitude/monotone.hpp"

namespace altitude {

struct TrailResult {
  int length = 0;
  MonotoneTrail trail;
};

// Exact longest monotone trail. Edges are scanned once in rank order with
// L(v) = longest trail ending at v; for edge uv both endpoints update from the
// old values: L'(v) = max(L(v), L(u) + 1), L'(u) = max(L(u), L(v) + 1).
TrailResult longest_monotone_trail(const Graph& g);

// Same quantity from the other end: F(e, x) = longest trail leaving x along e,
// filled in decreasing rank order. Returned per edge as (F(e, u), F(e, v)).
std::vector<std::pair<int, int>> trail_suffix_table(const Graph& g);
int longest_trail_reverse(const Graph& g);

struct PathResult {
  int length = 0;
  MonotonePath path;
  bool exact = false;
  std::int64_t nodes = 0;
};

// Branch and bound over monotone paths, extending in rank order. A partial
// path entering x along e is cut when its length plus min(F(e, .) - 1,
// unvisited vertices) cannot beat the best found. Exact unless the node
// budget runs out.
PathResult longest_monotone_path(const Graph& g, std::int64_t node_budget = 50'000'000);

enum class WalkMode { path, trail };
std::string mode_name(WalkMode mode);
std::optional<WalkMode> parse_mode(const std::string& name);

// Longest monotone path or trail of g under its own ordering; throws
// InvalidInput if a path search does not finish within the budget.
int longest_walk(const Graph& g, WalkMode mode, std::int64_t node_budget = 50'000'000);

struct AltitudeReport {
  std::string label;
  WalkMode mode = WalkMode::trail;
  bool exact = false;
  int lower = 0;
  int upper = 0;
  // order[r - 1] is the input rank of the edge placed at rank r.
  std::vector<EdgeRank> witness;
  std::int64_t orderings = 0;  // complete orderings reached
  std::int64_t nodes = 0;      // prefixes visited
  double seconds = 0.0;

  std::optional<int> value() const { return exact ? std::optional<int>(upper) : std::nullopt; }
};

// Graph under the ordering `order` (order[r - 1] = input rank placed at r).
Graph apply_order(const Graph& g, const std::vector<EdgeRank>& order);

struct ExactOptions {
  int threshold = 10;  // largest m enumerated
  int jobs = 1;
  // Edge orbits under Aut(G); the rank-1 edge is then restricted to one
  // representative per orbit.
  std::optional<std::vector<std::vector<std::pair<Vertex, Vertex>>>> orbits;
  std::string label;
};

// Minimum over all m! orderings of the longest monotone path or trail.
// Orderings are built rank by rank with the walk state updated incrementally;
// a prefix is abandoned once its value reaches the best complete value, which
// starts from the matching-interval ordering. Work is split by the first two
// ranks and each part keeps its own best, so the report does not depend on
// the number of jobs.
AltitudeReport altitude_exact(const Graph& g, WalkMode mode, const ExactOptions& options = {});

struct AnnealOptions {
  std::int64_t iterations = 10'000;
  std::uint64_t seed = 1;
  double t0 = 1.0;
  double cooling = 0.999;
  std::int64_t path_budget = 5'000'000;
  std::string label;
};

// Simulated annealing over orderings, moving by transposing two ranks. The
// energy is the longest trail plus the fraction of vertices where it ends;
// each new lowest energy gets an exact path search. Reports the best verified
// longest path as an upper bound on the altitude.
AltitudeReport adversarial_ordering(const Graph& g, const AnnealOptions& options = {});

struct Distribution {
  int count = 0;
  double mean = 0.0;
  int min = 0;
  int q1 = 0;
  int median = 0;
  int q3 = 0;
  int max = 0;
};

// Nearest-rank quartiles.
Distribution summarize(std::vector<int> values);

struct OrderingStats {
  int trials = 0;
  Distribution trail;        // exact longest trail
  Distribution path_greedy;  // long_path_rodl
  Distribution path_search;  // branch and bound, best found
  int path_exact_runs = 0;   // searches that finished within budget
};

OrderingStats random_ordering_stats(const Graph& g, int trials, std::uint64_t seed, std::int64_t path_budget = 200'000,
                                    int jobs = 1);

}  // namespace altitude
