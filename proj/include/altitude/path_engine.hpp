#pragma once

#include <optional>
#include <vector>

#include "altitude/graph.hpp"
#include "altitude/height_table.hpp"
#include "altitude/monotone.hpp"

namespace altitude {

inline long long choose2(long long t) { return t * (t - 1) / 2; }

// The single-edge path x_0 x_1 along e. x_0 defaults to the lower-indexed
// endpoint; `start` picks the other orientation.
MonotonePath edge_path(const Graph& g, const HeightTable& table, EdgeRank e, std::optional<Vertex> start = {});

// One extension step from a path of length k and height r with k < r. The new
// edge comes from cells (i, x_k) with r-k <= i <= r-1, taking the highest row
// whose edge leaves the path, so the new height is at least r-k. Throws
// InvalidInput("height budget exhausted") when k >= r.
MonotonePath extend_once(const Graph& g, const HeightTable& table, const MonotonePath& path);

// Extends the edge e (height r) to a path of length t, requiring
// C(t,2) < r. The result has height at least r - C(t,2).
MonotonePath extend_iterated(const Graph& g, const HeightTable& table, EdgeRank e, int t,
                             std::optional<Vertex> start = {});

// floor(1/2 + sqrt(d)) for d = 2m/n, computed exactly in integers.
int rodl_length(int n, int m);

// Extends the maximum-height edge to length floor(1/2 + sqrt(d)), then keeps
// extending while the height budget allows. Throws InvalidInput when m = 0.
MonotonePath long_path_rodl(const Graph& g);

struct DeletionRun {
  MonotonePath path;   // height refers to the last reduced graph's table
  int start_height = 0;
  int s = 0;
  std::vector<int> drops;  // signed drop of the carried edge at each deletion
  int max_drop = 0;        // max(0, drops)
  int rounds = 0;
  // s * floor((r - 1) / (C(s+1,2) + max_drop)) + 1
  long long guarantee = 0;
};

// Extend s+1 steps, delete the first s vertices of the current segment,
// rebuild the table of the reduced graph and continue from the last edge.
// Stops as soon as an extension step has no budget left. Requires
// 1 <= s <= n-2.
DeletionRun long_path_delete(const Graph& g, int s);

// Pedestrian argument: one walker per vertex; when an edge is called (in rank
// order) the walkers at its two endpoints swap. Entry v is the trail of the
// walker who started at v.
std::vector<MonotoneTrail> pedestrian_trails(const Graph& g);

struct GirthBound {
  int certified = 0;         // min(g - 1, longest pedestrian trail)
  std::optional<int> girth;  // nullopt for forests
  int longest_trail = 0;
  MonotonePath witness;      // longest trail cut at its first repeated vertex
};

GirthBound girth_altitude_bound(const Graph& g);

}  // namespace altitude
