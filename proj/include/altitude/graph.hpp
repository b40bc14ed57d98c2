#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace altitude {

using Vertex = int;
// Position of an edge in T'(G), 1-based and dense over 1..m.
using EdgeRank = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor = 0;
  EdgeRank rank = 0;
};

// A graph with a total order on vertices (numeric index order) and on edges
// (list order). Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Throws InvalidInput naming the offending edge index on a self-loop,
  // duplicate edge or out-of-range endpoint.
  static Graph build(int n, std::span<const std::pair<Vertex, Vertex>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeRank rank) const { return edges_.at(static_cast<std::size_t>(rank - 1)); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Incidences of v sorted by increasing rank.
  std::span<const Incidence> incident(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

  // Rank of edge {u, v}, or nullopt when absent.
  std::optional<EdgeRank> find_edge(Vertex u, Vertex v) const;

  std::vector<std::pair<Vertex, Vertex>> edge_pairs() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

enum class FamilyKind { complete, hypercube, gnp, path, cycle, cycle_join, star };

struct FamilySpec {
  FamilyKind kind = FamilyKind::complete;
  // Vertex count for complete/gnp/path/cycle, cycle length for cycle_join,
  // dimension for hypercube, leaf count for star.
  int size = 0;
  double p = 0.0;  // gnp only

  std::string describe() const;
};

std::optional<FamilyKind> parse_family(const std::string& name);
std::string family_name(FamilyKind kind);

// Underlying graph of the family with edges in lexicographic (u < v) order.
// gnp draws each pair in lexicographic order with Rng(seed).bernoulli(p).
Graph generate(const FamilySpec& family, std::uint64_t seed = 0);

// Partition of edges into orbits under the automorphism group, for families
// whose orbits are known in closed form. Each orbit is a list of underlying
// edges given as (u, v) with u < v. nullopt when not known (gnp, cycle_join).
std::optional<std::vector<std::vector<std::pair<Vertex, Vertex>>>> known_edge_orbits(const FamilySpec& family);

// new_rank[r - 1] is the rank the edge currently at rank r receives.
Graph reorder_edges(const Graph& g, std::span<const EdgeRank> new_rank);
// Uniformly random ordering drawn with Rng(seed).
Graph reorder_edges(const Graph& g, std::uint64_t seed);
std::vector<EdgeRank> random_permutation(int m, std::uint64_t seed);
std::vector<EdgeRank> inverse_permutation(std::span<const EdgeRank> new_rank);

// Proper edge colouring. color[r - 1] is the class of the edge of rank r.
struct EdgeColoring {
  std::vector<int> color;
  int classes = 0;
};

// Greedy first-fit in rank order. When that exceeds max degree + 1 classes,
// falls back to Misra-Gries, which always stays within max degree + 1.
EdgeColoring greedy_edge_coloring(const Graph& g);
EdgeColoring misra_gries_coloring(const Graph& g);

struct IntervalOrdering {
  Graph graph;
  // Rank ranges [first, last] occupied by each colour class, in rank order.
  std::vector<std::pair<EdgeRank, EdgeRank>> intervals;
};

// Reorders edges so each colour class is a contiguous rank interval. A
// monotone trail takes at most one edge per interval, so the longest trail in
// the result is at most the number of intervals.
IntervalOrdering matching_interval_ordering(const Graph& g);

struct GraphStats {
  int n = 0;
  int m = 0;
  double average_degree = 0.0;
  int max_degree = 0;
  std::optional<int> girth;  // nullopt for forests
  int chromatic_index_upper = 0;
};

GraphStats graph_stats(const Graph& g);

// Shortest cycle length via BFS from every vertex; nullopt for forests.
std::optional<int> girth(const Graph& g);

// Remaining graph after deleting a set of vertices, as a mask.
std::vector<bool> vertex_mask(int n, std::span<const Vertex> removed);

}  // namespace altitude
