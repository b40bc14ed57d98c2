#pragma once

#include <string>
#include <vector>

#include "altitude/graph.hpp"

namespace altitude {

// x_0 ... x_k joined by edges of strictly increasing rank, vertices distinct.
struct MonotonePath {
  std::vector<Vertex> vertices;
  std::vector<EdgeRank> edges;
  int height = 0;  // height of the last edge in the table it was built from

  int length() const { return static_cast<int>(edges.size()); }
  EdgeRank last_edge() const { return edges.back(); }
  Vertex end() const { return vertices.back(); }
};

// Like MonotonePath, but vertices may repeat.
struct MonotoneTrail {
  std::vector<Vertex> vertices;
  std::vector<EdgeRank> edges;

  int length() const { return static_cast<int>(edges.size()); }
};

// Re-check a witness against the graph, independently of whatever produced
// it. Returns an empty string when valid, otherwise the first violation.
std::string check_trail(const Graph& g, const std::vector<Vertex>& vertices, const std::vector<EdgeRank>& edges);
std::string check_path(const Graph& g, const MonotonePath& path);
std::string check_trail(const Graph& g, const MonotoneTrail& trail);

inline bool is_monotone_path(const Graph& g, const MonotonePath& p) { return check_path(g, p).empty(); }
inline bool is_monotone_trail(const Graph& g, const MonotoneTrail& t) { return check_trail(g, t).empty(); }

// Longest prefix of a trail that repeats no vertex.
MonotonePath path_prefix(const MonotoneTrail& trail);

}  // namespace altitude
