#include "altitude/monotone.hpp"

#include <unordered_set>

namespace altitude {

std::string check_trail(const Graph& g, const std::vector<Vertex>& vertices, const std::vector<EdgeRank>& edges) {
  if (edges.empty()) {
    return vertices.size() <= 1 ? "" : "trail without edges has more than one vertex";
  }
  if (vertices.size() != edges.size() + 1) return "vertex count must be edge count + 1";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeRank e = edges[i];
    if (e < 1 || e > g.edge_count()) return "edge " + std::to_string(i) + " has rank out of range";
    const auto& edge = g.edge(e);
    const Vertex a = vertices[i];
    const Vertex b = vertices[i + 1];
    if (!(edge.touches(a) && edge.other(a) == b)) {
      return "edge " + std::to_string(i) + " does not join consecutive vertices";
    }
    if (i > 0 && edges[i - 1] >= e) return "ranks not strictly increasing at position " + std::to_string(i);
  }
  return "";
}

std::string check_trail(const Graph& g, const MonotoneTrail& trail) { return check_trail(g, trail.vertices, trail.edges); }

std::string check_path(const Graph& g, const MonotonePath& path) {
  if (auto err = check_trail(g, path.vertices, path.edges); !err.empty()) return err;
  std::unordered_set<Vertex> seen;
  for (Vertex v : path.vertices) {
    if (!seen.insert(v).second) return "vertex " + std::to_string(v) + " repeats";
  }
  return "";
}

MonotonePath path_prefix(const MonotoneTrail& trail) {
  MonotonePath out;
  if (trail.vertices.empty()) return out;
  std::unordered_set<Vertex> seen{trail.vertices.front()};
  out.vertices.push_back(trail.vertices.front());
  for (std::size_t i = 0; i < trail.edges.size(); ++i) {
    const Vertex next = trail.vertices[i + 1];
    if (!seen.insert(next).second) break;
    out.vertices.push_back(next);
    out.edges.push_back(trail.edges[i]);
  }
  return out;
}

}  // namespace altitude
