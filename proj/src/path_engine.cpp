#include "altitude/path_engine.hpp"

#include <algorithm>

#include "altitude/error.hpp"

namespace altitude {

MonotonePath edge_path(const Graph& g, const HeightTable& table, EdgeRank e, std::optional<Vertex> start) {
  const Edge& edge = g.edge(e);
  Vertex x0 = std::min(edge.u, edge.v);
  if (start) {
    if (!edge.touches(*start)) throw InvalidInput("start vertex is not an endpoint of the edge");
    x0 = *start;
  }
  return MonotonePath{{x0, edge.other(x0)}, {e}, table.height(e)};
}

MonotonePath extend_once(const Graph& g, const HeightTable& table, const MonotonePath& path) {
  const int k = path.length();
  const int r = path.height;
  if (k < 1) throw InvalidInput("extend_once needs a path with at least one edge");
  if (k >= r) throw InvalidInput("height budget exhausted");

  const Vertex tip = path.end();
  const EdgeRank last = path.last_edge();
  for (int row = r - 1; row >= r - k; --row) {
    const auto e = table.cell(row, tip);
    ALTITUDE_CHECK(e.has_value(), "cell below the path height is empty");
    ALTITUDE_CHECK(*e > last, "cell below the path height holds a smaller edge");
    const Vertex next = g.edge(*e).other(tip);
    if (std::find(path.vertices.begin(), path.vertices.end(), next) != path.vertices.end()) continue;
    MonotonePath out = path;
    out.vertices.push_back(next);
    out.edges.push_back(*e);
    out.height = row;
    return out;
  }
  detail::fail_internal("no reserved edge leaves the path");
}

MonotonePath extend_iterated(const Graph& g, const HeightTable& table, EdgeRank e, int t,
                             std::optional<Vertex> start) {
  if (t < 1) throw InvalidInput("target length must be positive");
  MonotonePath path = edge_path(g, table, e, start);
  const int r = path.height;
  if (choose2(t) >= r) {
    throw InvalidInput("height budget exhausted: C(t,2) = " + std::to_string(choose2(t)) + " >= height " +
                       std::to_string(r));
  }
  while (path.length() < t) path = extend_once(g, table, path);
  ALTITUDE_CHECK(path.height >= r - choose2(t), "iterated extension lost more height than C(t,2)");
  return path;
}

int rodl_length(int n, int m) {
  if (n <= 0 || m <= 0) return 0;
  // largest t with (t - 1/2)^2 <= 2m/n, i.e. n (2t-1)^2 <= 8m
  long long t = 0;
  while (static_cast<long long>(n) * (2 * (t + 1) - 1) * (2 * (t + 1) - 1) <= 8LL * m) ++t;
  return static_cast<int>(t);
}

MonotonePath long_path_rodl(const Graph& g) {
  if (g.edge_count() == 0) throw InvalidInput("graph has no edges");
  const HeightTable table(g);
  const auto [e, r] = table.max_height_edge();
  const int t = std::max(1, rodl_length(g.vertex_count(), g.edge_count()));
  MonotonePath path = extend_iterated(g, table, e, t);
  while (path.length() < path.height) path = extend_once(g, table, path);
  return path;
}

DeletionRun long_path_delete(const Graph& g, int s) {
  const int n = g.vertex_count();
  if (s < 1 || s > n - 2) throw InvalidInput("deletion block size must satisfy 1 <= s <= n-2");
  if (g.edge_count() == 0) throw InvalidInput("graph has no edges");

  std::vector<bool> removed(n, false);
  HeightTable table(g);
  const auto [e, r] = table.max_height_edge();

  DeletionRun run;
  run.s = s;
  run.start_height = r;
  MonotonePath segment = edge_path(g, table, e);
  run.path = segment;
  int remaining = n;

  auto extend = [&]() {
    segment = extend_once(g, table, segment);
    run.path.vertices.push_back(segment.end());
    run.path.edges.push_back(segment.last_edge());
    run.path.height = segment.height;
  };

  while (true) {
    bool exhausted = false;
    while (segment.length() < s + 1) {
      if (segment.length() >= segment.height) {
        exhausted = true;
        break;
      }
      extend();
    }
    if (exhausted) break;
    if (s > remaining - 2) {
      while (segment.length() < segment.height) extend();
      break;
    }

    for (int i = 0; i < s; ++i) removed[segment.vertices[i]] = true;
    remaining -= s;
    table = HeightTable(g, removed);
    const EdgeRank carried = segment.last_edge();
    const int new_height = table.height(carried);
    run.drops.push_back(segment.height - new_height);
    ++run.rounds;
    segment = MonotonePath{{segment.vertices[s], segment.vertices[s + 1]}, {carried}, new_height};
    run.path.height = new_height;
  }

  for (int d : run.drops) run.max_drop = std::max(run.max_drop, d);
  run.guarantee = static_cast<long long>(s) * ((r - 1) / (choose2(s + 1) + run.max_drop)) + 1;
  return run;
}

std::vector<MonotoneTrail> pedestrian_trails(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<MonotoneTrail> trails(n);
  std::vector<int> walker_at(n);
  for (Vertex v = 0; v < n; ++v) {
    walker_at[v] = v;
    trails[v].vertices.push_back(v);
  }
  for (EdgeRank e = 1; e <= g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const int a = walker_at[edge.u];
    const int b = walker_at[edge.v];
    trails[a].vertices.push_back(edge.v);
    trails[a].edges.push_back(e);
    trails[b].vertices.push_back(edge.u);
    trails[b].edges.push_back(e);
    walker_at[edge.u] = b;
    walker_at[edge.v] = a;
  }
  return trails;
}

GirthBound girth_altitude_bound(const Graph& g) {
  GirthBound out;
  out.girth = girth(g);
  const auto trails = pedestrian_trails(g);
  const MonotoneTrail* longest = nullptr;
  for (const auto& t : trails) {
    if (longest == nullptr || t.length() > longest->length()) longest = &t;
  }
  if (longest == nullptr) return out;
  out.longest_trail = longest->length();
  out.certified = out.girth ? std::min(*out.girth - 1, out.longest_trail) : out.longest_trail;
  out.witness = path_prefix(*longest);
  ALTITUDE_CHECK(out.witness.length() >= out.certified, "trail shorter than the girth repeats a vertex");
  return out;
}

}  // namespace altitude
