#include "altitude/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "altitude/error.hpp"
#include "altitude/rng.hpp"

namespace altitude {

Graph Graph::build(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (n < 0) throw InvalidInput("vertex count must be non-negative");
  Graph g;
  g.n_ = n;
  g.adjacency_.resize(static_cast<std::size_t>(n));
  g.edges_.reserve(edges.size());
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidInput("edge " + std::to_string(i) + ": vertex out of range");
    }
    if (u == v) throw InvalidInput("edge " + std::to_string(i) + ": self-loop");
    const auto rank = static_cast<EdgeRank>(i + 1);
    const auto key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | static_cast<std::uint32_t>(std::max(u, v));
    if (!seen.insert(key).second) throw InvalidInput("edge " + std::to_string(i) + ": duplicate edge");
    g.edges_.push_back(Edge{u, v});
    g.adjacency_[static_cast<std::size_t>(u)].push_back({v, rank});
    g.adjacency_[static_cast<std::size_t>(v)].push_back({u, rank});
  }
  return g;
}

std::optional<EdgeRank> Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
  const Vertex scan = degree(u) <= degree(v) ? u : v;
  const Vertex target = scan == u ? v : u;
  for (const auto& inc : incident(scan)) {
    if (inc.neighbor == target) return inc.rank;
  }
  return std::nullopt;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_pairs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(e.u, e.v);
  return out;
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::complete: return "complete";
    case FamilyKind::hypercube: return "hypercube";
    case FamilyKind::gnp: return "gnp";
    case FamilyKind::path: return "path";
    case FamilyKind::cycle: return "cycle";
    case FamilyKind::cycle_join: return "cycle_join";
    case FamilyKind::star: return "star";
  }
  return "unknown";
}

std::optional<FamilyKind> parse_family(const std::string& name) {
  for (auto kind : {FamilyKind::complete, FamilyKind::hypercube, FamilyKind::gnp, FamilyKind::path,
                    FamilyKind::cycle, FamilyKind::cycle_join, FamilyKind::star}) {
    if (family_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string FamilySpec::describe() const {
  std::ostringstream os;
  os << family_name(kind) << ' ' << size;
  if (kind == FamilyKind::gnp) os << ' ' << p;
  return os.str();
}

namespace {

Graph lexicographic(int n, std::vector<std::pair<Vertex, Vertex>> pairs) {
  for (auto& [u, v] : pairs) {
    if (u > v) std::swap(u, v);
  }
  std::sort(pairs.begin(), pairs.end());
  return Graph::build(n, pairs);
}

}  // namespace

Graph generate(const FamilySpec& family, std::uint64_t seed) {
  const int k = family.size;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  switch (family.kind) {
    case FamilyKind::complete:
      if (k < 1) throw InvalidInput("complete: n must be positive");
      for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) pairs.emplace_back(u, v);
      return lexicographic(k, pairs);
    case FamilyKind::hypercube: {
      if (k < 1 || k > 20) throw InvalidInput("hypercube: dimension must be in 1..20");
      const int n = 1 << k;
      for (int u = 0; u < n; ++u)
        for (int b = 0; b < k; ++b) {
          const int v = u ^ (1 << b);
          if (u < v) pairs.emplace_back(u, v);
        }
      return lexicographic(n, pairs);
    }
    case FamilyKind::gnp: {
      if (k < 1) throw InvalidInput("gnp: n must be positive");
      if (!(family.p >= 0.0 && family.p <= 1.0)) throw InvalidInput("gnp: p must be in [0,1]");
      Rng rng(seed);
      for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
          if (rng.bernoulli(family.p)) pairs.emplace_back(u, v);
      return Graph::build(k, pairs);
    }
    case FamilyKind::path:
      if (k < 1) throw InvalidInput("path: n must be positive");
      for (int u = 0; u + 1 < k; ++u) pairs.emplace_back(u, u + 1);
      return lexicographic(k, pairs);
    case FamilyKind::cycle:
      if (k < 3) throw InvalidInput("cycle: n must be at least 3");
      for (int u = 0; u < k; ++u) pairs.emplace_back(u, (u + 1) % k);
      return lexicographic(k, pairs);
    case FamilyKind::cycle_join:
      // C_k on 0..k-1 joined to the non-adjacent pair k, k+1.
      if (k < 3) throw InvalidInput("cycle_join: n must be at least 3");
      for (int u = 0; u < k; ++u) {
        pairs.emplace_back(u, (u + 1) % k);
        pairs.emplace_back(u, k);
        pairs.emplace_back(u, k + 1);
      }
      return lexicographic(k + 2, pairs);
    case FamilyKind::star:
      if (k < 1) throw InvalidInput("star: leaf count must be positive");
      for (int v = 1; v <= k; ++v) pairs.emplace_back(0, v);
      return lexicographic(k + 1, pairs);
  }
  throw InvalidInput("unknown family");
}

std::optional<std::vector<std::vector<std::pair<Vertex, Vertex>>>> known_edge_orbits(const FamilySpec& family) {
  using Orbits = std::vector<std::vector<std::pair<Vertex, Vertex>>>;
  switch (family.kind) {
    case FamilyKind::complete:
    case FamilyKind::hypercube:
    case FamilyKind::cycle:
    case FamilyKind::star: {
      // Edge-transitive families: a single orbit.
      Orbits orbits(1);
      orbits[0] = generate(family).edge_pairs();
      if (orbits[0].empty()) orbits.clear();
      return orbits;
    }
    case FamilyKind::path: {
      // Reversal pairs edge {i, i+1} with {n-2-i, n-1-i}.
      const int n = family.size;
      Orbits orbits;
      for (int i = 0; i + 1 < n; ++i) {
        const int j = n - 2 - i;
        if (j < i) break;
        std::vector<std::pair<Vertex, Vertex>> orbit{{i, i + 1}};
        if (j != i) orbit.emplace_back(j, j + 1);
        orbits.push_back(std::move(orbit));
      }
      return orbits;
    }
    case FamilyKind::gnp:
    case FamilyKind::cycle_join:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

void require_bijection(std::span<const EdgeRank> new_rank, int m) {
  if (static_cast<int>(new_rank.size()) != m) {
    throw InvalidInput("permutation has " + std::to_string(new_rank.size()) + " entries, expected " +
                       std::to_string(m));
  }
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (std::size_t i = 0; i < new_rank.size(); ++i) {
    const EdgeRank r = new_rank[i];
    if (r < 1 || r > m || seen[static_cast<std::size_t>(r)]) {
      throw InvalidInput("permutation is not a bijection on 1..m (entry " + std::to_string(i) + ")");
    }
    seen[static_cast<std::size_t>(r)] = true;
  }
}

}  // namespace

Graph reorder_edges(const Graph& g, std::span<const EdgeRank> new_rank) {
  const int m = g.edge_count();
  require_bijection(new_rank, m);
  std::vector<std::pair<Vertex, Vertex>> pairs(static_cast<std::size_t>(m));
  for (int r = 1; r <= m; ++r) {
    const auto& e = g.edge(r);
    pairs[static_cast<std::size_t>(new_rank[static_cast<std::size_t>(r - 1)] - 1)] = {e.u, e.v};
  }
  return Graph::build(g.vertex_count(), pairs);
}

std::vector<EdgeRank> random_permutation(int m, std::uint64_t seed) {
  std::vector<EdgeRank> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  Rng rng(seed);
  rng.shuffle(std::span<EdgeRank>(perm));
  return perm;
}

Graph reorder_edges(const Graph& g, std::uint64_t seed) {
  return reorder_edges(g, random_permutation(g.edge_count(), seed));
}

std::vector<EdgeRank> inverse_permutation(std::span<const EdgeRank> new_rank) {
  require_bijection(new_rank, static_cast<int>(new_rank.size()));
  std::vector<EdgeRank> inv(new_rank.size());
  for (std::size_t i = 0; i < new_rank.size(); ++i) {
    inv[static_cast<std::size_t>(new_rank[i] - 1)] = static_cast<EdgeRank>(i + 1);
  }
  return inv;
}

namespace {

int max_degree(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

EdgeColoring first_fit(const Graph& g) {
  EdgeColoring out;
  out.color.assign(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeRank r = 1; r <= g.edge_count(); ++r) {
    const auto& e = g.edge(r);
    auto& cu = used[static_cast<std::size_t>(e.u)];
    auto& cv = used[static_cast<std::size_t>(e.v)];
    int c = 0;
    while ((c < static_cast<int>(cu.size()) && cu[static_cast<std::size_t>(c)]) ||
           (c < static_cast<int>(cv.size()) && cv[static_cast<std::size_t>(c)])) {
      ++c;
    }
    for (auto* side : {&cu, &cv}) {
      if (static_cast<int>(side->size()) <= c) side->resize(static_cast<std::size_t>(c) + 1, false);
      (*side)[static_cast<std::size_t>(c)] = true;
    }
    out.color[static_cast<std::size_t>(r - 1)] = c;
    out.classes = std::max(out.classes, c + 1);
  }
  return out;
}

}  // namespace

EdgeColoring misra_gries_coloring(const Graph& g) {
  const int n = g.vertex_count();
  const int palette = max_degree(g) + 1;
  // at[v][c]: neighbour joined to v by an edge of colour c, or -1.
  std::vector<std::vector<Vertex>> at(static_cast<std::size_t>(n), std::vector<Vertex>(static_cast<std::size_t>(palette), -1));
  auto is_free = [&](Vertex v, int c) { return at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] < 0; };
  auto color_of = [&](Vertex u, Vertex v) {
    for (int c = 0; c < palette; ++c)
      if (at[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)] == v) return c;
    return -1;
  };
  auto set_color = [&](Vertex u, Vertex v, int c) {
    at[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)] = v;
    at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = u;
  };
  auto clear_color = [&](Vertex u, Vertex v, int c) {
    at[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)] = -1;
    at[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = -1;
  };
  auto free_color = [&](Vertex v) {
    for (int c = 0; c < palette; ++c)
      if (is_free(v, c)) return c;
    return -1;
  };

  for (EdgeRank r = 1; r <= g.edge_count(); ++r) {
    const Vertex u = g.edge(r).u;
    const Vertex v0 = g.edge(r).v;

    // Maximal fan of u starting at v0.
    std::vector<Vertex> fan{v0};
    std::vector<bool> in_fan(static_cast<std::size_t>(n), false);
    in_fan[static_cast<std::size_t>(v0)] = true;
    for (bool grew = true; grew;) {
      grew = false;
      const Vertex last = fan.back();
      for (const auto& inc : g.incident(u)) {
        const Vertex w = inc.neighbor;
        if (in_fan[static_cast<std::size_t>(w)]) continue;
        const int c = color_of(u, w);
        if (c >= 0 && is_free(last, c)) {
          fan.push_back(w);
          in_fan[static_cast<std::size_t>(w)] = true;
          grew = true;
          break;
        }
      }
    }

    const int c = free_color(u);
    const int d = free_color(fan.back());
    ALTITUDE_CHECK(c >= 0 && d >= 0, "Misra-Gries palette exhausted");

    // Invert the cd-path through u, which starts with the d-coloured edge.
    if (c != d) {
      std::vector<std::pair<Vertex, Vertex>> path;
      Vertex x = u;
      int want = d;
      while (!is_free(x, want)) {
        const Vertex y = at[static_cast<std::size_t>(x)][static_cast<std::size_t>(want)];
        path.emplace_back(x, y);
        x = y;
        want = want == d ? c : d;
      }
      int col = d;
      for (auto [a, b] : path) {
        clear_color(a, b, col);
        col = col == d ? c : d;
      }
      col = c;
      for (auto [a, b] : path) {
        set_color(a, b, col);
        col = col == d ? c : d;
      }
    }

    // Longest prefix of the fan that is still a fan; pick its first vertex
    // on which d is free.
    std::size_t w_index = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0) {
        const int ci = color_of(u, fan[i]);
        if (ci < 0 || !is_free(fan[i - 1], ci)) break;
      }
      if (is_free(fan[i], d)) {
        w_index = i;
        break;
      }
    }
    ALTITUDE_CHECK(w_index < fan.size(), "Misra-Gries found no fan vertex with d free");

    // Rotate the fan prefix and colour (u, w) with d.
    for (std::size_t i = 0; i < w_index; ++i) {
      const int next = color_of(u, fan[i + 1]);
      clear_color(u, fan[i + 1], next);
      set_color(u, fan[i], next);
    }
    set_color(u, fan[w_index], d);
  }

  EdgeColoring out;
  out.color.resize(static_cast<std::size_t>(g.edge_count()));
  std::vector<int> compact(static_cast<std::size_t>(palette), -1);
  for (EdgeRank r = 1; r <= g.edge_count(); ++r) {
    const int c = color_of(g.edge(r).u, g.edge(r).v);
    ALTITUDE_CHECK(c >= 0, "Misra-Gries left an edge uncoloured");
    auto& slot = compact[static_cast<std::size_t>(c)];
    if (slot < 0) slot = out.classes++;
    out.color[static_cast<std::size_t>(r - 1)] = slot;
  }
  return out;
}

EdgeColoring greedy_edge_coloring(const Graph& g) {
  EdgeColoring greedy = first_fit(g);
  if (greedy.classes <= max_degree(g) + 1) return greedy;
  return misra_gries_coloring(g);
}

IntervalOrdering matching_interval_ordering(const Graph& g) {
  const EdgeColoring coloring = greedy_edge_coloring(g);
  const int m = g.edge_count();
  std::vector<EdgeRank> by_class(static_cast<std::size_t>(m));
  std::iota(by_class.begin(), by_class.end(), 1);
  std::stable_sort(by_class.begin(), by_class.end(), [&](EdgeRank a, EdgeRank b) {
    return coloring.color[static_cast<std::size_t>(a - 1)] < coloring.color[static_cast<std::size_t>(b - 1)];
  });
  std::vector<EdgeRank> new_rank(static_cast<std::size_t>(m));
  IntervalOrdering out;
  for (int pos = 0; pos < m; ++pos) {
    const EdgeRank old = by_class[static_cast<std::size_t>(pos)];
    new_rank[static_cast<std::size_t>(old - 1)] = pos + 1;
    const int c = coloring.color[static_cast<std::size_t>(old - 1)];
    if (static_cast<int>(out.intervals.size()) <= c) out.intervals.emplace_back(pos + 1, pos + 1);
    out.intervals[static_cast<std::size_t>(c)].second = pos + 1;
  }
  out.graph = reorder_edges(g, new_rank);
  return out;
}

std::optional<int> girth(const Graph& g) {
  const int n = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    parent[static_cast<std::size_t>(s)] = -1;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (const auto& inc : g.incident(x)) {
        const Vertex y = inc.neighbor;
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          parent[static_cast<std::size_t>(y)] = x;
          queue.push_back(y);
        } else if (parent[static_cast<std::size_t>(x)] != y) {
          best = std::min(best, dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(y)] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.n = g.vertex_count();
  s.m = g.edge_count();
  s.average_degree = s.n == 0 ? 0.0 : 2.0 * s.m / s.n;
  s.max_degree = max_degree(g);
  s.girth = girth(g);
  s.chromatic_index_upper = greedy_edge_coloring(g).classes;
  return s;
}

std::vector<bool> vertex_mask(int n, std::span<const Vertex> removed) {
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  for (Vertex v : removed) {
    if (v < 0 || v >= n) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    mask[static_cast<std::size_t>(v)] = true;
  }
  return mask;
}

}  // namespace altitude
