#include "altitude/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "altitude/error.hpp"
#include "altitude/parallel.hpp"
#include "altitude/path_engine.hpp"
#include "altitude/rng.hpp"

namespace altitude {

TrailResult longest_monotone_trail(const Graph& g) {
  const int n = g.vertex_count();
  struct Node {
    Vertex at;
    EdgeRank edge;
    int parent;
  };
  std::vector<Node> nodes;
  std::vector<int> len(n, 0);
  std::vector<int> tail(n, -1);
  for (EdgeRank e = 1; e <= g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    const int lu = len[u], lv = len[v];
    const int tu = tail[u], tv = tail[v];
    if (lu + 1 > lv) {
      nodes.push_back({v, e, tu});
      len[v] = lu + 1;
      tail[v] = static_cast<int>(nodes.size()) - 1;
    }
    if (lv + 1 > lu) {
      nodes.push_back({u, e, tv});
      len[u] = lv + 1;
      tail[u] = static_cast<int>(nodes.size()) - 1;
    }
  }

  TrailResult out;
  if (n == 0) return out;
  const Vertex best = static_cast<Vertex>(std::max_element(len.begin(), len.end()) - len.begin());
  out.length = len[best];
  std::vector<const Node*> chain;
  for (int k = tail[best]; k >= 0; k = nodes[k].parent) chain.push_back(&nodes[k]);
  std::reverse(chain.begin(), chain.end());
  if (chain.empty()) {
    out.trail.vertices.push_back(best);
    return out;
  }
  out.trail.vertices.push_back(g.edge(chain.front()->edge).other(chain.front()->at));
  for (const Node* node : chain) {
    out.trail.vertices.push_back(node->at);
    out.trail.edges.push_back(node->edge);
  }
  return out;
}

std::vector<std::pair<int, int>> trail_suffix_table(const Graph& g) {
  std::vector<int> best(g.vertex_count(), 0);
  std::vector<std::pair<int, int>> f(g.edge_count());
  for (EdgeRank e = g.edge_count(); e >= 1; --e) {
    const auto [u, v] = g.edge(e);
    const int fu = 1 + best[v];
    const int fv = 1 + best[u];
    f[e - 1] = {fu, fv};
    best[u] = std::max(best[u], fu);
    best[v] = std::max(best[v], fv);
  }
  return f;
}

int longest_trail_reverse(const Graph& g) {
  int best = 0;
  for (const auto& [a, b] : trail_suffix_table(g)) best = std::max({best, a, b});
  return best;
}

namespace {

class PathSearch {
 public:
  PathSearch(const Graph& g, std::int64_t budget) : g_(g), budget_(budget), f_(trail_suffix_table(g)) {
    visited_.assign(g.vertex_count(), false);
    cap_ = std::min(g.vertex_count() - 1, longest_trail_reverse(g));
  }

  PathResult run() {
    struct Start {
      EdgeRank e;
      Vertex from;
      int bound;
    };
    std::vector<Start> starts;
    for (EdgeRank e = 1; e <= g_.edge_count(); ++e) {
      starts.push_back({e, g_.edge(e).u, f_[e - 1].first});
      starts.push_back({e, g_.edge(e).v, f_[e - 1].second});
    }
    std::stable_sort(starts.begin(), starts.end(), [](const Start& a, const Start& b) { return a.bound > b.bound; });
    for (const auto& s : starts) {
      if (stopped()) break;
      if (std::min(s.bound, cap_) <= best_.length) break;
      const Vertex to = g_.edge(s.e).other(s.from);
      visited_[s.from] = visited_[to] = true;
      verts_ = {s.from, to};
      edges_ = {s.e};
      dfs(to, 1);
      visited_[s.from] = visited_[to] = false;
    }
    best_.exact = !aborted_;
    best_.nodes = nodes_;
    if (best_.path.vertices.empty() && g_.vertex_count() > 0) best_.path.vertices.push_back(0);
    return best_;
  }

 private:
  int leave_bound(EdgeRank e, Vertex x) const {
    return g_.edge(e).u == x ? f_[e - 1].first : f_[e - 1].second;
  }

  bool stopped() const { return aborted_ || best_.length >= cap_; }

  void dfs(Vertex x, int depth) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (depth > best_.length) {
      best_.length = depth;
      best_.path.vertices = verts_;
      best_.path.edges = edges_;
    }
    if (stopped()) return;
    const EdgeRank last = edges_.back();
    std::vector<std::pair<int, Incidence>> next;
    for (const auto& inc : g_.incident(x)) {
      if (inc.rank <= last || visited_[inc.neighbor]) continue;
      next.push_back({leave_bound(inc.rank, x), inc});
    }
    std::stable_sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const int room = g_.vertex_count() - 1 - depth;
    for (const auto& [bound, inc] : next) {
      if (depth + std::min(bound, room) <= best_.length) break;
      visited_[inc.neighbor] = true;
      verts_.push_back(inc.neighbor);
      edges_.push_back(inc.rank);
      dfs(inc.neighbor, depth + 1);
      verts_.pop_back();
      edges_.pop_back();
      visited_[inc.neighbor] = false;
      if (stopped()) return;
    }
  }

  const Graph& g_;
  std::int64_t budget_;
  std::vector<std::pair<int, int>> f_;
  std::vector<bool> visited_;
  std::vector<Vertex> verts_;
  std::vector<EdgeRank> edges_;
  int cap_ = 0;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  PathResult best_;
};

}  // namespace

PathResult longest_monotone_path(const Graph& g, std::int64_t node_budget) {
  return PathSearch(g, node_budget).run();
}

std::string mode_name(WalkMode mode) { return mode == WalkMode::path ? "path" : "trail"; }

std::optional<WalkMode> parse_mode(const std::string& name) {
  if (name == "path") return WalkMode::path;
  if (name == "trail") return WalkMode::trail;
  return std::nullopt;
}

int longest_walk(const Graph& g, WalkMode mode, std::int64_t node_budget) {
  if (mode == WalkMode::trail) return longest_monotone_trail(g).length;
  const auto r = longest_monotone_path(g, node_budget);
  if (!r.exact) throw InvalidInput("path search exceeded its node budget of " + std::to_string(node_budget));
  return r.length;
}

Graph apply_order(const Graph& g, const std::vector<EdgeRank>& order) {
  if (static_cast<int>(order.size()) != g.edge_count()) throw InvalidInput("ordering length differs from m");
  std::vector<EdgeRank> new_rank(order.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const EdgeRank e = order[r];
    if (e < 1 || e > g.edge_count() || new_rank[e - 1] != 0) throw InvalidInput("ordering is not a permutation");
    new_rank[e - 1] = static_cast<EdgeRank>(r + 1);
  }
  return reorder_edges(g, new_rank);
}

namespace {

// Walk state for a growing ordering: appending an edge at the next rank
// updates the longest trail or path in the prefix.
class TrailState {
 public:
  explicit TrailState(int n) : len_(n, 0) {}
  int value() const { return max_.back(); }
  void push(const Edge& e) {
    const int lu = len_[e.u], lv = len_[e.v];
    undo_.push_back({e.u, lu, e.v, lv});
    len_[e.v] = std::max(lv, lu + 1);
    len_[e.u] = std::max(lu, lv + 1);
    max_.push_back(std::max({max_.back(), len_[e.u], len_[e.v]}));
  }
  void pop() {
    const auto& u = undo_.back();
    len_[u.a] = u.la;
    len_[u.b] = u.lb;
    undo_.pop_back();
    max_.pop_back();
  }

 private:
  struct Undo {
    Vertex a;
    int la;
    Vertex b;
    int lb;
  };
  std::vector<int> len_;
  std::vector<Undo> undo_;
  std::vector<int> max_{0};
};

class PathState {
 public:
  explicit PathState(int n) : ends_(n) {
    if (n > 64) throw InvalidInput("path enumeration supports at most 64 vertices");
  }
  int value() const { return max_.back(); }
  void push(const Edge& e) {
    marks_.push_back(log_.size());
    int best = max_.back();
    const std::uint64_t bu = std::uint64_t{1} << e.u;
    const std::uint64_t bv = std::uint64_t{1} << e.v;
    const std::size_t nu = ends_[e.u].size();
    const std::size_t nv = ends_[e.v].size();
    for (std::size_t i = 0; i < nu; ++i) {
      const std::uint64_t m = ends_[e.u][i];
      if (!(m & bv)) best = std::max(best, add(e.v, m | bv));
    }
    for (std::size_t i = 0; i < nv; ++i) {
      const std::uint64_t m = ends_[e.v][i];
      if (!(m & bu)) best = std::max(best, add(e.u, m | bu));
    }
    best = std::max(best, add(e.v, bu | bv));
    add(e.u, bu | bv);
    max_.push_back(best);
  }
  void pop() {
    while (log_.size() > marks_.back()) {
      ends_[log_.back()].pop_back();
      log_.pop_back();
    }
    marks_.pop_back();
    max_.pop_back();
  }

 private:
  int add(Vertex end, std::uint64_t mask) {
    auto& list = ends_[end];
    if (std::find(list.begin(), list.end(), mask) == list.end()) {
      list.push_back(mask);
      log_.push_back(end);
    }
    return std::popcount(mask) - 1;
  }

  std::vector<std::vector<std::uint64_t>> ends_;
  std::vector<Vertex> log_;
  std::vector<std::size_t> marks_;
  std::vector<int> max_{0};
};

struct TaskResult {
  int best = 0;
  std::vector<EdgeRank> witness;
  std::int64_t orderings = 0;
  std::int64_t nodes = 0;
};

template <class State>
class Enumerator {
 public:
  Enumerator(const Graph& g, int floor, int seed_best) : g_(g), floor_(floor), state_(g.vertex_count()) {
    result_.best = seed_best;
    used_.assign(g.edge_count() + 1, false);
  }

  TaskResult run(const std::vector<EdgeRank>& prefix) {
    for (EdgeRank e : prefix) {
      if (!push(e)) {
        return result_;
      }
    }
    dfs();
    return result_;
  }

 private:
  bool push(EdgeRank e) {
    used_[e] = true;
    order_.push_back(e);
    state_.push(g_.edge(e));
    ++result_.nodes;
    return state_.value() < result_.best;
  }
  void pop() {
    state_.pop();
    used_[order_.back()] = false;
    order_.pop_back();
  }

  void dfs() {
    if (static_cast<int>(order_.size()) == g_.edge_count()) {
      ++result_.orderings;
      if (state_.value() < result_.best) {
        result_.best = state_.value();
        result_.witness = order_;
      }
      return;
    }
    for (EdgeRank e = 1; e <= g_.edge_count(); ++e) {
      if (used_[e]) continue;
      if (push(e)) dfs();
      pop();
      if (result_.best <= floor_) return;
    }
  }

  const Graph& g_;
  int floor_;
  State state_;
  std::vector<bool> used_;
  std::vector<EdgeRank> order_;
  TaskResult result_;
};

std::vector<EdgeRank> interval_order(const Graph& g) {
  const IntervalOrdering io = matching_interval_ordering(g);
  std::vector<EdgeRank> order;
  for (const auto& e : io.graph.edges()) {
    const auto r = g.find_edge(e.u, e.v);
    ALTITUDE_CHECK(r.has_value(), "interval ordering lost an edge");
    order.push_back(*r);
  }
  return order;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

AltitudeReport altitude_exact(const Graph& g, WalkMode mode, const ExactOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const int m = g.edge_count();
  const int n = g.vertex_count();
  if (m > options.threshold) {
    throw InvalidInput("m = " + std::to_string(m) + " exceeds the enumeration threshold " +
                       std::to_string(options.threshold) + "; use adversarial search for an upper bound");
  }
  if (mode == WalkMode::path && n > 64) throw InvalidInput("path enumeration supports at most 64 vertices");

  AltitudeReport report;
  report.label = options.label;
  report.mode = mode;
  report.exact = true;
  if (m == 0) {
    report.orderings = 1;
    return report;
  }

  // Proven floors: some vertex ends a trail of length >= 2m/n, and every
  // ordering holds a path of length floor(1/2 + sqrt(2m/n)).
  const int floor = mode == WalkMode::trail ? ceil_div(2 * m, n) : rodl_length(n, m);

  std::vector<EdgeRank> firsts;
  if (options.orbits) {
    for (const auto& orbit : *options.orbits) {
      if (orbit.empty()) continue;
      const auto r = g.find_edge(orbit.front().first, orbit.front().second);
      if (!r) throw InvalidInput("orbit representative is not an edge of the graph");
      firsts.push_back(*r);
    }
    std::sort(firsts.begin(), firsts.end());
  } else {
    for (EdgeRank e = 1; e <= m; ++e) firsts.push_back(e);
  }
  std::vector<std::vector<EdgeRank>> tasks;
  for (EdgeRank a : firsts) {
    if (m == 1) {
      tasks.push_back({a});
      continue;
    }
    for (EdgeRank b = 1; b <= m; ++b)
      if (b != a) tasks.push_back({a, b});
  }

  const std::vector<EdgeRank> seed_order = interval_order(g);
  const int seed_value = longest_walk(apply_order(g, seed_order), mode);
  report.upper = seed_value;
  report.witness = seed_order;

  std::vector<TaskResult> results(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), options.jobs, [&](int i) {
    if (mode == WalkMode::trail) {
      results[i] = Enumerator<TrailState>(g, floor, seed_value).run(tasks[i]);
    } else {
      results[i] = Enumerator<PathState>(g, floor, seed_value).run(tasks[i]);
    }
  });

  for (const auto& r : results) {
    report.orderings += r.orderings;
    report.nodes += r.nodes;
    if (!r.witness.empty() && r.best < report.upper) {
      report.upper = r.best;
      report.witness = r.witness;
    }
  }
  report.lower = report.upper;
  const int check = longest_walk(apply_order(g, report.witness), mode);
  ALTITUDE_CHECK(check == report.upper, "witness ordering does not reproduce the reported value");
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

namespace {

// Longest trail under `order` plus the share of vertices where one ends.
double trail_energy(const Graph& g, const std::vector<EdgeRank>& order, std::vector<int>& len) {
  std::fill(len.begin(), len.end(), 0);
  for (EdgeRank e : order) {
    const auto [u, v] = g.edge(e);
    const int lu = len[u], lv = len[v];
    len[v] = std::max(lv, lu + 1);
    len[u] = std::max(lu, lv + 1);
  }
  const int top = len.empty() ? 0 : *std::max_element(len.begin(), len.end());
  const auto ends = std::count(len.begin(), len.end(), top);
  return top + static_cast<double>(ends) / (static_cast<double>(len.size()) + 1.0);
}

}  // namespace

AltitudeReport adversarial_ordering(const Graph& g, const AnnealOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (options.iterations < 0) throw InvalidInput("iterations must be non-negative");
  if (!(options.cooling > 0.0 && options.cooling <= 1.0)) throw InvalidInput("cooling must lie in (0, 1]");
  if (!(options.t0 >= 0.0)) throw InvalidInput("t0 must be non-negative");
  const int m = g.edge_count();

  AltitudeReport report;
  report.label = options.label;
  report.mode = WalkMode::path;
  report.lower = rodl_length(g.vertex_count(), m);

  std::vector<EdgeRank> order(m);
  for (int r = 0; r < m; ++r) order[r] = r + 1;
  std::vector<int> len(g.vertex_count());

  auto verify = [&](const std::vector<EdgeRank>& candidate) {
    const auto r = longest_monotone_path(apply_order(g, candidate), options.path_budget);
    report.nodes += r.nodes;
    return r.exact ? std::optional<int>(r.length) : std::nullopt;
  };

  const auto initial = verify(order);
  if (!initial) throw InvalidInput("path search on the initial ordering exceeded its budget");
  report.upper = *initial;
  report.witness = order;
  report.orderings = 1;

  Rng rng(options.seed);
  double energy = trail_energy(g, order, len);
  double best_energy = energy;
  double temperature = options.t0;
  for (std::int64_t it = 0; it < options.iterations && m >= 2; ++it) {
    const auto a = rng.below(m);
    auto b = rng.below(m - 1);
    if (b >= a) ++b;
    std::swap(order[a], order[b]);
    ++report.orderings;
    const double next = trail_energy(g, order, len);
    const double delta = next - energy;
    const bool accept = delta <= 0.0 || (temperature > 0.0 && rng.uniform01() < std::exp(-delta / temperature));
    if (accept) {
      energy = next;
      if (energy < best_energy) {
        best_energy = energy;
        if (const auto v = verify(order); v && *v < report.upper) {
          report.upper = *v;
          report.witness = order;
        }
      }
    } else {
      std::swap(order[a], order[b]);
    }
    temperature *= options.cooling;
  }

  ALTITUDE_CHECK(longest_walk(apply_order(g, report.witness), WalkMode::path, options.path_budget) == report.upper,
                 "adversarial witness does not reproduce its value");
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

Distribution summarize(std::vector<int> values) {
  Distribution d;
  d.count = static_cast<int>(values.size());
  if (values.empty()) return d;
  std::sort(values.begin(), values.end());
  auto rank = [&](double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
    return values[std::max<std::size_t>(k, 1) - 1];
  };
  double sum = 0.0;
  for (int v : values) sum += v;
  d.mean = sum / static_cast<double>(values.size());
  d.min = values.front();
  d.q1 = rank(0.25);
  d.median = rank(0.5);
  d.q3 = rank(0.75);
  d.max = values.back();
  return d;
}

OrderingStats random_ordering_stats(const Graph& g, int trials, std::uint64_t seed, std::int64_t path_budget,
                                    int jobs) {
  if (trials < 1) throw InvalidInput("trials must be at least 1");
  std::vector<int> trail(trials), greedy(trials), search(trials);
  std::vector<char> exact(trials, 0);
  parallel_for(trials, jobs, [&](int t) {
    if (g.edge_count() == 0) {
      exact[t] = 1;
      return;
    }
    const Graph h = reorder_edges(g, splitmix64(seed + static_cast<std::uint64_t>(t)));
    trail[t] = longest_monotone_trail(h).length;
    greedy[t] = long_path_rodl(h).length();
    const auto r = longest_monotone_path(h, path_budget);
    search[t] = r.length;
    exact[t] = r.exact ? 1 : 0;
  });
  OrderingStats out;
  out.trials = trials;
  out.trail = summarize(trail);
  out.path_greedy = summarize(greedy);
  out.path_search = summarize(search);
  out.path_exact_runs = static_cast<int>(std::count(exact.begin(), exact.end(), 1));
  return out;
}

}  // namespace altitude
