#include "altitude/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "altitude/bounds.hpp"
#include "altitude/error.hpp"
#include "altitude/graph.hpp"
#include "altitude/height_table.hpp"
#include "altitude/hole_sequence.hpp"
#include "altitude/oracle.hpp"
#include "altitude/path_engine.hpp"
#include "altitude/rng.hpp"
#include "altitude/token_game.hpp"

namespace altitude {

namespace {

// Pinned tolerances and workloads.
constexpr int kRodlOrderings = 1000;
constexpr int kPedestrianGraphs = 1000;
constexpr int kExtensionInstances = 10'000;
constexpr int kHoleInstances = 500;
constexpr int kTriangularMaxN = 300;
constexpr int kRandomGames = 1000;
constexpr int kDeletionRuns = 100;
constexpr double kBoundRelTol = 1e-9;

// altitude_exact(K_4, path), from a separate brute force over all 720
// orderings that enumerates every vertex sequence.
constexpr int kGoldenK4Path = 2;

// guaranteed_bounds(n, n - 1), evaluated by hand at 40 digits.
struct FrozenBounds {
  int n;
  int rodl_floor;
  double s;
  double dense;
  double clique;
  double ghat;
};
constexpr FrozenBounds kFrozen[] = {
    {100, 10, 81.135068218051716, -79.839867681437375, 0.30480577337754967, 6582.8992947479057},
    {10'000, 100, 597.80829391927813, -592.63459921260826, 4.136850804479278, 357374.75627867803},
    {1'000'000, 1000, 3635.9907982461632, -3566.2528648946452, 68.015676024736762, 13220429.084930771},
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Collects failures; the first message is kept for the report line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  bool ok() const { return failures_ == 0; }
  Outcome finish(const std::string& pass_note) const {
    if (ok()) return {true, pass_note};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed, first: " + first_};
  }

 private:
  long long checks_ = 0;
  long long failures_ = 0;
  std::string first_;
};

using TrailFn = std::function<int(const Graph&)>;

TrailFn trail_function(Fault fault) {
  if (fault == Fault::trail_off_by_one) {
    return [](const Graph& g) { return longest_monotone_trail(g).length + 1; };
  }
  return [](const Graph& g) { return longest_monotone_trail(g).length; };
}

Graph random_gnp(Rng& rng, int n, double p) {
  return reorder_edges(generate({FamilyKind::gnp, n, p}, rng.next()), rng.next());
}

Outcome criterion1(const SuiteOptions& o) {
  Tally tally;
  const TrailFn trail = trail_function(o.fault);
  std::vector<std::pair<int, int>> cases{{3, 3}, {4, 3}};
  if (o.level == SuiteLevel::full) cases.push_back({5, 5});
  std::ostringstream note;
  for (const auto& [n, expected] : cases) {
    const FamilySpec fam{FamilyKind::complete, n, 0.0};
    const Graph g = generate(fam);
    ExactOptions opt;
    opt.jobs = o.jobs;
    opt.orbits = known_edge_orbits(fam);
    const auto pruned = altitude_exact(g, WalkMode::trail, opt);
    opt.orbits.reset();
    const auto full = altitude_exact(g, WalkMode::trail, opt);
    const std::string tag = "K_" + std::to_string(n);
    tally.expect(pruned.exact && pruned.upper == expected,
                 tag + " trail altitude " + std::to_string(pruned.upper) + ", expected " + std::to_string(expected));
    tally.expect(full.upper == pruned.upper, tag + " symmetry pruning disagrees with full enumeration");
    tally.expect(trail(apply_order(g, pruned.witness)) == pruned.upper, tag + " witness ordering does not re-verify");
    note << tag << "=" << pruned.upper << " ";
  }
  return tally.finish(note.str() + "(pruned and unpruned agree)");
}

Outcome criterion2(const SuiteOptions&) {
  Tally tally;
  const Graph k25 = generate({FamilyKind::complete, 25, 0.0});
  const int t = rodl_length(25, k25.edge_count());
  tally.expect(t == 5, "floor(1/2 + sqrt(24)) evaluated to " + std::to_string(t));
  int shortest = k25.vertex_count();
  for (int i = 0; i < kRodlOrderings; ++i) {
    const Graph g = reorder_edges(k25, splitmix64(2000 + static_cast<std::uint64_t>(i)));
    const MonotonePath p = long_path_rodl(g);
    shortest = std::min(shortest, p.length());
    tally.expect(p.length() >= 5, "ordering " + std::to_string(i) + " gave length " + std::to_string(p.length()));
    tally.expect(is_monotone_path(g, p), "ordering " + std::to_string(i) + " returned an invalid path");
  }
  return tally.finish(std::to_string(kRodlOrderings) + " orderings, shortest path " + std::to_string(shortest) + " >= 5");
}

Outcome criterion3(const SuiteOptions&) {
  Tally tally;
  const double ps[] = {0.1, 0.5, 0.9};
  for (int i = 0; i < kPedestrianGraphs; ++i) {
    Rng rng = trial_rng(3, static_cast<std::uint64_t>(i));
    const int n = rng.uniform_int(1, 50);
    const Graph g = random_gnp(rng, n, ps[i % 3]);
    const auto trails = pedestrian_trails(g);
    long long sum = 0;
    int longest = 0;
    std::vector<int> uses(g.edge_count() + 1, 0);
    for (const auto& tr : trails) {
      sum += tr.length();
      longest = std::max(longest, tr.length());
      for (EdgeRank e : tr.edges) ++uses[e];
      tally.expect(is_monotone_trail(g, tr), "graph " + std::to_string(i) + " produced an invalid trail");
    }
    const int m = g.edge_count();
    const int ceil_d = (2 * m + n - 1) / n;
    tally.expect(sum == 2LL * m, "graph " + std::to_string(i) + ": trail lengths sum to " + std::to_string(sum) +
                                     ", 2m = " + std::to_string(2 * m));
    tally.expect(longest >= ceil_d, "graph " + std::to_string(i) + ": longest trail below ceil(d)");
    for (EdgeRank e = 1; e <= m; ++e) {
      tally.expect(uses[e] == 2, "graph " + std::to_string(i) + ": edge " + std::to_string(e) + " not in two trails");
    }
  }
  return tally.finish(std::to_string(kPedestrianGraphs) + " graphs, sum = 2m and max >= ceil(d) throughout");
}

Outcome criterion4(const SuiteOptions&) {
  Tally tally;
  int instances = 0;
  for (std::uint64_t trial = 0; instances < kExtensionInstances; ++trial) {
    Rng rng = trial_rng(4, trial);
    const int n = rng.uniform_int(3, 30);
    const Graph g = random_gnp(rng, n, 0.2 + 0.8 * rng.uniform01());
    if (g.edge_count() == 0) continue;
    const HeightTable table(g);
    const EdgeRank e = static_cast<EdgeRank>(rng.below(static_cast<std::uint64_t>(g.edge_count()))) + 1;
    const Edge& ed = g.edge(e);
    MonotonePath path = edge_path(g, table, e, rng.bernoulli(0.5) ? ed.u : ed.v);
    while (path.length() < path.height && instances < kExtensionInstances) {
      const int k = path.length();
      const int r = path.height;
      ++instances;
      const std::string at = "trial " + std::to_string(trial) + " k=" + std::to_string(k) + " r=" + std::to_string(r);
      try {
        const MonotonePath next = extend_once(g, table, path);
        tally.expect(next.length() == k + 1, at + ": length did not grow by one");
        tally.expect(next.height >= r - k && next.height <= r - 1, at + ": new height outside [r-k, r-1]");
        tally.expect(next.height == table.height(next.last_edge()), at + ": reported height is not the table height");
        tally.expect(next.last_edge() > path.last_edge(), at + ": rank did not increase");
        tally.expect(is_monotone_path(g, next), at + ": invalid path");
        path = next;
      } catch (const std::exception& ex) {
        tally.expect(false, at + ": extension failed: " + ex.what());
        break;
      }
    }
  }
  return tally.finish(std::to_string(instances) + " extensions with k < r, all reached height >= r-k");
}

Outcome criterion5(const SuiteOptions&) {
  Tally tally;
  int edges_checked = 0;
  int transfers = 0;
  int worst = 0;
  for (int i = 0; i < kHoleInstances; ++i) {
    Rng rng = trial_rng(5, static_cast<std::uint64_t>(i));
    const int n = rng.uniform_int(3, 12);
    const Graph g = random_gnp(rng, n, 0.2 + 0.8 * rng.uniform01());
    const int s = rng.uniform_int(0, std::min(3, n - 2));
    std::vector<Vertex> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    rng.shuffle(std::span<Vertex>(all));
    const std::vector<Vertex> removed(all.begin(), all.begin() + s);
    const std::string at = "instance " + std::to_string(i);
    try {
      const auto seq = hole_sequence(g, removed);
      const std::string err = validate_hole_sequence(g, seq);
      tally.expect(err.empty(), at + ": " + err);
      const GameTranscript t = transcript_from_holes(seq);
      const std::string terr = validate_transcript(t, s);
      tally.expect(terr.empty(), at + ": induced game illegal: " + terr);
      transfers += t.transfer_count();
      for (const auto& d : measure_drops(g, removed)) {
        ++edges_checked;
        worst = std::max(worst, d.drop);
        tally.expect(d.drop <= d.critical_height, at + ": drop above critical interval for edge " + std::to_string(d.edge));
      }
    } catch (const std::exception& ex) {
      tally.expect(false, at + ": " + ex.what());
    }
  }
  std::ostringstream note;
  note << kHoleInstances << " (G,S), " << edges_checked << " edges, " << transfers << " induced transfers, max drop "
       << worst;
  return tally.finish(note.str());
}

Outcome criterion6(const SuiteOptions&) {
  Tally tally;
  auto check_gains = [&](const GameTranscript& t, int n, const std::string& at) {
    const int l = transfer_budget_log(n);
    tally.expect(l >= 62 || t.transfer_count() <= (1LL << l), at + ": more than 2^l transfers");
    const long long bound = column_gain_bound(t.total_tokens(), l);
    for (int gain : column_gains(t)) tally.expect(gain <= bound, at + ": column gain " + std::to_string(gain) + " > " +
                                                                     std::to_string(bound));
  };

  int games = 0;
  for (int s = 1; s <= 3; ++s) {
    for (int n = s; n <= kTriangularMaxN; ++n) {
      int k = 0;
      while (s * (k + 1) * (k + 2) / 2 <= n) ++k;
      const std::string at = "triangular n=" + std::to_string(n) + " s=" + std::to_string(s);
      try {
        const TriangularGame game = triangular_strategy(n, s);
        ++games;
        tally.expect(game.k == k, at + ": k = " + std::to_string(game.k) + ", expected " + std::to_string(k));
        tally.expect(game.final_count == s * k, at + ": final column holds " + std::to_string(game.final_count));
        tally.expect(s * k >= std::sqrt(2.0 * n * s) - 1.5 * s, at + ": s*k below sqrt(2ns) - 3s/2");
        const std::string err = validate_transcript(game.transcript, s);
        tally.expect(err.empty(), at + ": " + err);
        check_gains(game.transcript, n, at);
      } catch (const std::exception& ex) {
        tally.expect(false, at + ": " + ex.what());
      }
    }
  }
  for (int i = 0; i < kRandomGames; ++i) {
    Rng rng = trial_rng(6, static_cast<std::uint64_t>(i));
    const int n = rng.uniform_int(2, 64);
    const int s = rng.uniform_int(1, 8);
    const std::string at = "random game " + std::to_string(i);
    try {
      const TokenBoard board = random_board(n, s, 2 * s + rng.uniform_int(0, n), rng.next());
      PlayOptions po;
      po.per_column_limit = s;
      const GameTranscript t = play(board, random_strategy(rng.next(), 30LL * n, 0.2 + 0.6 * rng.uniform01()), po);
      ++games;
      const std::string err = validate_transcript(t, s);
      tally.expect(err.empty(), at + ": " + err);
      check_gains(t, n, at);
    } catch (const std::exception& ex) {
      tally.expect(false, at + ": " + ex.what());
    }
  }
  return tally.finish(std::to_string(games) + " games, triangular counts exact, all gains within 1 + 2l*ceil(sqrt(2m))");
}

Outcome criterion7(const SuiteOptions& o) {
  Tally tally;
  const FamilySpec fam{FamilyKind::complete, 4, 0.0};
  const Graph g = generate(fam);
  const int lower = rodl_length(4, g.edge_count());
  const IntervalOrdering io = matching_interval_ordering(g);
  const int upper = static_cast<int>(io.intervals.size());
  tally.expect(lower == 2, "lower bracket evaluated to " + std::to_string(lower));
  tally.expect(longest_monotone_trail(io.graph).length <= upper, "interval ordering trail exceeds its class count");
  ExactOptions opt;
  opt.jobs = o.jobs;
  opt.orbits = known_edge_orbits(fam);
  const auto r = altitude_exact(g, WalkMode::path, opt);
  tally.expect(r.exact && r.upper >= lower && r.upper <= upper,
               "path altitude " + std::to_string(r.upper) + " outside [" + std::to_string(lower) + ", " +
                   std::to_string(upper) + "]");
  tally.expect(r.upper == kGoldenK4Path, "path altitude " + std::to_string(r.upper) + " differs from the golden value");
  tally.expect(longest_monotone_path(apply_order(g, r.witness)).length == r.upper, "witness ordering does not re-verify");
  return tally.finish("f(K_4) = " + std::to_string(r.upper) + " in [" + std::to_string(lower) + ", " +
                          std::to_string(upper) + "], matches golden value");
}

Outcome criterion8(const SuiteOptions&) {
  Tally tally;
  auto close = [](double got, double want) { return std::abs(got - want) <= kBoundRelTol * std::abs(want); };
  for (const auto& f : kFrozen) {
    const BoundReport b = guaranteed_bounds(f.n, f.n - 1.0);
    const std::string at = "n=" + std::to_string(f.n);
    tally.expect(b.rodl_floor == f.rodl_floor, at + ": rodl floor");
    tally.expect(close(b.s, f.s), at + ": s");
    tally.expect(b.dense_bound && close(*b.dense_bound, f.dense), at + ": dense-graph bound");
    tally.expect(!b.dense_positive, at + ": dense-graph bound flagged positive");
    tally.expect(close(b.clique_bound, f.clique), at + ": clique bound");
    tally.expect(close(b.ghat_upper, f.ghat), at + ": token-game bound");
  }
  const Graph k50 = generate({FamilyKind::complete, 50, 0.0});
  constexpr int s = 3;
  int min_slack = 1 << 30;
  for (int i = 0; i < kDeletionRuns; ++i) {
    const Graph g = reorder_edges(k50, splitmix64(8000 + static_cast<std::uint64_t>(i)));
    const DeletionRun run = long_path_delete(g, s);
    int d = 0;
    for (int x : run.drops) d = std::max(d, x);
    const long long guarantee = s * ((run.start_height - 1) / (s * (s + 1) / 2 + d)) + 1;
    const std::string at = "deletion run " + std::to_string(i);
    tally.expect(guarantee == run.guarantee, at + ": reported guarantee differs from the formula");
    tally.expect(run.path.length() >= guarantee, at + ": length " + std::to_string(run.path.length()) + " < " +
                                                     std::to_string(guarantee));
    tally.expect(is_monotone_path(g, run.path), at + ": invalid path");
    min_slack = std::min<long long>(min_slack, run.path.length() - guarantee);
  }
  return tally.finish("bound formulas match frozen values (dense bound negative, as expected at these n); " +
                          std::to_string(kDeletionRuns) + " deletion runs meet their guarantee (min slack " +
                          std::to_string(min_slack) + ")");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SuiteOptions& options,
                                            const std::function<void(const CriterionResult&)>& report) {
  using Fn = Outcome (*)(const SuiteOptions&);
  const std::pair<const char*, Fn> criteria[] = {
      {"exact trail altitude of K_3, K_4, K_5", criterion1},
      {"long_path_rodl on K_25 reaches floor(1/2 + sqrt(d))", criterion2},
      {"pedestrian conservation", criterion3},
      {"single extension step keeps height >= r - k", criterion4},
      {"hole arrays, induced game and drop bound", criterion5},
      {"token-game counts and net-gain bound", criterion6},
      {"K_4 path altitude bracket and golden value", criterion7},
      {"bound formulas and deletion guarantee", criterion8},
  };
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& [name, fn] : criteria) {
    ++id;
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto started = std::chrono::steady_clock::now();
    try {
      const Outcome o = fn(options);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << " [" << r.seconds << " s]";
  return os.str();
}

}  // namespace altitude
