#include "altitude/cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "altitude/acceptance.hpp"
#include "altitude/bounds.hpp"
#include "altitude/error.hpp"
#include "altitude/graph.hpp"
#include "altitude/graph_io.hpp"
#include "altitude/height_table.hpp"
#include "altitude/hole_sequence.hpp"
#include "altitude/oracle.hpp"
#include "altitude/parallel.hpp"
#include "altitude/path_engine.hpp"
#include "altitude/rng.hpp"
#include "altitude/token_game.hpp"
#include "json.hpp"

namespace altitude {

namespace {

using Json = nlohmann::ordered_json;

struct GraphSource {
  std::string file;
  std::string family;
  int n = 0;
  double p = 0.5;
};

void add_graph_options(CLI::App* cmd, GraphSource& src) {
  auto* file = cmd->add_option("--graph", src.file, "graph JSON file");
  auto* fam = cmd->add_option("--family", src.family, "complete|hypercube|gnp|path|cycle|cycle_join|star");
  file->excludes(fam);
  cmd->add_option("--n", src.n, "family size (vertices; dimension for hypercube; cycle length for cycle_join; leaves for star)");
  cmd->add_option("--p", src.p, "edge probability for gnp")->capture_default_str();
}

std::optional<FamilySpec> family_of(const GraphSource& src) {
  if (src.family.empty()) return std::nullopt;
  const auto kind = parse_family(src.family);
  if (!kind) throw InvalidInput("unknown family '" + src.family + "'");
  return FamilySpec{*kind, src.n, src.p};
}

Graph load_source(const GraphSource& src, std::uint64_t seed) {
  if (!src.file.empty()) return load_graph(src.file);
  if (const auto fam = family_of(src)) return generate(*fam, seed);
  throw InvalidInput("give --graph FILE or --family NAME --n N");
}

Graph ordered(const Graph& base, const std::string& order, std::uint64_t seed) {
  if (order == "given") return base;
  if (order == "random") return reorder_edges(base, seed);
  throw InvalidInput("--order must be 'given' or 'random'");
}

// Every report starts with the command line and the resolved option values.
Json config_of(const CLI::App* cmd, const std::vector<std::string>& args) {
  Json options = Json::object();
  for (const CLI::Option* opt : cmd->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
    const std::string name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (!opt->get_expected_max() || res.empty()) {
        options[name] = true;
      } else {
        options[name] = res.size() == 1 ? Json(res.front()) : Json(res);
      }
    } else if (!opt->get_default_str().empty()) {
      options[name] = opt->get_default_str();
    }
  }
  Json config;
  std::string name = cmd->get_name();
  for (const CLI::App* up = cmd->get_parent(); up && up->get_parent(); up = up->get_parent()) name = up->get_name() + " " + name;
  config["command"] = name;
  config["args"] = args;
  config["options"] = options;
  return Json{{"config", config}};
}

class Emitter {
 public:
  Emitter(std::ostream& fallback, const std::string& path, const std::string& format) : format_(format) {
    if (format_ != "json" && format_ != "csv") throw InvalidInput("--format must be 'json' or 'csv'");
    if (path.empty()) {
      out_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidInput("cannot open output file " + path);
      out_ = file_.get();
    }
  }

  void header(const Json& config) {
    if (format_ == "csv") {
      *out_ << "# " << config.dump() << '\n';
    } else {
      *out_ << config.dump() << '\n';
    }
  }

  void row(const Json& record) {
    if (format_ == "json") {
      *out_ << record.dump() << '\n';
      return;
    }
    if (!wrote_columns_) {
      bool first = true;
      for (const auto& [key, _] : record.items()) {
        *out_ << (first ? "" : ",") << key;
        first = false;
      }
      *out_ << '\n';
      wrote_columns_ = true;
    }
    bool first = true;
    for (const auto& [_, value] : record.items()) {
      *out_ << (first ? "" : ",") << cell(value);
      first = false;
    }
    *out_ << '\n';
  }

 private:
  static std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ";") + cell(x);
      return s;
    }
    if (v.is_null()) return "";
    return v.dump();
  }

  std::string format_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_ = nullptr;
  bool wrote_columns_ = false;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("altitude", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("ALTITUDE_LOG");
  const std::string level = env ? env : "error";
  if (level == "error") {
    log->set_level(spdlog::level::err);
  } else if (level == "info") {
    log->set_level(spdlog::level::info);
  } else if (level == "debug") {
    log->set_level(spdlog::level::debug);
  } else {
    throw InvalidInput("ALTITUDE_LOG must be error, info or debug");
  }
  return log;
}

void check_emitted_path(const Graph& g, const MonotonePath& p) {
  const std::string err = check_path(g, p);
  if (!err.empty()) detail::fail_internal("emitted path is not monotone: " + err);
}

Json report_json(const AltitudeReport& r) {
  Json j;
  j["mode"] = mode_name(r.mode);
  j["value"] = r.value() ? Json(*r.value()) : Json(nullptr);
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["witness"] = r.witness;
  j["orderings"] = r.orderings;
  j["nodes"] = r.nodes;
  j["seconds"] = r.seconds;
  return j;
}

void write_transcript(const GameTranscript& t, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot open transcript file " + path);
  f << transcript_to_json(t).dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotone paths in edge-ordered graphs: height tables, token games and exact oracles", "altitude"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::uint64_t seed = 1;
  int jobs = default_jobs();
  std::string output;
  std::string format = "json";
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    cmd->add_option("--output", output, "write the report here instead of stdout");
  };
  auto tabular = [&](CLI::App* cmd) { cmd->add_option("--format", format, "json (lines) or csv")->capture_default_str(); };
  auto parallel = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  };

  GraphSource src;
  std::string order = "given";

  auto* heights = app.add_subcommand("heights", "print the height table");
  add_graph_options(heights, src);
  common(heights);
  heights->add_option("--order", order, "given|random edge order")->capture_default_str();

  std::string algo = "rodl";
  int s_param = 1;
  int trials = 1;
  auto* extend = app.add_subcommand("extend", "long monotone paths from the height table");
  add_graph_options(extend, src);
  common(extend);
  tabular(extend);
  parallel(extend);
  extend->add_option("--algo", algo, "rodl|delete")->capture_default_str();
  extend->add_option("--s", s_param, "deletion block size for --algo delete")->capture_default_str();
  extend->add_option("--trials", trials, "number of orderings")->capture_default_str()->check(CLI::PositiveNumber);
  auto* extend_order = extend->add_option("--order", order, "given|random edge order per trial (default random)");

  std::string mode = "trail";
  int threshold = 10;
  bool no_symmetry = false;
  auto* exact = app.add_subcommand("exact", "altitude by enumerating every edge ordering");
  add_graph_options(exact, src);
  common(exact);
  parallel(exact);
  exact->add_option("--mode", mode, "path|trail")->capture_default_str();
  exact->add_option("--threshold", threshold, "largest m enumerated")->capture_default_str();
  exact->add_flag("--no-symmetry", no_symmetry, "enumerate every rank-1 edge");

  AnnealOptions anneal;
  auto* adversarial = app.add_subcommand("adversarial", "annealing search for orderings with short monotone paths");
  add_graph_options(adversarial, src);
  common(adversarial);
  adversarial->add_option("--iterations", anneal.iterations)->capture_default_str();
  adversarial->add_option("--t0", anneal.t0, "initial temperature")->capture_default_str();
  adversarial->add_option("--cooling", anneal.cooling, "geometric cooling factor")->capture_default_str();
  adversarial->add_option("--path-budget", anneal.path_budget, "node budget per exact path check")->capture_default_str();

  auto* token = app.add_subcommand("token", "token games");
  token->require_subcommand(1);
  int tn = 0, ts = 1, nmax = 30, smax = 3;
  std::string transcript_path;
  std::vector<Vertex> removed;
  auto* triangular = token->add_subcommand("triangular", "play the triangular construction");
  triangular->add_option("--n", tn, "columns")->required();
  triangular->add_option("--s", ts, "tokens per column at the start")->required();
  triangular->add_option("--transcript", transcript_path, "write the transcript JSON here");
  common(triangular);
  auto* sweep = token->add_subcommand("sweep", "triangular construction over an (n, s) grid");
  sweep->add_option("--nmax", nmax)->capture_default_str();
  sweep->add_option("--smax", smax)->capture_default_str();
  common(sweep);
  tabular(sweep);
  parallel(sweep);
  auto* from_graph = token->add_subcommand("from-graph", "hole arrays and the induced game for deleting S");
  add_graph_options(from_graph, src);
  from_graph->add_option("--delete", removed, "comma-separated vertices of S")->delimiter(',');
  from_graph->add_option("--transcript", transcript_path, "write the induced transcript JSON here");
  from_graph->add_option("--order", order, "given|random edge order")->capture_default_str();
  common(from_graph);

  std::string kind = "orderings";
  std::int64_t path_budget = 200'000;
  int max_orderings_m = 8;
  auto* experiment = app.add_subcommand("experiment", "batch measurements");
  add_graph_options(experiment, src);
  common(experiment);
  tabular(experiment);
  parallel(experiment);
  experiment->add_option("--kind", kind, "orderings|compare|drops")->capture_default_str();
  experiment->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--s", s_param, "deletion size for compare and drops")->capture_default_str();
  experiment->add_option("--path-budget", path_budget, "node budget per path search")->capture_default_str();
  experiment->add_option("--exhaustive-m", max_orderings_m, "drops: enumerate every ordering when m is at most this")
      ->capture_default_str();

  std::string level = "quick";
  std::vector<int> criteria;
  std::string fault = "none";
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--level", level, "quick|full")->capture_default_str();
  verify->add_option("--criterion", criteria, "run only these criteria (repeatable)");
  verify->add_option("--inject-fault", fault, "none|trail-off-by-one (harness self-test)")->capture_default_str();
  parallel(verify);
  common(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    const auto log = make_logger(err);

    if (heights->parsed()) {
      const Graph g = ordered(load_source(src, seed), order, seed);
      const HeightTable table(g);
      Emitter em(out, output, "json");
      em.header(config_of(heights, args));
      Json rows = Json::array();
      for (const auto& row : table.rows()) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(cell ? Json(*cell) : Json(nullptr));
        rows.push_back(r);
      }
      Json hs = Json::object();
      for (EdgeRank e = 1; e <= g.edge_count(); ++e) hs[std::to_string(e)] = table.height(e);
      em.row(Json{{"n", g.vertex_count()}, {"m", g.edge_count()}, {"edges", g.edge_pairs()}, {"rows", rows},
                  {"heights", hs}});
      return 0;
    }

    if (extend->parsed()) {
      if (extend_order->count() == 0) order = "random";
      if (algo != "rodl" && algo != "delete") throw InvalidInput("--algo must be 'rodl' or 'delete'");
      const Graph base = load_source(src, seed);
      Emitter em(out, output, format);
      Json config = config_of(extend, args);
      config["config"]["options"]["order"] = order;
      em.header(config);
      std::vector<Json> rows(trials);
      parallel_for(trials, jobs, [&](int t) {
        const Graph g = ordered(base, order, splitmix64(seed + static_cast<std::uint64_t>(t)));
        Json row{{"trial", t}};
        if (algo == "rodl") {
          const MonotonePath p = long_path_rodl(g);
          check_emitted_path(g, p);
          const int t_floor = rodl_length(g.vertex_count(), g.edge_count());
          if (p.length() < t_floor) detail::fail_internal("path shorter than floor(1/2 + sqrt(d))");
          row["length"] = p.length();
          row["guarantee"] = t_floor;
          row["drops"] = Json::array();
          row["path"] = p.vertices;
        } else {
          const DeletionRun run = long_path_delete(g, s_param);
          check_emitted_path(g, run.path);
          if (run.path.length() < run.guarantee) detail::fail_internal("deletion run fell short of its guarantee");
          row["length"] = run.path.length();
          row["guarantee"] = run.guarantee;
          row["drops"] = run.drops;
          row["path"] = run.path.vertices;
        }
        rows[t] = std::move(row);
      });
      for (const auto& r : rows) em.row(r);
      log->info("extend: {} trials", trials);
      return 0;
    }

    if (exact->parsed()) {
      const auto m = parse_mode(mode);
      if (!m) throw InvalidInput("--mode must be 'path' or 'trail'");
      const Graph g = load_source(src, seed);
      ExactOptions opt;
      opt.threshold = threshold;
      opt.jobs = jobs;
      if (const auto fam = family_of(src); fam && !no_symmetry) opt.orbits = known_edge_orbits(*fam);
      Emitter em(out, output, "json");
      em.header(config_of(exact, args));
      const AltitudeReport r = altitude_exact(g, *m, opt);
      Json j = report_json(r);
      j["symmetry"] = opt.orbits.has_value();
      em.row(j);
      log->info("exact: {} orderings in {:.3f} s", r.orderings, r.seconds);
      return 0;
    }

    if (adversarial->parsed()) {
      const Graph g = load_source(src, seed);
      anneal.seed = seed;
      Emitter em(out, output, "json");
      em.header(config_of(adversarial, args));
      em.row(report_json(adversarial_ordering(g, anneal)));
      return 0;
    }

    if (triangular->parsed()) {
      const TriangularGame game = triangular_strategy(tn, ts);
      const std::string bad = validate_transcript(game.transcript, ts);
      if (!bad.empty()) detail::fail_internal("triangular transcript invalid: " + bad);
      write_transcript(game.transcript, transcript_path);
      Emitter em(out, output, "json");
      em.header(config_of(triangular, args));
      em.row(Json{{"n", tn},
                  {"s", ts},
                  {"k", game.k},
                  {"final_column", game.final_column},
                  {"final_count", game.final_count},
                  {"lower_formula", std::sqrt(2.0 * tn * ts) - 1.5 * ts},
                  {"steps", game.transcript.step_count()},
                  {"transfers", game.transcript.transfer_count()}});
      return 0;
    }

    if (sweep->parsed()) {
      if (smax < 1 || nmax < smax) throw InvalidInput("sweep needs 1 <= smax <= nmax");
      std::vector<std::pair<int, int>> grid;
      for (int s = 1; s <= smax; ++s)
        for (int n = s; n <= nmax; ++n) grid.push_back({n, s});
      std::vector<Json> rows(grid.size());
      parallel_for(static_cast<int>(grid.size()), jobs, [&](int i) {
        const auto [n, s] = grid[i];
        const TriangularGame game = triangular_strategy(n, s);
        const std::string bad = validate_transcript(game.transcript, s);
        if (!bad.empty()) detail::fail_internal("triangular transcript invalid: " + bad);
        const int l = transfer_budget_log(n);
        int gain = 0;
        for (int x : column_gains(game.transcript)) gain = std::max(gain, x);
        rows[i] = Json{{"n", n},
                       {"s", s},
                       {"k", game.k},
                       {"final_count", game.final_count},
                       {"lower_formula", std::sqrt(2.0 * n * s) - 1.5 * s},
                       {"max_gain", gain},
                       {"gain_bound", column_gain_bound(game.transcript.total_tokens(), l)},
                       {"upper_bound", n >= 2 ? token_game_upper(n, s) : 0.0}};
      });
      Emitter em(out, output, format);
      em.header(config_of(sweep, args));
      for (const auto& r : rows) em.row(r);
      return 0;
    }

    if (from_graph->parsed()) {
      const Graph g = ordered(load_source(src, seed), order, seed);
      const HoleArraySequence seq = hole_sequence(g, removed);
      const std::string bad = validate_hole_sequence(g, seq);
      if (!bad.empty()) detail::fail_internal("hole sequence invalid: " + bad);
      const GameTranscript t = transcript_from_holes(seq);
      const std::string tbad = validate_transcript(t, static_cast<int>(removed.size()));
      if (!tbad.empty()) detail::fail_internal("induced game invalid: " + tbad);
      write_transcript(t, transcript_path);
      Json drops = Json::array();
      int max_drop = 0;
      for (const auto& d : measure_drops(g, removed)) {
        max_drop = std::max(max_drop, d.drop);
        drops.push_back(Json{{"edge", d.edge},
                             {"height_full", d.height_full},
                             {"height_reduced", d.height_reduced},
                             {"drop", d.drop},
                             {"critical_height", d.critical_height}});
      }
      Emitter em(out, output, "json");
      em.header(config_of(from_graph, args));
      em.row(Json{{"n", g.vertex_count()},
                  {"s", removed.size()},
                  {"columns", seq.column_count()},
                  {"steps", t.step_count()},
                  {"tokens", t.total_tokens()},
                  {"transfers", t.transfer_count()},
                  {"max_drop", max_drop},
                  {"drops", drops}});
      return 0;
    }

    if (experiment->parsed()) {
      const Graph base = load_source(src, seed);
      Emitter em(out, output, format);
      em.header(config_of(experiment, args));
      if (kind == "orderings") {
        const OrderingStats st = random_ordering_stats(base, trials, seed, path_budget, jobs);
        auto line = [&](const char* metric, const Distribution& d) {
          em.row(Json{{"metric", metric}, {"trials", st.trials}, {"mean", d.mean}, {"min", d.min}, {"q1", d.q1},
                      {"median", d.median}, {"q3", d.q3}, {"max", d.max}, {"exact_runs", st.path_exact_runs}});
        };
        line("trail", st.trail);
        line("path_greedy", st.path_greedy);
        line("path_search", st.path_search);
      } else if (kind == "compare") {
        std::vector<Json> rows(trials);
        parallel_for(trials, jobs, [&](int t) {
          const Graph g = reorder_edges(base, splitmix64(seed + static_cast<std::uint64_t>(t)));
          const MonotonePath a = long_path_rodl(g);
          const DeletionRun b = long_path_delete(g, s_param);
          check_emitted_path(g, a);
          check_emitted_path(g, b.path);
          rows[t] = Json{{"trial", t}, {"rodl", a.length()}, {"delete", b.path.length()}, {"guarantee", b.guarantee},
                         {"max_drop", b.max_drop}};
        });
        for (const auto& r : rows) em.row(r);
      } else if (kind == "drops") {
        const int m = base.edge_count();
        std::vector<std::vector<EdgeRank>> orders;
        if (m <= max_orderings_m) {
          std::vector<EdgeRank> perm(m);
          for (int i = 0; i < m; ++i) perm[i] = i + 1;
          do orders.push_back(perm);
          while (std::next_permutation(perm.begin(), perm.end()));
        } else {
          for (int t = 0; t < trials; ++t) {
            orders.push_back(inverse_permutation(random_permutation(m, splitmix64(seed + static_cast<std::uint64_t>(t)))));
          }
        }
        std::vector<DropScan> scans(orders.size());
        parallel_for(static_cast<int>(orders.size()), jobs,
                     [&](int i) { scans[i] = scan_drops(apply_order(base, orders[i]), s_param); });
        std::size_t worst = 0;
        long long subsets = 0;
        for (std::size_t i = 0; i < scans.size(); ++i) {
          subsets += scans[i].subsets;
          if (scans[i].max_drop > scans[worst].max_drop) worst = i;
        }
        em.row(Json{{"orderings", orders.size()},
                    {"exhaustive", m <= max_orderings_m},
                    {"s", s_param},
                    {"subsets", subsets},
                    {"max_drop", scans.empty() ? 0 : scans[worst].max_drop},
                    {"worst_order", scans.empty() ? Json::array() : Json(orders[worst])},
                    {"worst_set", scans.empty() ? Json::array() : Json(scans[worst].worst_set)},
                    {"worst_edge", scans.empty() ? 0 : scans[worst].worst_edge}});
      } else {
        throw InvalidInput("--kind must be orderings, compare or drops");
      }
      return 0;
    }

    if (verify->parsed()) {
      SuiteOptions opt;
      if (level == "quick") {
        opt.level = SuiteLevel::quick;
      } else if (level == "full") {
        opt.level = SuiteLevel::full;
      } else {
        throw InvalidInput("--level must be quick or full");
      }
      if (fault == "trail-off-by-one") {
        opt.fault = Fault::trail_off_by_one;
      } else if (fault != "none") {
        throw InvalidInput("--inject-fault must be none or trail-off-by-one");
      }
      opt.jobs = jobs;
      opt.only = criteria;
      Emitter em(out, output, "json");
      em.header(config_of(verify, args));
      std::vector<int> failed;
      run_acceptance(opt, [&](const CriterionResult& r) {
        em.row(Json{{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        if (!r.pass) {
          failed.push_back(r.id);
          err << "criterion " << r.id << " failed (" << r.name << "): " << r.detail << '\n';
        }
      });
      em.row(Json{{"summary", failed.empty() ? "pass" : "fail"}, {"failed", failed}});
      return failed.empty() ? 0 : 2;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace altitude
