#include <filesystem>
#include <fstream>
#include <sstream>

#include "altitude/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace altitude;

namespace {

struct Run {
  int code = 0;
  std::vector<nlohmann::json> lines;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] == '{') r.lines.push_back(nlohmann::json::parse(line));
  return r;
}

}  // namespace

TEST_CASE("exact trail altitude of K4") {
  const Run r = run({"exact", "--family", "complete", "--n", "4", "--mode", "trail"});
  CHECK(r.code == 0);
  REQUIRE(r.lines.size() == 2);
  CHECK(r.lines[0]["config"]["command"] == "exact");
  CHECK(r.lines[0]["config"]["options"]["seed"] == "1");
  CHECK(r.lines[1]["value"] == 3);
}

TEST_CASE("triangular token game") {
  const Run r = run({"token", "triangular", "--n", "10", "--s", "1"});
  CHECK(r.code == 0);
  REQUIRE(r.lines.size() == 2);
  CHECK(r.lines[1]["final_count"] == 4);
}

TEST_CASE("missing graph file is invalid input") {
  const Run r = run({"heights", "--graph", "/nonexistent/missing.json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"exact", "--family", "complete", "--n", "4", "--mode", "walk"}).code == 1);
  CHECK(run({"exact", "--family", "petersen", "--n", "4"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("heights from a file") {
  const auto path = std::filesystem::temp_directory_path() / "altitude_cli_k3.json";
  std::ofstream(path) << R"({"n":3,"edges":[[0,1],[0,2],[1,2]]})";
  const Run r = run({"heights", "--graph", path.string()});
  std::filesystem::remove(path);
  REQUIRE(r.code == 0);
  const auto& t = r.lines.at(1);
  CHECK(t["rows"][0][0] == 2);
  CHECK(t["rows"][0][1] == 3);
  CHECK(t["rows"][0][2].is_null());
  CHECK(t["rows"][1][0] == 1);
  CHECK(t["heights"]["1"] == 2);
}

TEST_CASE("extend is reproducible and independent of jobs") {
  const std::vector<std::string> base{"extend", "--family", "complete", "--n", "25", "--trials", "8", "--seed", "5"};
  auto with_jobs = [&](const char* j) {
    auto a = base;
    a.insert(a.end(), {"--jobs", j});
    return run(a);
  };
  const Run one = with_jobs("1");
  const Run four = with_jobs("4");
  REQUIRE(one.code == 0);
  REQUIRE(one.lines.size() == 9);
  for (std::size_t i = 1; i < one.lines.size(); ++i) {
    CHECK(one.lines[i]["length"] >= 5);
    CHECK(one.lines[i]["path"] == four.lines[i]["path"]);
  }
}

TEST_CASE("csv output carries the config as a comment") {
  const Run r = run({"token", "sweep", "--nmax", "5", "--smax", "1", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# {\"config\"", 0) == 0);
  CHECK(r.out.find("n,s,k,final_count") != std::string::npos);
}

TEST_CASE("from-graph writes a transcript that reloads") {
  const auto path = std::filesystem::temp_directory_path() / "altitude_cli_transcript.json";
  const Run r = run({"token", "from-graph", "--family", "complete", "--n", "7", "--delete", "0,3", "--order", "random",
                     "--transcript", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["columns"] == 5);
  CHECK(r.lines[1]["columns"] == 5);
  std::filesystem::remove(path);
  CHECK(run({"token", "from-graph", "--family", "complete", "--n", "4", "--delete", "0,1,2"}).code == 1);
}

TEST_CASE("verify names an injected failure") {
  const Run r = run({"verify", "--criterion", "1", "--inject-fault", "trail-off-by-one"});
  CHECK(r.code == 2);
  CHECK(r.err.find("criterion 1 failed") != std::string::npos);
  CHECK(r.lines.back()["summary"] == "fail");
  const Run ok = run({"verify", "--criterion", "1", "--criterion", "7"});
  CHECK(ok.code == 0);
  CHECK(ok.lines.back()["summary"] == "pass");
}
