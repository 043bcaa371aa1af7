#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "tsub/cli.hpp"
#include "tsub/experiments.hpp"
#include "tsub/tournament.hpp"

using namespace tsub;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("tsub_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("gen writes a file that parses back") {
  TempDir dir;
  const auto r = invoke({"gen", "--kind", "rotational", "--n", "21", "--out", dir / "r21.txt"});
  CHECK(r.code == cli::kOk);
  CHECK(read_tournament_file(dir / "r21.txt") == rotational_tournament(21));

  const auto s = invoke({"gen", "--kind", "random", "--n", "15", "--seed", "4"});
  CHECK(parse_tournament(s.out) == random_tournament(15, 4));
  CHECK(invoke({"gen", "--kind", "blowup", "--class-size", "2"}).code == cli::kOk);
  CHECK(invoke({"gen", "--kind", "layered", "--class-size", "3", "--blocks", "2"}).code == cli::kOk);
}

TEST_CASE("find then verify round trip") {
  TempDir dir;
  REQUIRE(invoke({"gen", "--kind", "rotational", "--n", "21", "--out", dir / "r21.txt"}).code == 0);
  const auto f = invoke({"find", "complete", "--input", dir / "r21.txt", "--k", "2", "--out", dir / "w.json"});
  REQUIRE(f.code == cli::kOk);
  const auto summary = nlohmann::json::parse(f.out);
  CHECK(summary.at("terminal_case") == "cycle");
  CHECK(summary.at("witness") == dir / "w.json");

  const auto v = invoke({"verify", "--input", dir / "r21.txt", "--witness", dir / "w.json", "--max-len", "3"});
  CHECK(v.code == cli::kOk);
  const auto report = nlohmann::json::parse(v.out);
  CHECK(report.at("valid") == true);
  CHECK(report.at("host_hash_match") == true);

  // The same witness on a different host fails the hash check.
  REQUIRE(invoke({"gen", "--kind", "rotational", "--n", "23", "--out", dir / "r23.txt"}).code == 0);
  const auto other = invoke({"verify", "--input", dir / "r23.txt", "--witness", dir / "w.json"});
  CHECK(other.code == cli::kNotFound);
  CHECK(nlohmann::json::parse(other.out).at("host_hash_match") == false);

  const auto exact = invoke({"verify", "--input", dir / "r21.txt", "--witness", dir / "w.json", "--exact-len", "2"});
  CHECK(exact.code == cli::kNotFound);
}

TEST_CASE("finder subcommands") {
  TempDir dir;
  REQUIRE(invoke({"gen", "--kind", "random", "--n", "300", "--seed", "3", "--out", dir / "t.txt"}).code == 0);
  const auto tt = invoke({"find", "tt3", "--input", dir / "t.txt", "--k", "4", "--scale", "0.05"});
  CHECK(tt.code == cli::kOk);
  CHECK(nlohmann::json::parse(tt.out).at("branch").size() == 4);

  const auto one = invoke({"find", "onesub", "--input", dir / "t.txt", "--k", "3", "--scale", "0.01"});
  CHECK(one.code == cli::kOk);

  const auto dg = invoke({"find", "digraph", "--input", dir / "t.txt", "--pattern", "edges:0>1,1>2,2>0", "--scale",
                       "0.125", "--out", dir / "d.json"});
  CHECK((dg.code == cli::kOk || dg.code == cli::kNotFound));

  // Paper-scale preconditions fail with a structured error.
  const auto pre = invoke({"find", "complete", "--input", dir / "t.txt", "--k", "3"});
  CHECK(pre.code == cli::kError);
  CHECK(nlohmann::json::parse(pre.err).at("error") == "InfeasibleDegree");

  // A transitive host has no cycle: structured failure, exit 2.
  REQUIRE(invoke({"gen", "--kind", "transitive", "--n", "6", "--out", dir / "tr.txt"}).code == 0);
  const auto none = invoke({"find", "complete", "--input", dir / "tr.txt", "--k", "2", "--scale", "0.5"});
  CHECK(none.code == cli::kNotFound);
  CHECK(nlohmann::json::parse(none.out).at("failure").at("reason") == "NotFound");
}

TEST_CASE("oracle subcommand") {
  TempDir dir;
  REQUIRE(invoke({"gen", "--kind", "transitive", "--n", "6", "--out", dir / "t6.txt"}).code == 0);
  const auto yes = invoke({"oracle", "--input", dir / "t6.txt", "--pattern", "transitive:3", "--max-len", "2",
                        "--exact-len", "2", "--out", dir / "o.json"});
  CHECK(yes.code == cli::kOk);
  CHECK(nlohmann::json::parse(yes.out).at("status") == "found");
  CHECK(invoke({"verify", "--input", dir / "t6.txt", "--witness", dir / "o.json", "--exact-len", "2"}).code == 0);

  const auto no = invoke({"oracle", "--input", dir / "t6.txt", "--pattern", "complete:2"});
  CHECK(no.code == cli::kNotFound);
  CHECK(nlohmann::json::parse(no.out).at("status") == "not-found");
}

TEST_CASE("experiment subcommands write versioned CSV") {
  TempDir dir;
  const auto sweep = invoke({"experiment", "soundness-sweep", "--k", "3", "--trials", "6", "--n", "150", "--scale",
                          "0.125", "--seed", "1", "--out", dir / "s.csv"});
  CHECK(sweep.code == cli::kOk);
  const auto csv = slurp(dir / "s.csv");
  CHECK(csv.rfind("# tsub-csv/1 soundness-sweep\n# config: ", 0) == 0);
  CHECK(csv.find("\"scale\":0.125") != std::string::npos);

  const auto again = invoke({"experiment", "soundness-sweep", "--k", "3", "--trials", "6", "--n", "150", "--scale",
                          "0.125", "--seed", "1", "--workers", "2"});
  CHECK(csv_body(again.out) == csv_body(csv));

  const auto dk = invoke({"experiment", "scan-dk", "--k", "3", "--n", "4..6", "--trials", "3"});
  CHECK(dk.code == cli::kOk);
  CHECK(csv_body(dk.out).rfind("n,seed,delta_plus,contains,nodes,millis\n", 0) == 0);

  const auto span = invoke({"experiment", "tt-span", "--k", "2..3", "--n", "200", "--trials", "2"});
  CHECK(span.code == cli::kOk);
  CHECK(csv_body(span.out).rfind("k,index,seed,n,outcome,span", 0) == 0);
}

TEST_CASE("bad invocations exit 1 with a message") {
  CHECK(invoke({}).code == cli::kError);
  CHECK(invoke({"find", "complete", "--k", "3"}).code == cli::kError);
  const auto bad = invoke({"gen", "--kind", "wheel", "--n", "5"});
  CHECK(bad.code == cli::kError);
  CHECK(nlohmann::json::parse(bad.err).at("error") == "InvalidArgument");
  CHECK(invoke({"verify", "--input", "/nonexistent", "--witness", "/nonexistent"}).code == cli::kError);
  CHECK(invoke({"experiment", "scan-dk", "--k", "3", "--n", "x"}).code == cli::kError);
  CHECK(invoke({"experiment", "soundness-sweep", "--k", "3", "--n", "50", "--finder", "dfs"}).code == cli::kError);
  CHECK(invoke({"--help"}).code == cli::kOk);
}
