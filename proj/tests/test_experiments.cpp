#include <sstream>

#include "doctest.h"
#include "tsub/experiments.hpp"

using namespace tsub;

namespace {

std::string sweep_csv(const SweepConfig& cfg) {
  std::ostringstream out;
  write_csv(out, "soundness-sweep", cfg.to_json(), sweep_columns(), sweep_table(soundness_sweep(cfg)));
  return out.str();
}

}  // namespace

TEST_CASE("CSV artifacts carry version, config and timestamp comments") {
  std::ostringstream out;
  write_csv(out, "demo", {{"a", 1}}, {"x", "y"}, {{"1", "2"}, {"3", "4"}});
  const std::string csv = out.str();
  CHECK(csv.rfind("# tsub-csv/1 demo\n# config: {\"a\":1}\n# timestamp: ", 0) == 0);
  CHECK(csv_body(csv) == "x,y\n1,2\n3,4\n");
}

TEST_CASE("sweep finder names round-trip") {
  for (auto f : {SweepFinder::Complete, SweepFinder::Digraph, SweepFinder::TtLen3, SweepFinder::OneSub})
    CHECK(parse_sweep_finder(to_string(f)) == f);
  CHECK_THROWS_AS(parse_sweep_finder("dfs"), Error);
}

TEST_CASE("sweep hosts cycle through kinds and depend only on seed and index") {
  SweepConfig cfg;
  cfg.n = 90;
  CHECK(sweep_host(cfg, 0).kind == "random");
  CHECK(sweep_host(cfg, 1).kind == "layered");
  CHECK(sweep_host(cfg, 2).kind == "triangles");
  CHECK(sweep_host(cfg, 4).host == sweep_host(cfg, 4).host);
  CHECK(sweep_host(cfg, 4).seed == mix_seed(cfg.seed, 4));
  CHECK(sweep_host(cfg, 1).host.size() == 90);
  cfg.host = "rotational";
  CHECK(sweep_host(cfg, 0).host.size() == 91);
  cfg.host = "bogus";
  CHECK_THROWS_AS(sweep_host(cfg, 0), Error);
}

TEST_CASE("soundness sweep verifies every witness") {
  SweepConfig cfg;
  cfg.k = 3;
  cfg.trials = 12;
  cfg.n = 200;
  const auto r = soundness_sweep(cfg);
  CHECK(r.rows.size() == 12);
  CHECK(r.witnesses == r.verified);
  for (const auto& row : r.rows) {
    CHECK((row.outcome == "witness" || row.outcome == "failure" || row.outcome == "precondition"));
    if (row.outcome == "witness") {
      CHECK(row.verify == "pass");
      CHECK(row.max_internals <= 2);
    } else {
      CHECK(row.verify == "-");
    }
    CHECK(row.millis == 0);
  }
}

TEST_CASE("sweeps are identical across repeats and worker counts") {
  for (auto finder : {SweepFinder::Complete, SweepFinder::TtLen3, SweepFinder::Digraph}) {
    SweepConfig cfg;
    cfg.finder = finder;
    cfg.k = 3;
    cfg.trials = 9;
    cfg.n = 150;
    const std::string a = csv_body(sweep_csv(cfg));
    cfg.workers = 3;
    const std::string b = csv_body(sweep_csv(cfg));
    CHECK(a == b);
  }
}

TEST_CASE("one-subdivision sweeps promise exact length two") {
  SweepConfig cfg;
  cfg.finder = SweepFinder::OneSub;
  cfg.k = 3;
  cfg.trials = 4;
  cfg.n = 120;
  cfg.host = "random";
  const auto r = soundness_sweep(cfg);
  CHECK(r.witnesses == 4);
  CHECK(r.verified == 4);
  for (const auto& row : r.rows) CHECK(row.l2 == 0);
}

TEST_CASE("sweep rejects empty configurations") {
  SweepConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(soundness_sweep(cfg), Error);
  cfg.trials = 1;
  cfg.n = 0;
  CHECK_THROWS_AS(soundness_sweep(cfg), Error);
}

TEST_CASE("span table of the length-3 transitive finder") {
  SpanConfig cfg;
  cfg.k_lo = 2;
  cfg.k_hi = 4;
  cfg.trials = 3;
  cfg.n = 300;
  const auto rows = tt_span(cfg);
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) {
    CHECK(r.outcome != "invalid");
    if (r.outcome == "witness") {
      CHECK(r.direct + r.len2 + r.len3 == r.k * (r.k - 1) / 2);
      CHECK(r.span >= r.k);
    }
  }
  CHECK(span_table(rows) == span_table(tt_span(cfg)));
  CHECK(span_columns().size() == span_table(rows)[0].size());
  cfg.k_lo = 1;
  CHECK_THROWS_AS(tt_span(cfg), Error);
}

TEST_CASE("d(k) table columns") {
  const auto scan = scan_d_lower(2, 3, 3, 1, 1);
  const auto table = dk_table(scan);
  REQUIRE(table.size() == 8);
  CHECK(dk_columns() == std::vector<std::string>{"n", "seed", "delta_plus", "contains", "nodes", "millis"});
  for (const auto& row : table) CHECK(row[3] == (row[2] == "0" ? "0" : "1"));
}
