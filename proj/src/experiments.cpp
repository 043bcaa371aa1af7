#include "tsub/experiments.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "tsub/parallel.hpp"
#include "tsub/transitive_finder.hpp"

namespace tsub {

void write_csv(std::ostream& out, const std::string& experiment, const nlohmann::json& config,
               const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  out << "# " << kCsvVersion << " " << experiment << "\n";
  out << "# config: " << config.dump() << "\n";
  out << "# timestamp: " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(columns);
  for (const auto& r : rows) line(r);
}

std::string csv_body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, body;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') body += line + "\n";
  return body;
}

namespace {

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

int max_internals(const Subdivision& sub) {
  int m = 0;
  for (const auto& p : sub.paths) m = std::max(m, static_cast<int>(p.internals.size()));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

SweepFinder parse_sweep_finder(const std::string& name) {
  if (name == "complete") return SweepFinder::Complete;
  if (name == "digraph") return SweepFinder::Digraph;
  if (name == "tt3") return SweepFinder::TtLen3;
  if (name == "onesub") return SweepFinder::OneSub;
  throw Error(ErrorCode::InvalidArgument, "unknown finder: " + name);
}

std::string to_string(SweepFinder finder) {
  switch (finder) {
    case SweepFinder::Complete: return "complete";
    case SweepFinder::Digraph: return "digraph";
    case SweepFinder::TtLen3: return "tt3";
    case SweepFinder::OneSub: return "onesub";
  }
  return "unknown";
}

nlohmann::json SweepConfig::to_json() const {
  return {{"finder", to_string(finder)}, {"k", k},         {"pattern", pattern}, {"trials", trials},
          {"n", n},                      {"scale", scale}, {"seed", seed},       {"host", host},
          {"workers", workers},          {"timing", timing}};
}

SweepInstance sweep_host(const SweepConfig& cfg, int index) {
  SweepInstance inst;
  inst.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(index));
  std::string kind = cfg.host;
  if (kind == "mixed") kind = index % 3 == 0 ? "random" : index % 3 == 1 ? "layered" : "triangles";
  inst.kind = kind;
  if (kind == "random") {
    inst.host = random_tournament(cfg.n, inst.seed);
  } else if (kind == "layered") {
    // Small leading blocks of 4 to 10 vertices have overlapping in-degree
    // ranges, so balanced sets straddle block boundaries and the greedy
    // embedding fails across them. The large final block keeps every sink's
    // out-degree high enough that peeling does not end the run at once.
    std::vector<int> blocks;
    int placed = 0;
    for (std::uint64_t r = inst.seed; placed < cfg.n / 3; r = mix_seed(r, 1)) {
      blocks.push_back(4 + static_cast<int>(r % 7));
      placed += blocks.back();
    }
    blocks.push_back(std::max(1, cfg.n - placed));
    inst.host = layered_tournament(blocks, inst.seed);
  } else if (kind == "triangles") {
    // Transitive order with every aligned triple closed into a cyclic
    // triangle. Reversed pairs inside a triangle whose third vertex is also a
    // branch vertex have no short path, which forces the recursive split.
    inst.host = Tournament(cfg.n);
    for (int i = 0; i + 2 < cfg.n; i += 3) inst.host.orient(i + 2, i);
  } else if (kind == "rotational") {
    inst.host = rotational_tournament(cfg.n % 2 == 1 ? cfg.n : cfg.n + 1);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown sweep host kind: " + cfg.host);
  }
  return inst;
}

SweepResult soundness_sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive", {{"trials", cfg.trials}});
  if (cfg.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive", {{"n", cfg.n}});
  const PatternDigraph pattern = cfg.finder == SweepFinder::Digraph && !cfg.pattern.empty()
                                     ? parse_pattern(cfg.pattern)
                                     : pattern_complete_digraph(std::max(cfg.k, 1));
  const bool exact2 = cfg.finder == SweepFinder::OneSub;

  SweepResult result;
  result.rows.resize(cfg.trials);
  result.chains.resize(cfg.trials);
  parallel_for(static_cast<std::size_t>(cfg.trials), cfg.workers, [&](std::size_t i) {
    const auto inst = sweep_host(cfg, static_cast<int>(i));
    SweepRow& row = result.rows[i];
    row.index = static_cast<int>(i);
    row.seed = inst.seed;
    row.host = inst.kind;
    row.n = inst.host.size();
    row.k = cfg.finder == SweepFinder::Digraph ? pattern.k : cfg.k;
    const auto start = std::chrono::steady_clock::now();

    std::optional<Subdivision> witness;
    std::optional<FailureTrace> failure;
    try {
      switch (cfg.finder) {
        case SweepFinder::Complete:
        case SweepFinder::Digraph: {
          FinderParams params = FinderParams::for_k(row.k, cfg.scale);
          auto r = cfg.finder == SweepFinder::Complete ? find_complete_subdivision(inst.host, cfg.k, params)
                                                       : find_digraph_subdivision(inst.host, pattern, params);
          witness = std::move(r.witness);
          failure = std::move(r.failure);
          row.stages = static_cast<int>(r.chain.stages.size());
          row.detail = witness ? r.terminal_case : "";
          result.chains[i] = std::move(r.chain);
          break;
        }
        case SweepFinder::TtLen3:
        case SweepFinder::OneSub: {
          TransitiveParams params;
          params.scale = cfg.scale;
          auto r = cfg.finder == SweepFinder::TtLen3 ? find_tt_len3(inst.host, cfg.k, params)
                                                     : find_one_subdivision(inst.host, cfg.k, params);
          witness = std::move(r.witness);
          failure = std::move(r.failure);
          row.stages = r.splits;
          break;
        }
      }
    } catch (const Error& e) {
      row.outcome = "precondition";
      row.detail = to_string(e.code());
    }
    if (witness) {
      const auto report = verify(inst.host, *witness, 3, exact2 ? std::optional<int>(2) : std::nullopt);
      const bool caps_ok = max_internals(*witness) <= 2;
      row.outcome = "witness";
      row.verify = report.valid && caps_ok ? "pass" : "fail";
      row.l1 = report.l1;
      row.l2 = report.l2;
      row.span = report.span;
      row.max_internals = max_internals(*witness);
    } else if (failure) {
      row.outcome = "failure";
      row.detail = failure->step + ":" + failure->reason;
    }
    if (row.verify.empty()) row.verify = "-";
    if (cfg.timing) row.millis = elapsed_ms(start);
  });
  for (const auto& r : result.rows) {
    if (r.outcome == "witness") ++result.witnesses;
    if (r.verify == "pass") ++result.verified;
  }
  return result;
}

std::vector<std::string> sweep_columns() {
  return {"index", "seed", "host", "n", "k", "outcome", "verify", "l1", "l2", "span", "max_internals", "stages",
          "detail", "millis"};
}

std::vector<std::vector<std::string>> sweep_table(const SweepResult& result) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : result.rows)
    rows.push_back({std::to_string(r.index), std::to_string(r.seed), r.host, std::to_string(r.n), std::to_string(r.k),
                    r.outcome, r.verify, std::to_string(r.l1), std::to_string(r.l2), std::to_string(r.span),
                    std::to_string(r.max_internals), std::to_string(r.stages), r.detail, std::to_string(r.millis)});
  return rows;
}

// ---------------------------------------------------------------------------

nlohmann::json SpanConfig::to_json() const {
  return {{"k_lo", k_lo}, {"k_hi", k_hi}, {"trials", trials},   {"n", n},
          {"scale", scale}, {"seed", seed}, {"workers", workers}, {"timing", timing}};
}

std::vector<SpanRow> tt_span(const SpanConfig& cfg) {
  if (cfg.k_lo < 2 || cfg.k_hi < cfg.k_lo)
    throw Error(ErrorCode::InvalidArgument, "bad k range", {{"lo", cfg.k_lo}, {"hi", cfg.k_hi}});
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive", {{"trials", cfg.trials}});
  std::vector<SpanRow> rows;
  for (int k = cfg.k_lo; k <= cfg.k_hi; ++k)
    for (int i = 0; i < cfg.trials; ++i) {
      SpanRow row;
      row.k = k;
      row.index = i;
      row.seed = mix_seed(cfg.seed, rows.size());
      row.n = cfg.n;
      rows.push_back(row);
    }

  TransitiveParams params;
  params.scale = cfg.scale;
  parallel_for(rows.size(), cfg.workers, [&](std::size_t i) {
    SpanRow& row = rows[i];
    const auto start = std::chrono::steady_clock::now();
    const Tournament t = random_tournament(row.n, row.seed);
    try {
      auto r = find_tt_len3(t, row.k, params);
      row.splits = r.splits;
      if (r.witness) {
        const auto report = verify(t, *r.witness, 3);
        row.outcome = report.valid ? "witness" : "invalid";
        row.span = report.span;
        row.direct = r.witness->count_paths_of_length(1);
        row.len2 = r.witness->count_paths_of_length(2);
        row.len3 = r.witness->count_paths_of_length(3);
      } else {
        row.outcome = "failure";
      }
    } catch (const Error&) {
      row.outcome = "precondition";
    }
    if (cfg.timing) row.millis = elapsed_ms(start);
  });
  return rows;
}

std::vector<std::string> span_columns() {
  return {"k", "index", "seed", "n", "outcome", "span", "direct", "len2", "len3", "splits", "millis"};
}

std::vector<std::vector<std::string>> span_table(const std::vector<SpanRow>& rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows)
    out.push_back({std::to_string(r.k), std::to_string(r.index), std::to_string(r.seed), std::to_string(r.n),
                   r.outcome, std::to_string(r.span), std::to_string(r.direct), std::to_string(r.len2),
                   std::to_string(r.len3), std::to_string(r.splits), std::to_string(r.millis)});
  return out;
}

std::vector<std::string> dk_columns() { return {"n", "seed", "delta_plus", "contains", "nodes", "millis"}; }

std::vector<std::vector<std::string>> dk_table(const DkScan& scan) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : scan.rows)
    out.push_back({std::to_string(r.n), std::to_string(r.seed), std::to_string(r.delta_plus),
                   r.status == OracleStatus::BudgetExceeded ? "budget" : (r.contains ? "1" : "0"),
                   std::to_string(r.nodes), std::to_string(r.millis)});
  return out;
}

}  // namespace tsub
