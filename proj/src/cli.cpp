#include "tsub/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsub/complete_finder.hpp"
#include "tsub/experiments.hpp"
#include "tsub/oracle.hpp"
#include "tsub/subdivision.hpp"
#include "tsub/tournament.hpp"
#include "tsub/transitive_finder.hpp"

namespace tsub::cli {

namespace {

using nlohmann::json;

std::pair<int, int> parse_range(const std::string& text, const std::string& flag) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, flag + " must look like A..B or A, got " + text);
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

/// Shared tail of every finder: witness to --out (or stdout) and a summary,
/// or the failure trace with exit code 2.
int report_outcome(const Tournament& host, const std::optional<Subdivision>& witness,
                   const std::optional<FailureTrace>& failure, json summary, const std::string& out_path,
                   std::ostream& out) {
  if (witness) {
    const auto w = witness_to_json(*witness, tournament_hash(host));
    if (out_path.empty()) {
      out << w.dump(2) << "\n";
    } else {
      write_text(out_path, w.dump(2) + "\n", out);
      summary["witness"] = out_path;
      summary["span"] = witness->span();
      out << summary.dump() << "\n";
    }
    return kOk;
  }
  summary["failure"] = failure ? to_json(*failure) : json(nullptr);
  out << summary.dump(2) << "\n";
  return kNotFound;
}

struct Options {
  // gen
  std::string kind = "random";
  int n = 0, class_size = 0, blocks = 0;
  std::uint64_t seed = 1;
  std::string out;
  // verify / find / oracle
  std::string input, witness, pattern;
  int k = 0;
  int max_len = 3;
  int exact_len = 0;
  double scale = 1.0;
  double constant = 150.0;
  long long budget = 100'000'000;
  // experiments
  std::string n_range, k_range, finder = "complete", host = "mixed";
  int trials = 100;
  int workers = 1;
  bool timing = false;
};

int cmd_gen(const Options& o, std::ostream& out) {
  const auto kind = parse_generator_kind(o.kind);
  if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown generator kind: " + o.kind);
  GeneratorParams p{*kind, o.n, o.class_size, o.blocks, o.seed};
  write_text(o.out, format_tournament(generate(p)), out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Tournament t = read_tournament_file(o.input);
  std::string hash;
  const Subdivision sub = witness_from_json(parse_json_file(o.witness), &hash);
  const auto report =
      verify(t, sub, o.max_len, o.exact_len > 0 ? std::optional<int>(o.exact_len) : std::nullopt);
  json j = to_json(report);
  const bool hash_ok = hash.empty() || hash == tournament_hash(t);
  j["host_hash_match"] = hash_ok;
  out << j.dump(2) << "\n";
  return report.valid && hash_ok ? kOk : kNotFound;
}

int cmd_find(const std::string& which, const Options& o, std::ostream& out) {
  const Tournament t = read_tournament_file(o.input);
  json summary = {{"finder", which}, {"input", o.input}, {"host_hash", tournament_hash(t)}, {"scale", o.scale},
                  {"seed", o.seed}};
  if (which == "complete" || which == "digraph") {
    FinderParams params = FinderParams::for_k(std::max(o.k, 1), o.scale);
    params.digraph_constant = o.constant;
    FinderResult r;
    if (which == "complete") {
      summary["k"] = o.k;
      r = find_complete_subdivision(t, o.k, params);
    } else {
      const auto pattern = parse_pattern(o.pattern);
      summary["pattern"] = to_json(pattern);
      r = find_digraph_subdivision(t, pattern, params);
    }
    summary["stages"] = r.chain.stages.size();
    summary["iterations"] = r.iterations;
    summary["terminal_case"] = r.terminal_case;
    return report_outcome(t, r.witness, r.failure, summary, o.out, out);
  }
  TransitiveParams params;
  params.scale = o.scale;
  summary["k"] = o.k;
  const auto r = which == "tt3" ? find_tt_len3(t, o.k, params) : find_one_subdivision(t, o.k, params);
  summary["depth"] = r.depth;
  summary["splits"] = r.splits;
  return report_outcome(t, r.witness, r.failure, summary, o.out, out);
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Tournament t = read_tournament_file(o.input);
  OracleQuery q{parse_pattern(o.pattern), o.max_len, std::nullopt, o.budget};
  if (o.exact_len > 0) q.exact_len = o.exact_len;
  const auto r = oracle_subdivision(t, q);
  json summary = {{"status", to_string(r.status)}, {"nodes", r.nodes}, {"pattern", to_json(q.pattern)}};
  if (r.witness) {
    const auto w = witness_to_json(*r.witness, tournament_hash(t));
    if (!o.out.empty()) write_text(o.out, w.dump(2) + "\n", out);
    summary["witness"] = w;
  }
  out << summary.dump(2) << "\n";
  return r.status == OracleStatus::Found ? kOk : kNotFound;
}

int cmd_scan_dk(const Options& o, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = parse_range(o.n_range, "--n");
  const auto scan = scan_d_lower(o.k, lo, hi, o.trials, o.seed, o.workers, o.timing, o.budget);
  const json config = {{"experiment", "scan-dk"}, {"k", o.k},     {"n", o.n_range},       {"trials", o.trials},
                       {"seed", o.seed},          {"max_len", 3}, {"budget", o.budget},   {"workers", o.workers},
                       {"timing", o.timing}};
  std::ostringstream csv;
  write_csv(csv, "scan-dk", config, dk_columns(), dk_table(scan));
  write_text(o.out, csv.str(), out);
  err << "scan-dk: " << scan.rows.size() << " hosts, largest min out-degree without a subdivision: "
      << scan.max_delta_without << " (sampled evidence)\n";
  return kOk;
}

int cmd_soundness(const Options& o, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  cfg.finder = parse_sweep_finder(o.finder);
  cfg.k = o.k;
  cfg.pattern = o.pattern;
  cfg.trials = o.trials;
  cfg.n = o.n;
  cfg.scale = o.scale;
  cfg.seed = o.seed;
  cfg.host = o.host;
  cfg.workers = o.workers;
  cfg.timing = o.timing;
  const auto result = soundness_sweep(cfg);
  std::ostringstream csv;
  write_csv(csv, "soundness-sweep", cfg.to_json(), sweep_columns(), sweep_table(result));
  write_text(o.out, csv.str(), out);
  err << "soundness-sweep: " << result.witnesses << "/" << result.rows.size() << " witnesses, " << result.verified
      << " verified\n";
  return result.verified == result.witnesses ? kOk : kError;
}

int cmd_tt_span(const Options& o, std::ostream& out) {
  SpanConfig cfg;
  std::tie(cfg.k_lo, cfg.k_hi) = parse_range(o.k_range, "--k");
  cfg.trials = o.trials;
  cfg.n = o.n;
  cfg.scale = o.scale;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.timing = o.timing;
  const auto rows = tt_span(cfg);
  std::ostringstream csv;
  write_csv(csv, "tt-span", cfg.to_json(), span_columns(), span_table(rows));
  write_text(o.out, csv.str(), out);
  const bool sound = std::none_of(rows.begin(), rows.end(), [](const SpanRow& r) { return r.outcome == "invalid"; });
  return sound ? kOk : kError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Subdivisions in tournaments: generators, finders, exact oracle, experiments"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write a tournament file");
  gen->add_option("--kind", o.kind, "random | transitive | rotational | blowup | layered")->capture_default_str();
  gen->add_option("--n", o.n, "Vertex count");
  gen->add_option("--class-size", o.class_size, "Blow-up class size, or layered block size");
  gen->add_option("--blocks", o.blocks, "Layered block count");
  gen->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", o.out, "Output path (stdout if omitted)");

  auto* ver = app.add_subcommand("verify", "Check a witness against a tournament");
  ver->add_option("--input", o.input, "Tournament file")->required();
  ver->add_option("--witness", o.witness, "Witness JSON")->required();
  ver->add_option("--max-len", o.max_len, "Path length cap")->capture_default_str();
  ver->add_option("--exact-len", o.exact_len, "Required exact path length");

  auto* find = app.add_subcommand("find", "Run a constructive finder");
  find->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--input", o.input, "Tournament file")->required();
    c->add_option("--scale", o.scale, "Threshold multiplier; below 1 skips preconditions")->capture_default_str();
    c->add_option("--seed", o.seed, "Recorded for reproducibility; the finders are deterministic");
    c->add_option("--out", o.out, "Witness output path (stdout if omitted)");
  };
  auto* f_complete = find->add_subcommand("complete", "Subdivision of the complete digraph, paths of length <= 3");
  add_common(f_complete);
  f_complete->add_option("--k", o.k, "Order")->required();
  auto* f_digraph = find->add_subcommand("digraph", "Subdivision of an arbitrary pattern without isolated vertices");
  add_common(f_digraph);
  f_digraph->add_option("--pattern", o.pattern, "complete:K | transitive:K | edges:a>b,...")->required();
  f_digraph->add_option("--constant", o.constant, "Degree constant C in min out-degree >= C |E|")
      ->capture_default_str();
  auto* f_tt3 = find->add_subcommand("tt3", "Transitive subdivision, paths of length <= 3");
  add_common(f_tt3);
  f_tt3->add_option("--k", o.k, "Order")->required();
  auto* f_onesub = find->add_subcommand("onesub", "Transitive 1-subdivision");
  add_common(f_onesub);
  f_onesub->add_option("--k", o.k, "Order")->required();

  auto* orc = app.add_subcommand("oracle", "Exact subdivision search on a small tournament");
  orc->add_option("--input", o.input, "Tournament file")->required();
  orc->add_option("--pattern", o.pattern, "complete:K | transitive:K | edges:a>b,...")->required();
  orc->add_option("--max-len", o.max_len, "Path length cap")->capture_default_str();
  orc->add_option("--exact-len", o.exact_len, "Required exact path length");
  orc->add_option("--budget", o.budget, "Search node budget")->capture_default_str();
  orc->add_option("--out", o.out, "Witness output path");

  auto* exp = app.add_subcommand("experiment", "Batch experiments writing CSV");
  exp->require_subcommand(1);
  auto add_batch = [&](CLI::App* c) {
    c->add_option("--trials", o.trials, "Instances per size")->capture_default_str();
    c->add_option("--seed", o.seed, "Base seed; instance i uses mix_seed(seed, i)")->capture_default_str();
    c->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
    c->add_flag("--timing", o.timing, "Fill the millis column (otherwise 0, keeping runs byte-identical)");
    c->add_option("--out", o.out, "CSV path (stdout if omitted)");
  };
  auto* e_dk = exp->add_subcommand("scan-dk", "Oracle containment against minimum out-degree");
  add_batch(e_dk);
  e_dk->add_option("--k", o.k, "Order")->required();
  e_dk->add_option("--n", o.n_range, "Size range A..B")->required();
  e_dk->add_option("--budget", o.budget, "Node budget per oracle call")->capture_default_str();
  auto* e_sweep = exp->add_subcommand("soundness-sweep", "Run a finder on many hosts and verify every witness");
  add_batch(e_sweep);
  e_sweep->add_option("--finder", o.finder, "complete | digraph | tt3 | onesub")->capture_default_str();
  e_sweep->add_option("--k", o.k, "Order")->required();
  e_sweep->add_option("--pattern", o.pattern, "Pattern for the digraph finder");
  e_sweep->add_option("--n", o.n, "Host size")->required();
  e_sweep->add_option("--scale", o.scale, "Threshold multiplier")->capture_default_str();
  e_sweep->add_option("--host", o.host, "random | layered | triangles | rotational | mixed")->capture_default_str();
  auto* e_span = exp->add_subcommand("tt-span", "Span of length-3 transitive subdivisions by k");
  add_batch(e_span);
  e_span->add_option("--k", o.k_range, "Order range A..B")->required();
  e_span->add_option("--n", o.n, "Host size")->required();
  e_span->add_option("--scale", o.scale, "Threshold multiplier")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*ver) return cmd_verify(o, out);
    if (*f_complete) return cmd_find("complete", o, out);
    if (*f_digraph) return cmd_find("digraph", o, out);
    if (*f_tt3) return cmd_find("tt3", o, out);
    if (*f_onesub) return cmd_find("onesub", o, out);
    if (*orc) return cmd_oracle(o, out);
    if (*e_dk) return cmd_scan_dk(o, out, err);
    if (*e_sweep) return cmd_soundness(o, out, err);
    if (*e_span) return cmd_tt_span(o, out);
  } catch (const Error& e) {
    json j = {{"error", to_string(e.code())}, {"message", e.what()}, {"values", e.values()}};
    err << j.dump() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tsub::cli
