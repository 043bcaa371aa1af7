#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsub/complete_finder.hpp"
#include "tsub/oracle.hpp"
#include "tsub/tournament.hpp"

namespace tsub {

inline constexpr const char* kCsvVersion = "tsub-csv/1";

/**
 * Writes a CSV artifact: a version comment naming the experiment, a comment
 * with the resolved configuration as JSON, a timestamp comment (the only
 * line that differs between identical runs), then the header and rows.
 */
void write_csv(std::ostream& out, const std::string& experiment, const nlohmann::json& config,
               const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows);

/// The CSV text without comment lines, for determinism checks.
std::string csv_body(const std::string& csv);

// ---------------------------------------------------------------------------
// Finder soundness sweep

enum class SweepFinder { Complete, Digraph, TtLen3, OneSub };

SweepFinder parse_sweep_finder(const std::string& name);
std::string to_string(SweepFinder finder);

struct SweepConfig {
  SweepFinder finder = SweepFinder::Complete;
  int k = 3;
  std::string pattern;  ///< Digraph finder only; defaults to complete:k
  int trials = 100;
  int n = 300;
  double scale = 0.125;
  std::uint64_t seed = 1;
  /// random | layered | triangles | rotational | mixed (cycles through the first three)
  std::string host = "mixed";
  int workers = 1;
  bool timing = false;

  nlohmann::json to_json() const;
};

struct SweepRow {
  int index = 0;
  std::uint64_t seed = 0;
  std::string host;
  int n = 0;
  int k = 0;
  std::string outcome;  ///< witness | failure | precondition
  std::string verify;   ///< pass | fail | - (no witness)
  int l1 = 0, l2 = 0, span = 0;
  int max_internals = 0;
  int stages = 0;       ///< cut-chain stages (complete and digraph finders)
  std::string detail;   ///< terminal case, failure step, or error code
  long long millis = 0;
};

struct SweepInstance {
  Tournament host;
  std::string kind;
  std::uint64_t seed = 0;
};

/// Deterministic host of sweep instance `index`.
SweepInstance sweep_host(const SweepConfig& cfg, int index);

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<CutChain> chains;  ///< per instance; empty for the transitive finders
  int witnesses = 0;
  int verified = 0;
};

/// Runs the finder on every instance and verifies each witness against the
/// cap the finder promises (length 3, or exactly 2 for the 1-subdivision finder).
SweepResult soundness_sweep(const SweepConfig& cfg);

std::vector<std::string> sweep_columns();
std::vector<std::vector<std::string>> sweep_table(const SweepResult& result);

// ---------------------------------------------------------------------------
// Span of length-3 transitive subdivisions

struct SpanConfig {
  int k_lo = 2, k_hi = 6;
  int trials = 20;
  int n = 2000;
  double scale = 0.05;
  std::uint64_t seed = 1;
  int workers = 1;
  bool timing = false;

  nlohmann::json to_json() const;
};

struct SpanRow {
  int k = 0;
  int index = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::string outcome;
  int span = 0;
  int direct = 0, len2 = 0, len3 = 0;
  int splits = 0;
  long long millis = 0;
};

std::vector<SpanRow> tt_span(const SpanConfig& cfg);
std::vector<std::string> span_columns();
std::vector<std::vector<std::string>> span_table(const std::vector<SpanRow>& rows);

std::vector<std::string> dk_columns();
std::vector<std::vector<std::string>> dk_table(const DkScan& scan);

}  // namespace tsub
