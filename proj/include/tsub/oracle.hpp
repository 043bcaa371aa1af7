#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsub/subdivision.hpp"
#include "tsub/tournament.hpp"

namespace tsub {

struct OracleQuery {
  PatternDigraph pattern;
  int max_len = 3;
  std::optional<int> exact_len;
  long long node_budget = 100'000'000;
};

enum class OracleStatus { Found, NotFound, BudgetExceeded };

std::string to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::NotFound;
  std::optional<Subdivision> witness;
  long long nodes = 0;
};

/**
 * Exact search for a subdivision of q.pattern with path lengths capped by
 * max_len (or fixed to exact_len). Branch maps are enumerated in
 * lexicographic order, restricted to increasing maps when the pattern is
 * complete and therefore symmetric. Paths are then assigned to the pattern
 * edge with the fewest candidate paths first, a direct edge being taken
 * outright whenever length 1 is allowed. NotFound is a proof of absence.
 */
OracleResult oracle_subdivision(const Tournament& t, const OracleQuery& q);

/// Every labelled tournament on n <= 5 vertices; bit b of the index orients
/// the b-th pair (i, j), i < j in lexicographic order, as i -> j.
std::vector<Tournament> exhaustive_tournaments(int n);
void for_each_tournament(int n, const std::function<void(std::uint64_t mask, const Tournament&)>& fn);
Tournament tournament_from_mask(int n, std::uint64_t mask);

/// One instance of the d(k) scan.
struct DkRow {
  int n = 0;
  std::uint64_t seed = 0;  ///< instance seed, or the orientation mask for enumerated sizes
  int delta_plus = 0;
  bool contains = false;
  OracleStatus status = OracleStatus::NotFound;
  long long nodes = 0;
  long long millis = 0;
};

struct DkScan {
  int k = 0;
  std::vector<DkRow> rows;  ///< ordered by n, then instance index
  /// Largest minimum out-degree seen among hosts without a subdivision; -1 if none.
  int max_delta_without = -1;
};

/**
 * For every n in [n_lo, n_hi], checks each host for a subdivision of the
 * complete digraph on k vertices with paths of length at most 3. Sizes up to
 * 5 are enumerated exhaustively; larger ones draw `trials` random hosts seeded
 * by mix_seed(seed, instance). The result is sampled evidence for a lower
 * bound on d(k), not a proof.
 */
DkScan scan_d_lower(int k, int n_lo, int n_hi, int trials, std::uint64_t seed, int workers = 1,
                    bool timing = false, long long node_budget = 100'000'000);

}  // namespace tsub
