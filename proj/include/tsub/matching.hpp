#pragma once

#include <utility>
#include <vector>

#include "tsub/tournament.hpp"

namespace tsub {

/// Bipartite graph with local indices: left 0..left_size-1, right 0..right_size-1.
struct BipartiteGraph {
  int left_size = 0;
  int right_size = 0;
  std::vector<std::vector<int>> adj;  ///< adj[u] = right neighbours of left vertex u

  explicit BipartiteGraph(int left = 0, int right = 0) : left_size(left), right_size(right), adj(left) {}
  void add_edge(int u, int v) { adj[u].push_back(v); }
};

/// Maximum matching by Hopcroft-Karp. match_left[u] is u's partner or -1.
std::vector<int> maximum_matching(const BipartiteGraph& g);

/// Every left vertex on exactly one edge, every right vertex on at most two.
struct HalfMatching {
  std::vector<std::pair<int, int>> edges;  ///< (left, right)
};

struct HalfMatchingResult {
  bool ok = false;
  HalfMatching matching;     ///< when ok
  std::vector<int> violator; ///< when !ok: X with |N(X)| < |X|/2
};

/**
 * Saturates the left side with each right vertex used at most twice, by
 * duplicating the right side and running a maximum matching. When no such
 * assignment exists, returns the left vertices reachable by alternating paths
 * from unsaturated ones; that set has fewer than |X|/2 neighbours.
 */
HalfMatchingResult half_matching(const BipartiteGraph& g);

/// Same on host labels: left -> right adjacency given by u -> v in `t`.
HalfMatchingResult half_matching(const Tournament& t, const std::vector<int>& left, const std::vector<int>& right);

/**
 * Splits a half-matching into two matchings: for a right vertex used twice,
 * its first partner goes to `primary` and its second to `secondary`.
 */
std::pair<HalfMatching, HalfMatching> split_half_matching(const HalfMatching& hm);

}  // namespace tsub
