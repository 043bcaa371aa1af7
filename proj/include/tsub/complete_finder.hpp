#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsub/matching.hpp"
#include "tsub/subdivision.hpp"
#include "tsub/tournament.hpp"

namespace tsub {

using VertexPair = std::pair<int, int>;

/**
 * Degree thresholds of the complete-digraph construction for branch-set size k.
 *
 * Every constant is multiplied by `scale`; scale = 1 reproduces the
 * theorem's thresholds (minimum out-degree 2k^2 + 147k^{7/4}, peel bound
 * k^2 + 12k^{7/4}, degree window k^{7/4}), smaller values shrink them
 * coherently for desk-sized hosts. Soundness of the output never depends on
 * the scale; only the guarantee of success does.
 */
struct FinderParams {
  int k = 0;
  double scale = 1.0;
  /// Theorem-4.1 constant C for find_digraph_subdivision; not fixed by the
  /// construction, so it is configuration.
  double digraph_constant = 150.0;

  static FinderParams for_k(int k, double scale = 1.0);

  bool paper_scale() const { return scale >= 1.0; }
  double k_pow() const;            ///< k^{7/4}
  double slack() const;            ///< scale * k^{7/4}
  double k_squared() const;        ///< scale * k^2
  double peel_threshold() const;   ///< scale * (k^2 + 12 k^{7/4})
  double degree_requirement() const;  ///< scale * (2k^2 + 147 k^{7/4})
  /// alpha with size = 2 alpha k^2 + (20 alpha + 4) k^{7/4}, all scaled.
  double alpha_for(int size) const;
  /// alpha k^2 + 2 k^{7/4}, scaled.
  double deg_floor(double alpha) const;
};

/// k branch candidates whose in-degrees (inside the ground set) clear the
/// floor and sit within `slack` of the centre m.
struct BalancedSet {
  std::vector<int> members;
  double m = 0;
  double alpha = 0;
  double slack = 0;
  double deg_floor = 0;
};

/**
 * Pigeonholes the in-degrees of T[ground] above the floor into consecutive
 * windows of width `slack` and takes the k lowest-index vertices of the
 * lowest window holding k of them. Throws TooSmall when alpha < 1 or no
 * window is populated enough.
 */
BalancedSet find_balanced_set(const Tournament& t, const VertexSet& ground, const FinderParams& params);
BalancedSet find_balanced_set(const Tournament& t, const FinderParams& params);

/// Paths of a partial subdivision on a fixed branch set.
struct PartialSubdivision {
  std::vector<int> branch;
  std::map<VertexPair, std::vector<int>> paths;  ///< pair -> internals (1 or 2 vertices)
  std::vector<VertexPair> pending;               ///< not embedded; the failed pair first

  int l1() const;
  int l2() const;
  /// Branch vertices plus all internals.
  VertexSet vertices(int capacity) const;
};

/// Every required pair (x, y) of branch host vertices whose edge points y -> x.
std::vector<VertexPair> reversed_pairs(const Tournament& t, const std::vector<int>& branch);

/// A 2-path x z y, else a 3-path x z w y, with internals drawn from `avail`;
/// lowest indices first.
std::optional<std::vector<int>> embed_short_path(const Tournament& t, const VertexSet& avail, int x, int y);

struct Len2Result {
  std::optional<VertexPair> failed;  ///< nullopt when the swaps resolved every failure
  int swaps = 0;
};

/**
 * Exchange step: while the failed pair (x, y) has a common vertex z in
 * N+(x) & N-(y) that is an internal of some 3-path (u, v), embed (x, y) as
 * x z y and re-embed (u, v) elsewhere; if that fails, (u, v) becomes the
 * failed pair. Each swap raises l1, so at most #pairs swaps happen.
 */
Len2Result maximize_len2(const Tournament& t, const VertexSet& ground, PartialSubdivision& partial,
                         VertexPair failed);

struct DichotomyOutcome {
  enum class Arm { Partial, Cut };
  Arm arm = Arm::Partial;
  PartialSubdivision partial;
  std::optional<VertexPair> failed_edge;  ///< Partial arm only; nullopt when everything embedded
  CutSplit cut;                           ///< Cut arm only
  int swaps = 0;
};

/**
 * Greedily embeds `pairs` on branch set b inside T[ground] as internally
 * disjoint 2- or 3-paths. At the first failure it runs maximize_len2, then
 * returns Partial if 4(l1 + l2) + 6 slack > m, else the cut from derive_cut.
 */
DichotomyOutcome greedy_partial_subdivision(const Tournament& t, const VertexSet& ground, const BalancedSet& b,
                                            const std::vector<VertexPair>& pairs, const FinderParams& params);

/**
 * U = V(partial) | (N-(x) \ N-(y)), source = N-(y) \ U, sink = N+(x) \ V(partial),
 * all inside ground. Throws CutInvalid unless |source| >= |U| + k and |sink| >= k.
 */
CutSplit derive_cut(const Tournament& t, const VertexSet& ground, const PartialSubdivision& partial,
                    VertexPair failed, int k);

/// One stage of the cut chain, with the half-matching that certifies
/// |N+(X) & source| >= |X|/2 for every X inside the cut.
struct CutStage {
  VertexSet tournament;  ///< T_i
  VertexSet cut;         ///< U_i
  VertexSet source;      ///< S_i
  VertexSet sink;        ///< T_{i+1}
  HalfMatching matching;
  int repairs = 0;
};

struct CutChain {
  std::vector<CutStage> stages;
  VertexSet terminal;
};

/**
 * Repairs (U, S, sink) until the half-matching certificate holds: each Hall
 * violator X is swapped for N+(X) & S, moving X into the sink. |U| drops on
 * every repair. Throws RepairExhausted when |S| < |U| on entry.
 */
CutStage minimize_cut(const Tournament& t, const VertexSet& tournament, const VertexSet& cut, const VertexSet& source,
                      const VertexSet& sink, int k);

struct PeelResult {
  std::vector<int> removed;  ///< in removal order
  VertexSet rest;
};

/// Repeatedly removes a vertex of out-degree < threshold in what remains
/// (lowest index among the minima) until k are removed or none qualifies.
PeelResult peel_low_outdegree(const Tournament& t, const VertexSet& ground, double threshold, int k);

/**
 * Joins each pair (x, y) by x -> u -> s -> y with u in a cut, s its matched
 * source vertex, y in the terminal. Each x needs at least 2 |pairs|
 * out-neighbours across the cuts, else InsufficientOutNeighbours.
 */
std::vector<PathWitness> embed_via_cut_chain(const Tournament& t, const std::vector<VertexPair>& pairs,
                                             const CutChain& chain);

struct FailureTrace {
  int stage = 0;
  std::string step;
  std::string reason;
  std::string message;
  std::map<std::string, long long> values;
};

nlohmann::json to_json(const FailureTrace& f);

struct FinderResult {
  std::optional<Subdivision> witness;
  std::optional<FailureTrace> failure;
  CutChain chain;
  std::string terminal_case;  ///< "cycle", "edge", "greedy", "partial+chain", "peeled+chain"
  int iterations = 0;
  int swaps = 0;
};

/**
 * Subdivision of the complete digraph on k vertices with every path of
 * length at most 3. At scale >= 1 the host must have minimum out-degree
 * 2k^2 + 147k^{7/4} (1 for k = 2), else InfeasibleDegree.
 */
FinderResult find_complete_subdivision(const Tournament& t, int k, const FinderParams& params);

/// The same driver for an arbitrary pattern without isolated vertices; at
/// scale >= 1 requires minimum out-degree >= C * |edges|.
FinderResult find_digraph_subdivision(const Tournament& t, const PatternDigraph& pattern, const FinderParams& params);

}  // namespace tsub
