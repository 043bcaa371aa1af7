#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsub/complete_finder.hpp"
#include "tsub/subdivision.hpp"
#include "tsub/tournament.hpp"

namespace tsub {

// ---------------------------------------------------------------------------
// Nearly-regular sets

enum class RegularSide {
  OutHeavy,  ///< d-(v) <= d+(v) <= C d-(v)
  InHeavy,   ///< d+(v) <= d-(v) <= C d+(v)
};

std::string to_string(RegularSide side);

struct NearlyRegularSet {
  std::vector<int> members;
  int ratio_bound = 4;
  double m = 0;  ///< window centre, k-variant only
  RegularSide side = RegularSide::OutHeavy;
  int ratio_set_size = 0;  ///< |R| before choosing a side
};

/// True iff v satisfies the side's ratio chain inside `ground`.
bool satisfies_side(const Tournament& t, const VertexSet& ground, int v, RegularSide side, int ratio_bound = 4);

/**
 * R = vertices of T[ground] whose out/in-degree ratio lies in [1, 4] one way
 * or the other (vertices with a zero degree excluded). |R| >= |ground|/5 is a
 * theorem and is asserted; the larger side-homogeneous part is returned,
 * ties going to OutHeavy.
 */
NearlyRegularSet find_nearly_regular(const Tournament& t, const VertexSet& ground);
NearlyRegularSet find_nearly_regular(const Tournament& t);

/**
 * k members of the nearly-regular set whose in-degrees lie in [m - 10k, m + 10k].
 * Sorting by in-degree and sliding a window of spread 20k over the sorted
 * list, the lowest window holding k vertices wins. Throws TooSmall when
 * |ground| < 10k.
 */
NearlyRegularSet find_nearly_regular_k(const Tournament& t, const VertexSet& ground, int k);
NearlyRegularSet find_nearly_regular_k(const Tournament& t, int k);

// ---------------------------------------------------------------------------
// Finders

struct TransitiveParams {
  double scale = 1.0;
  double tt_constant = 150.0;       ///< |T| >= C k^2 for the length-3 finder
  double onesub_constant = 1.0e7;   ///< |T| >= C k^2 ln^3 k for the 1-subdivision finder

  bool paper_scale() const { return scale >= 1.0; }
};

struct TransitiveResult {
  std::optional<Subdivision> witness;
  std::optional<FailureTrace> failure;
  int depth = 0;        ///< deepest recursion level reached
  int splits = 0;       ///< recursive splits performed
  int cross_pairs = 0;  ///< 2-paths embedded between recursive blocks (1-subdivision finder)
};

/**
 * Subdivision of the transitive tournament on k vertices with every path of
 * length at most 3. Branch vertices come from a nearly-regular set ordered by
 * non-increasing out-degree; reversed pairs are embedded greedily. When a
 * pair (x, y) is stuck the common out- and in-neighbourhoods A, B of x and y
 * (minus used vertices) satisfy B -> A and the finder recurses on both,
 * ceil(3k/5) branch vertices on the larger side. At scale >= 1 requires
 * |T| >= 150 k^2 (InfeasibleSize).
 */
TransitiveResult find_tt_len3(const Tournament& t, int k, const TransitiveParams& params = {});

// ---------------------------------------------------------------------------
// 1-subdivision machinery

/// Simple undirected graph on vertices 0..n-1 as bitset rows.
struct UndirectedGraph {
  int n = 0;
  std::vector<VertexSet> adj;

  explicit UndirectedGraph(int size = 0) : n(size), adj(size, VertexSet(size)) {}
  void add_edge(int u, int v) {
    adj[u].set(v);
    adj[v].set(u);
  }
  bool edge(int u, int v) const { return adj[u].test(v); }
};

/// x ~ y iff |(N+(x) ^ N+(y)) & ground| < threshold, for x != y in ground.
struct AuxGraph {
  UndirectedGraph graph;
  VertexSet ground;
  long long threshold = 0;
};

/// Threshold 2k^2 on the whole tournament.
AuxGraph build_aux_graph(const Tournament& t, int k);
AuxGraph build_aux_graph(const Tournament& t, const VertexSet& ground, long long threshold);

/// Connected components of g restricted to `alive`, ordered by lowest member.
std::vector<VertexSet> connected_components(const UndirectedGraph& g, const VertexSet& alive);

struct BallDecomposition {
  VertexSet removed;
  std::vector<VertexSet> components;
  double bound = 0;  ///< n / (5 ln n)
  int cuts = 0;
};

/**
 * Separator by BFS ball growing. While some component of G - removed is
 * larger than n/(5 ln n), grow BFS levels from its lowest vertex x until a
 * level L_r with |L_r| < |B_{r-1}(x)|/(5 ln n) appears, and remove L_r. A ball
 * B_r(x) with r <= 10 ln^2 n exceeding n/(5 ln n) violates the precondition
 * and raises BallTooLarge carrying x and r. `vertices` selects the subgraph;
 * n is its size.
 */
BallDecomposition ball_decomposition(const UndirectedGraph& g, const VertexSet& vertices);
BallDecomposition ball_decomposition(const UndirectedGraph& g);

struct ComponentPartition {
  std::vector<int> order;  ///< sigma restricted to the kept vertices
  VertexSet a1, a2;
  std::vector<int> x_family, y_family;  ///< indices into the component list
  VertexSet x_cap_a1, y_cap_a2;
  int m = 0;
  double lower_bound = 0;  ///< (1 - 1/(2 ln n)) m / 4
  bool greedy = false;     ///< true when the greedy selection was needed
};

/**
 * Orders the component vertices by non-increasing out-degree in T[ground]
 * (ties by index), keeps the first m = floor((1 - 1/(5 ln n)) n) with
 * n = |ground|, halves them into A1 and A2 and splits the components into
 * families X, Y with both |X & A1| and |Y & A2| at least (1 - 1/(2 ln n)) m/4.
 * Throws PartitionBound if the bounds fail numerically.
 */
ComponentPartition partition_components(const Tournament& t, const VertexSet& ground,
                                        const std::vector<VertexSet>& components);

/**
 * 1-subdivision of the transitive tournament on k vertices: every path has
 * exactly one internal vertex. k <= 3 is read off a greedy transitive chain;
 * larger k split through the auxiliary graph and recurse on T[X & A1]
 * (ceil(k/2)) and T[Y & A2] (floor(k/2)), joining the blocks by 2-paths. At
 * scale >= 1 requires |T| >= 10^7 k^2 ln^3 k (InfeasibleSize).
 */
TransitiveResult find_one_subdivision(const Tournament& t, int k, const TransitiveParams& params = {});

}  // namespace tsub
