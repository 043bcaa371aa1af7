#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsub/error.hpp"
#include "tsub/vertex_set.hpp"

namespace tsub {

/**
 * A tournament on vertices 0..n-1.
 *
 * Orientation is stored row-packed: bit j of out(i) is set iff i -> j. The
 * in-rows are the transpose, kept in sync so that both neighbourhoods are
 * available as bitsets. Tournaments produced by induced() remember, for each
 * local vertex, its index in the root tournament.
 */
class Tournament {
 public:
  Tournament() = default;
  /// Transitive orientation i -> j for i < j.
  explicit Tournament(int n);

  int size() const { return static_cast<int>(out_.size()); }

  bool edge(int u, int v) const { return out_[u].test(v); }
  /// Orients the pair {u, v} as u -> v.
  void orient(int u, int v);

  const VertexSet& out(int v) const { return out_[v]; }
  const VertexSet& in(int v) const { return in_[v]; }
  int out_degree(int v) const { return out_[v].count(); }
  int in_degree(int v) const { return in_[v].count(); }
  int out_degree_in(int v, const VertexSet& within) const { return VertexSet::count_and(out_[v], within); }
  int in_degree_in(int v, const VertexSet& within) const { return VertexSet::count_and(in_[v], within); }

  VertexSet all() const { return VertexSet::full(size()); }

  int root_index(int v) const { return root_[v]; }
  const std::vector<int>& root_indices() const { return root_; }

  friend bool operator==(const Tournament& a, const Tournament& b) { return a.out_ == b.out_; }

 private:
  friend Tournament induced(const Tournament&, const std::vector<int>&);

  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
  std::vector<int> root_;
};

// ---------------------------------------------------------------------------
// Generators

enum class GeneratorKind { Random, Transitive, Rotational, BlowupCyclicTriangle, Layered };

struct GeneratorParams {
  GeneratorKind kind = GeneratorKind::Random;
  int n = 0;           ///< vertex count (random, transitive, rotational)
  int class_size = 0;  ///< blow-up class size, or layered block size
  int blocks = 0;      ///< layered block count
  std::uint64_t seed = 0;
};

std::optional<GeneratorKind> parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

/// Uniform over all labelled orientations; one RNG draw per 64 pairs.
Tournament random_tournament(int n, std::uint64_t seed);
Tournament transitive_tournament(int n);
/// i -> i+1, ..., i+(n-1)/2 (mod n); n must be odd.
Tournament rotational_tournament(int n);
/// Three transitive classes A -> B -> C -> A of the given size.
Tournament blowup_cyclic_triangle(int class_size);
/**
 * Blocks L_0 -> L_1 -> ... -> L_{b-1}, each a uniformly random tournament of
 * the given size. Hosts of this shape disconnect along block boundaries and
 * drive the cut-chain machinery of the complete finder.
 */
Tournament layered_tournament(int blocks, int block_size, std::uint64_t seed);
/// Same with individually sized blocks, in order.
Tournament layered_tournament(const std::vector<int>& block_sizes, std::uint64_t seed);

Tournament generate(const GeneratorParams& params);

/// SplitMix64 finalizer; the per-instance seed derivation of every sweep.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// ---------------------------------------------------------------------------
// Degrees

struct DegreeProfile {
  std::vector<int> out_degrees;
  std::vector<int> in_degrees;
  int min_out = 0;
  int min_in = 0;
};

DegreeProfile degree_profile(const Tournament& t);

/// {v : d-(v) <= ell}. Never larger than 2*ell + 1.
VertexSet low_in_degree_vertices(const Tournament& t, int ell);
/// {v : d+(v) <= ell}.
VertexSet low_out_degree_vertices(const Tournament& t, int ell);

// ---------------------------------------------------------------------------
// Strong components and cuts

/// Strong components of T[ground], listed in condensation order: every edge
/// between two listed components points from the earlier to the later one.
std::vector<VertexSet> strong_components(const Tournament& t, const VertexSet& ground);

struct CutSplit {
  VertexSet cut;
  VertexSet source;
  VertexSet sink;
};

/**
 * Splits T[ground] \ U into a source and a sink with source -> sink, or
 * returns nullopt when T[ground] \ U is strongly connected. The source is the
 * union of the first `source_prefix` strong components in condensation order.
 */
std::optional<CutSplit> split_by_cut(const Tournament& t, const VertexSet& ground, const VertexSet& cut,
                                     int source_prefix = 1);
std::optional<CutSplit> split_by_cut(const Tournament& t, const VertexSet& cut);

/// True iff every edge between `from` and `to` points from `from` to `to`.
bool all_edges_from(const Tournament& t, const VertexSet& from, const VertexSet& to);

// ---------------------------------------------------------------------------
// Subtournaments

/// T[S] with local vertex i corresponding to members[i]; root indices compose.
Tournament induced(const Tournament& t, const std::vector<int>& members);
Tournament induced(const Tournament& t, const VertexSet& members);

/// Vertices of a transitive subtournament in order (each beats all later
/// ones), built by repeatedly taking a maximum out-degree vertex of the
/// remaining out-neighbourhood. Has at least floor(log2 |ground|) + 1 members.
std::vector<int> greedy_transitive_chain(const Tournament& t, const VertexSet& ground);

// ---------------------------------------------------------------------------
// Text format

/// `tournament v1`, then n, then n rows of `0`/`1`/`-`.
std::string format_tournament(const Tournament& t);
Tournament parse_tournament(const std::string& text);
Tournament read_tournament_file(const std::string& path);
void write_tournament_file(const Tournament& t, const std::string& path);

/// FNV-1a over the text format, as 16 lowercase hex digits.
std::string tournament_hash(const Tournament& t);

}  // namespace tsub
