#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tsub/tournament.hpp"

namespace tsub {

/// A pattern digraph on vertices 0..k-1 with ordered-pair edges.
struct PatternDigraph {
  int k = 0;
  std::vector<std::pair<int, int>> edges;

  bool is_complete() const;
  bool has_isolated_vertices() const;
  /// Throws InvalidArgument on self-loops, duplicates or out-of-range ends.
  void validate() const;

  friend bool operator==(const PatternDigraph&, const PatternDigraph&) = default;
};

/// All k(k-1) ordered pairs.
PatternDigraph pattern_complete_digraph(int k);
/// The k(k-1)/2 pairs (i, j) with i < j.
PatternDigraph pattern_transitive(int k);
/// `complete:K`, `transitive:K`, or `edges:a>b,c>d,...`.
PatternDigraph parse_pattern(const std::string& spec);

/// A directed path in the host from one branch vertex to another.
struct PathWitness {
  int from = -1;
  int to = -1;
  std::vector<int> internals;

  int length() const { return static_cast<int>(internals.size()) + 1; }
  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

/**
 * A subdivision of `pattern` in a host: branch[i] is the host vertex of
 * pattern vertex i, and each pattern edge (a, b) is realised by exactly one
 * path from branch[a] to branch[b].
 */
struct Subdivision {
  PatternDigraph pattern;
  std::vector<int> branch;
  std::vector<PathWitness> paths;

  int count_paths_of_length(int len) const;
  int l1() const { return count_paths_of_length(2); }
  int l2() const { return count_paths_of_length(3); }
  int span() const;
};

enum class ViolationKind {
  PatternInvalid,
  BranchOutOfRange,
  BranchCollision,
  MissingPath,
  DuplicatePath,
  UnexpectedPath,
  VertexOutOfRange,
  MissingEdgeHop,
  ReusedInternal,
  LengthCap,
  ExactLength,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct VerifyReport {
  bool valid = true;
  std::vector<Violation> violations;
  int l1 = 0;
  int l2 = 0;
  int span = 0;

  bool has(ViolationKind kind) const;
};

/**
 * Checks every clause of the subdivision definition and collects all
 * violations. Paths longer than max_len, or of length other than exact_len
 * when given, are violations too.
 */
VerifyReport verify(const Tournament& host, const Subdivision& sub, int max_len,
                    std::optional<int> exact_len = std::nullopt);

/// Fewest host vertices any subdivision of the pattern can span. For the
/// complete digraph in a tournament every pair needs one subdivided direction.
int min_span(const PatternDigraph& pattern, bool host_is_tournament);

nlohmann::json to_json(const PatternDigraph& pattern);
PatternDigraph pattern_from_json(const nlohmann::json& j);
nlohmann::json witness_to_json(const Subdivision& sub, const std::string& host_hash);
/// Parses the witness document; the stored host hash, if any, goes to `host_hash`.
Subdivision witness_from_json(const nlohmann::json& j, std::string* host_hash = nullptr);
nlohmann::json to_json(const VerifyReport& report);

}  // namespace tsub
