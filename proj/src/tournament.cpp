#include "tsub/tournament.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace tsub {

std::string to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::InfeasibleDegree: return "InfeasibleDegree";
    case ErrorCode::InfeasibleSize: return "InfeasibleSize";
    case ErrorCode::CutInvalid: return "CutInvalid";
    case ErrorCode::RepairExhausted: return "RepairExhausted";
    case ErrorCode::InsufficientOutNeighbours: return "InsufficientOutNeighbours";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::PartitionBound: return "PartitionBound";
  }
  return "Unknown";
}

Tournament::Tournament(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "tournament size must be nonnegative");
  out_.assign(n, VertexSet(n));
  in_.assign(n, VertexSet(n));
  root_.resize(n);
  std::iota(root_.begin(), root_.end(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out_[i].set(j);
      in_[j].set(i);
    }
}

void Tournament::orient(int u, int v) {
  out_[u].set(v);
  in_[v].set(u);
  out_[v].reset(u);
  in_[u].reset(v);
}

// ---------------------------------------------------------------------------

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive", {{"value", n}});
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Tournament random_tournament(int n, std::uint64_t seed) {
  require_positive(n, "n");
  Tournament t(n);
  std::mt19937_64 rng(seed);
  std::uint64_t bits = 0;
  int left = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (left == 0) {
        bits = rng();
        left = 64;
      }
      if ((bits & 1U) == 0) t.orient(j, i);
      bits >>= 1;
      --left;
    }
  return t;
}

Tournament transitive_tournament(int n) {
  require_positive(n, "n");
  return Tournament(n);
}

Tournament rotational_tournament(int n) {
  require_positive(n, "n");
  if (n % 2 == 0) throw Error(ErrorCode::InvalidArgument, "rotational tournament needs odd n", {{"n", n}});
  Tournament t(n);
  for (int i = 0; i < n; ++i)
    for (int d = 1; d <= (n - 1) / 2; ++d) t.orient(i, (i + d) % n);
  return t;
}

Tournament blowup_cyclic_triangle(int class_size) {
  require_positive(class_size, "class size");
  const int c = class_size;
  Tournament t(3 * c);  // within-class order already transitive, A -> B, B -> C
  for (int a = 0; a < c; ++a)
    for (int z = 2 * c; z < 3 * c; ++z) t.orient(z, a);
  return t;
}

Tournament layered_tournament(int blocks, int block_size, std::uint64_t seed) {
  require_positive(blocks, "block count");
  require_positive(block_size, "block size");
  return layered_tournament(std::vector<int>(blocks, block_size), seed);
}

Tournament layered_tournament(const std::vector<int>& block_sizes, std::uint64_t seed) {
  if (block_sizes.empty()) throw Error(ErrorCode::InvalidArgument, "layered tournament needs a block");
  int n = 0;
  for (int size : block_sizes) {
    require_positive(size, "block size");
    n += size;
  }
  Tournament t(n);
  int base = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    const int size = block_sizes[b];
    Tournament inner = random_tournament(size, mix_seed(seed, b));
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        if (inner.edge(j, i)) t.orient(base + j, base + i);
    base += size;
  }
  return t;
}

std::optional<GeneratorKind> parse_generator_kind(const std::string& name) {
  if (name == "random") return GeneratorKind::Random;
  if (name == "transitive") return GeneratorKind::Transitive;
  if (name == "rotational") return GeneratorKind::Rotational;
  if (name == "blowup" || name == "blowup_cyclic_triangle") return GeneratorKind::BlowupCyclicTriangle;
  if (name == "layered") return GeneratorKind::Layered;
  return std::nullopt;
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Random: return "random";
    case GeneratorKind::Transitive: return "transitive";
    case GeneratorKind::Rotational: return "rotational";
    case GeneratorKind::BlowupCyclicTriangle: return "blowup";
    case GeneratorKind::Layered: return "layered";
  }
  return "unknown";
}

Tournament generate(const GeneratorParams& p) {
  switch (p.kind) {
    case GeneratorKind::Random: return random_tournament(p.n, p.seed);
    case GeneratorKind::Transitive: return transitive_tournament(p.n);
    case GeneratorKind::Rotational: return rotational_tournament(p.n);
    case GeneratorKind::BlowupCyclicTriangle: return blowup_cyclic_triangle(p.class_size);
    case GeneratorKind::Layered: return layered_tournament(p.blocks, p.class_size, p.seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator kind");
}

// ---------------------------------------------------------------------------

DegreeProfile degree_profile(const Tournament& t) {
  DegreeProfile p;
  const int n = t.size();
  p.out_degrees.resize(n);
  p.in_degrees.resize(n);
  for (int v = 0; v < n; ++v) {
    p.out_degrees[v] = t.out_degree(v);
    p.in_degrees[v] = t.in_degree(v);
  }
  if (n > 0) {
    p.min_out = *std::min_element(p.out_degrees.begin(), p.out_degrees.end());
    p.min_in = *std::min_element(p.in_degrees.begin(), p.in_degrees.end());
  }
  return p;
}

VertexSet low_in_degree_vertices(const Tournament& t, int ell) {
  VertexSet s(t.size());
  for (int v = 0; v < t.size(); ++v)
    if (t.in_degree(v) <= ell) s.set(v);
  return s;
}

VertexSet low_out_degree_vertices(const Tournament& t, int ell) {
  VertexSet s(t.size());
  for (int v = 0; v < t.size(); ++v)
    if (t.out_degree(v) <= ell) s.set(v);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<VertexSet> strong_components(const Tournament& t, const VertexSet& ground) {
  // Sorted by non-increasing score, a prefix of i vertices beats everything
  // after it iff its scores sum to C(i,2) + i*(n-i). Those prefixes are
  // exactly the component boundaries of the condensation.
  std::vector<int> vs = ground.members();
  const long long n = static_cast<long long>(vs.size());
  std::vector<int> score(t.size(), 0);
  for (int v : vs) score[v] = t.out_degree_in(v, ground);
  std::stable_sort(vs.begin(), vs.end(), [&](int a, int b) { return score[a] > score[b]; });

  std::vector<VertexSet> comps;
  VertexSet current(t.size());
  long long sum = 0;
  for (long long i = 1; i <= n; ++i) {
    const int v = vs[i - 1];
    current.set(v);
    sum += score[v];
    if (sum == i * (i - 1) / 2 + i * (n - i)) {
      comps.push_back(current);
      current = VertexSet(t.size());
    }
  }
  return comps;
}

std::optional<CutSplit> split_by_cut(const Tournament& t, const VertexSet& ground, const VertexSet& cut,
                                     int source_prefix) {
  const VertexSet rest = ground - cut;
  if (rest.count() < 2) throw Error(ErrorCode::InvalidArgument, "split_by_cut needs at least two uncut vertices");
  auto comps = strong_components(t, rest);
  if (comps.size() < 2) return std::nullopt;
  if (source_prefix < 1 || source_prefix >= static_cast<int>(comps.size()))
    throw Error(ErrorCode::InvalidArgument, "source prefix out of range",
                {{"prefix", source_prefix}, {"components", static_cast<long long>(comps.size())}});
  CutSplit split{cut & ground, VertexSet(t.size()), VertexSet(t.size())};
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) (i < source_prefix ? split.source : split.sink) |= comps[i];
  return split;
}

std::optional<CutSplit> split_by_cut(const Tournament& t, const VertexSet& cut) {
  return split_by_cut(t, t.all(), cut, 1);
}

bool all_edges_from(const Tournament& t, const VertexSet& from, const VertexSet& to) {
  bool ok = true;
  from.for_each([&](int v) {
    if (ok && t.in(v).intersects(to)) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------

Tournament induced(const Tournament& t, const std::vector<int>& members) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "induced subtournament needs a nonempty vertex set");
  const int m = static_cast<int>(members.size());
  Tournament s;
  s.out_.assign(m, VertexSet(m));
  s.in_.assign(m, VertexSet(m));
  s.root_.resize(m);
  for (int i = 0; i < m; ++i) {
    s.root_[i] = t.root_index(members[i]);
    for (int j = 0; j < m; ++j) {
      if (i != j && t.edge(members[i], members[j])) {
        s.out_[i].set(j);
        s.in_[j].set(i);
      }
    }
  }
  return s;
}

Tournament induced(const Tournament& t, const VertexSet& members) { return induced(t, members.members()); }

std::vector<int> greedy_transitive_chain(const Tournament& t, const VertexSet& ground) {
  std::vector<int> chain;
  VertexSet rest = ground;
  while (rest.any()) {
    int best = -1, best_deg = -1;
    rest.for_each([&](int v) {
      const int d = t.out_degree_in(v, rest);
      if (d > best_deg) {
        best = v;
        best_deg = d;
      }
    });
    chain.push_back(best);
    rest &= t.out(best);
  }
  return chain;
}

// ---------------------------------------------------------------------------

std::string format_tournament(const Tournament& t) {
  std::string s = "tournament v1\n" + std::to_string(t.size()) + "\n";
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) s += (i == j) ? '-' : (t.edge(i, j) ? '1' : '0');
    s += '\n';
  }
  return s;
}

Tournament parse_tournament(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return;
    }
    throw Error(ErrorCode::Parse, std::string("unexpected end of input reading ") + what);
  };
  next_line("header");
  if (line != "tournament v1") throw Error(ErrorCode::Parse, "bad header: expected 'tournament v1'");
  next_line("vertex count");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line, &used);
    if (used != line.size()) throw std::invalid_argument(line);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "bad vertex count: " + line);
  }
  if (n < 1) throw Error(ErrorCode::Parse, "vertex count must be positive");
  std::vector<std::string> rows(n);
  for (int i = 0; i < n; ++i) {
    next_line("adjacency row");
    if (static_cast<int>(line.size()) != n)
      throw Error(ErrorCode::Parse, "row " + std::to_string(i) + " has wrong length", {{"row", i}});
    rows[i] = line;
  }
  Tournament t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const char c = rows[i][j];
      if (i == j) {
        if (c != '-') throw Error(ErrorCode::Parse, "diagonal entry must be '-'", {{"row", i}});
        continue;
      }
      if (c != '0' && c != '1') throw Error(ErrorCode::Parse, "entries must be 0 or 1", {{"row", i}, {"col", j}});
      if ((c == '1') == (rows[j][i] == '1'))
        throw Error(ErrorCode::Parse, "orientation is not antisymmetric", {{"row", i}, {"col", j}});
      if (c == '1' && i > j) t.orient(i, j);
    }
  return t;
}

Tournament read_tournament_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open tournament file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_tournament(ss.str());
}

void write_tournament_file(const Tournament& t, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write tournament file: " + path);
  f << format_tournament(t);
}

std::string tournament_hash(const Tournament& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : format_tournament(t)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = hex[h & 15U];
  return s;
}

}  // namespace tsub
