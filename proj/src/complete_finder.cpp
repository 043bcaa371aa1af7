#include "tsub/complete_finder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsub {

// ---------------------------------------------------------------------------
// Parameters

FinderParams FinderParams::for_k(int k, double scale) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive", {{"k", k}});
  if (!(scale > 0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  FinderParams p;
  p.k = k;
  p.scale = scale;
  return p;
}

double FinderParams::k_pow() const { return std::pow(static_cast<double>(k), 1.75); }
double FinderParams::slack() const { return scale * k_pow(); }
double FinderParams::k_squared() const { return scale * static_cast<double>(k) * k; }
double FinderParams::peel_threshold() const { return k_squared() + 12 * slack(); }
double FinderParams::degree_requirement() const { return 2 * k_squared() + 147 * slack(); }
double FinderParams::alpha_for(int size) const { return (size - 4 * slack()) / (2 * k_squared() + 20 * slack()); }
double FinderParams::deg_floor(double alpha) const { return alpha * k_squared() + 2 * slack(); }

// ---------------------------------------------------------------------------
// Balanced branch sets

BalancedSet find_balanced_set(const Tournament& t, const VertexSet& ground, const FinderParams& params) {
  const int n = ground.count();
  BalancedSet b;
  b.slack = params.slack();
  b.alpha = params.alpha_for(n);
  if (b.alpha < 1)
    throw Error(ErrorCode::TooSmall, "tournament too small for a balanced set (alpha < 1)",
                {{"size", n}, {"needed", static_cast<long long>(std::ceil(2 * params.k_squared() + 24 * b.slack))}});
  b.deg_floor = params.deg_floor(b.alpha);

  // Windows [floor + j*slack, floor + (j+1)*slack); vertices bucketed by in-degree.
  std::map<long long, std::vector<int>> windows;
  ground.for_each([&](int v) {
    const int d = t.in_degree_in(v, ground);
    if (d >= b.deg_floor) windows[static_cast<long long>(std::floor((d - b.deg_floor) / b.slack))].push_back(v);
  });
  for (const auto& [j, members] : windows) {
    if (static_cast<int>(members.size()) < params.k) continue;
    b.members.assign(members.begin(), members.begin() + params.k);
    int lo = n, hi = 0;
    for (int v : b.members) {
      const int d = t.in_degree_in(v, ground);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    b.m = (lo + hi) / 2.0;
    return b;
  }
  throw Error(ErrorCode::TooSmall, "no in-degree window holds k vertices above the floor",
              {{"size", n}, {"k", params.k}, {"candidates", static_cast<long long>(windows.size())}});
}

BalancedSet find_balanced_set(const Tournament& t, const FinderParams& params) {
  return find_balanced_set(t, t.all(), params);
}

// ---------------------------------------------------------------------------
// Partial subdivisions

int PartialSubdivision::l1() const {
  return static_cast<int>(std::count_if(paths.begin(), paths.end(), [](const auto& p) { return p.second.size() == 1; }));
}

int PartialSubdivision::l2() const {
  return static_cast<int>(std::count_if(paths.begin(), paths.end(), [](const auto& p) { return p.second.size() == 2; }));
}

VertexSet PartialSubdivision::vertices(int capacity) const {
  VertexSet s = VertexSet::from(capacity, branch);
  for (const auto& [pair, internals] : paths)
    for (int v : internals) s.set(v);
  return s;
}

std::vector<VertexPair> reversed_pairs(const Tournament& t, const std::vector<int>& branch) {
  std::vector<VertexPair> pairs;
  for (std::size_t i = 0; i < branch.size(); ++i)
    for (std::size_t j = i + 1; j < branch.size(); ++j) {
      const int a = branch[i], b = branch[j];
      pairs.push_back(t.edge(a, b) ? VertexPair{b, a} : VertexPair{a, b});
    }
  return pairs;
}

std::optional<std::vector<int>> embed_short_path(const Tournament& t, const VertexSet& avail, int x, int y) {
  if (int z = VertexSet::first_and(t.out(x), t.in(y), avail); z >= 0) return std::vector<int>{z};
  std::optional<std::vector<int>> found;
  const VertexSet first_hop = t.out(x) & avail;
  for (int z = first_hop.first(); z >= 0 && !found; z = first_hop.next(z + 1))
    if (int w = VertexSet::first_and(t.out(z), t.in(y), avail); w >= 0) found = std::vector<int>{z, w};
  return found;
}

namespace {

void erase_pair(std::vector<VertexPair>& v, VertexPair p) {
  v.erase(std::remove(v.begin(), v.end(), p), v.end());
}

}  // namespace

Len2Result maximize_len2(const Tournament& t, const VertexSet& ground, PartialSubdivision& partial, VertexPair failed) {
  Len2Result r;
  r.failed = failed;
  const int limit = static_cast<int>(partial.paths.size() + partial.pending.size());
  while (true) {
    const auto [x, y] = *r.failed;
    std::map<int, VertexPair> owner;  // internal of a 3-path -> its pair
    for (const auto& [pair, internals] : partial.paths)
      if (internals.size() == 2)
        for (int v : internals) owner.emplace(v, pair);
    const VertexSet common = t.out(x) & t.in(y) & ground;
    int z = -1;
    for (int v = common.first(); v >= 0; v = common.next(v + 1))
      if (owner.count(v)) {
        z = v;
        break;
      }
    if (z < 0) return r;
    if (++r.swaps > limit) throw std::logic_error("maximize_len2: swap count exceeded the number of pairs");

    const VertexPair displaced = owner.at(z);
    partial.paths.erase(displaced);
    partial.paths[{x, y}] = {z};
    erase_pair(partial.pending, {x, y});
    const VertexSet avail = ground - partial.vertices(t.size());
    if (auto path = embed_short_path(t, avail, displaced.first, displaced.second)) {
      partial.paths[displaced] = *path;
      r.failed.reset();
      return r;
    }
    partial.pending.insert(partial.pending.begin(), displaced);
    r.failed = displaced;
  }
}

// ---------------------------------------------------------------------------
// Dichotomy

namespace {

struct CutSets {
  VertexSet cut, source, sink;
};

CutSets compute_cut_sets(const Tournament& t, const VertexSet& ground, const PartialSubdivision& partial,
                         VertexPair failed) {
  const auto [x, y] = failed;
  const VertexSet used = partial.vertices(t.size()) & ground;
  CutSets c;
  c.cut = used | ((t.in(x) - t.in(y)) & ground);
  c.source = (t.in(y) & ground) - c.cut;
  c.sink = (t.out(x) & ground) - used;
  return c;
}

}  // namespace

CutSplit derive_cut(const Tournament& t, const VertexSet& ground, const PartialSubdivision& partial, VertexPair failed,
                    int k) {
  auto c = compute_cut_sets(t, ground, partial, failed);
  if (c.source.intersects(c.sink) || (c.cut | c.source | c.sink) != ground)
    throw std::logic_error("derive_cut: failed pair still has a free 2-path");
  if (!all_edges_from(t, c.source, c.sink)) throw std::logic_error("derive_cut: failed pair still has a free 3-path");
  const int u = c.cut.count(), s = c.source.count(), snk = c.sink.count();
  if (s < u + k || snk < k)
    throw Error(ErrorCode::CutInvalid, "cut too unbalanced: need |S| >= |U| + k and |sink| >= k",
                {{"cut", u}, {"source", s}, {"sink", snk}, {"k", k}});
  return {c.cut, c.source, c.sink};
}

DichotomyOutcome greedy_partial_subdivision(const Tournament& t, const VertexSet& ground, const BalancedSet& b,
                                            const std::vector<VertexPair>& pairs, const FinderParams& params) {
  DichotomyOutcome out;
  auto& partial = out.partial;
  partial.branch = b.members;
  partial.pending = pairs;

  std::optional<VertexPair> failed;
  while (!partial.pending.empty()) {
    const VertexPair next = partial.pending.front();
    const VertexSet avail = ground - partial.vertices(t.size());
    if (auto path = embed_short_path(t, avail, next.first, next.second)) {
      partial.paths[next] = *path;
      partial.pending.erase(partial.pending.begin());
      continue;
    }
    auto res = maximize_len2(t, ground, partial, next);
    out.swaps += res.swaps;
    if (!res.failed) continue;
    failed = res.failed;
    break;
  }

  if (!failed) return out;
  out.failed_edge = failed;
  if (4.0 * (partial.l1() + partial.l2()) + 6 * b.slack > b.m) return out;
  out.arm = DichotomyOutcome::Arm::Cut;
  out.cut = derive_cut(t, ground, partial, *failed, params.k);
  return out;
}

// ---------------------------------------------------------------------------
// Cut chain

CutStage minimize_cut(const Tournament& t, const VertexSet& tournament, const VertexSet& cut, const VertexSet& source,
                      const VertexSet& sink, int k) {
  CutStage st{tournament, cut, source, sink, {}, 0};
  if (st.source.count() < st.cut.count() || st.sink.count() < k)
    throw Error(ErrorCode::RepairExhausted, "cut repair needs |S| >= |U| and |sink| >= k",
                {{"cut", st.cut.count()}, {"source", st.source.count()}, {"sink", st.sink.count()}, {"k", k}});
  const int bound = st.cut.count() + st.source.count();
  while (true) {
    auto hm = half_matching(t, st.cut.members(), st.source.members());
    if (hm.ok) {
      st.matching = std::move(hm.matching);
      break;
    }
    if (++st.repairs > bound) throw std::logic_error("minimize_cut: repair count exceeded |U| + |S|");
    const VertexSet x = VertexSet::from(t.size(), hm.violator);
    VertexSet reach(t.size());
    x.for_each([&](int v) { reach |= t.out(v); });
    reach &= st.source;
    st.cut = (st.cut - x) | reach;
    st.source -= reach;
    st.sink |= x;
    if (st.source.count() < st.cut.count())
      throw Error(ErrorCode::RepairExhausted, "cut repair lost |S| >= |U|",
                  {{"cut", st.cut.count()}, {"source", st.source.count()}});
  }
  if (!all_edges_from(t, st.source, st.sink)) throw std::logic_error("minimize_cut: source no longer dominates sink");
  return st;
}

PeelResult peel_low_outdegree(const Tournament& t, const VertexSet& ground, double threshold, int k) {
  PeelResult r{{}, ground};
  while (static_cast<int>(r.removed.size()) < k && r.rest.any()) {
    int best = -1, best_deg = 0;
    r.rest.for_each([&](int v) {
      const int d = t.out_degree_in(v, r.rest);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    });
    if (!(best_deg < threshold)) break;
    r.removed.push_back(best);
    r.rest.reset(best);
  }
  return r;
}

std::vector<PathWitness> embed_via_cut_chain(const Tournament& t, const std::vector<VertexPair>& pairs,
                                             const CutChain& chain) {
  std::vector<PathWitness> out;
  const int ell = static_cast<int>(pairs.size());
  if (ell == 0) return out;

  const int n = t.size();
  VertexSet primary(n), secondary(n);
  std::vector<int> partner(n, -1);
  for (const auto& st : chain.stages) {
    auto [m1, m2] = split_half_matching(st.matching);
    for (auto [u, s] : m1.edges) {
      primary.set(u);
      partner[u] = s;
    }
    for (auto [u, s] : m2.edges) {
      secondary.set(u);
      partner[u] = s;
    }
  }
  const VertexSet all_cuts = primary | secondary;

  std::vector<VertexSet> nbrs;
  for (auto [x, y] : pairs) {
    nbrs.push_back(t.out(x) & all_cuts);
    const int have = nbrs.back().count();
    if (have < 2 * ell)
      throw Error(ErrorCode::InsufficientOutNeighbours, "branch vertex has too few out-neighbours in the cuts",
                  {{"vertex", x}, {"count", have}, {"needed", 2 * ell}});
  }

  std::vector<std::vector<int>> internals(ell);
  VertexSet used_u(n), used_s(n);
  std::vector<int> second_round;
  auto take = [&](int i, const VertexSet& pool) {
    const int u = (nbrs[i] & pool).first();
    if (u < 0) throw std::logic_error("embed_via_cut_chain: no free cut vertex despite the degree bound");
    used_u.set(u);
    used_s.set(partner[u]);
    internals[i] = {u, partner[u]};
  };
  for (int i = 0; i < ell; ++i) {
    if (VertexSet::count_and(nbrs[i], primary) >= ell)
      take(i, primary - used_u);
    else
      second_round.push_back(i);
  }
  VertexSet pool = secondary;
  secondary.for_each([&](int u) {
    if (used_s.test(partner[u])) pool.reset(u);
  });
  for (int i : second_round) take(i, pool - used_u);

  for (int i = 0; i < ell; ++i) {
    const auto [x, y] = pairs[i];
    if (!t.edge(internals[i][1], y))
      throw Error(ErrorCode::InvalidArgument, "pair target is not dominated by the chain's sources", {{"vertex", y}});
    out.push_back({x, y, internals[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Driver

nlohmann::json to_json(const FailureTrace& f) {
  return {{"stage", f.stage}, {"step", f.step}, {"reason", f.reason}, {"message", f.message}, {"values", f.values}};
}

namespace {

std::vector<VertexPair> required_pairs(const Tournament& t, const PatternDigraph& pattern,
                                       const std::vector<int>& branch) {
  std::vector<VertexPair> pairs;
  for (auto [a, b] : pattern.edges)
    if (!t.edge(branch[a], branch[b])) pairs.emplace_back(branch[a], branch[b]);
  return pairs;
}

Subdivision assemble(const Tournament& t, const PatternDigraph& pattern, const std::vector<int>& branch,
                     const std::map<VertexPair, std::vector<int>>& paths) {
  Subdivision sub{pattern, branch, {}};
  for (auto [a, b] : pattern.edges) {
    const int x = branch[a], y = branch[b];
    if (t.edge(x, y)) {
      sub.paths.push_back({x, y, {}});
      continue;
    }
    auto it = paths.find({x, y});
    if (it == paths.end()) throw std::logic_error("assemble: no path for a required pair");
    sub.paths.push_back({x, y, it->second});
  }
  return sub;
}

FailureTrace trace_from(const Error& e, int stage, std::string step) {
  return {stage, std::move(step), to_string(e.code()), e.what(), e.values()};
}

/// Patterns on two vertices: an edge, or a 2-cycle realised by a cyclic triangle.
FinderResult find_two_vertex(const Tournament& t, const PatternDigraph& pattern) {
  FinderResult res;
  const bool forward = std::count(pattern.edges.begin(), pattern.edges.end(), VertexPair{0, 1}) > 0;
  const bool backward = std::count(pattern.edges.begin(), pattern.edges.end(), VertexPair{1, 0}) > 0;
  const VertexSet all = t.all();
  for (int x = 0; x < t.size(); ++x)
    for (int y = t.out(x).first(); y >= 0; y = t.out(x).next(y + 1)) {
      if (forward && backward) {
        const int z = VertexSet::first_and(t.out(y), t.in(x), all);
        if (z < 0) continue;
        res.witness = assemble(t, pattern, {x, y}, {{{y, x}, {z}}});
        res.terminal_case = "cycle";
      } else {
        res.witness = assemble(t, pattern, forward ? std::vector<int>{x, y} : std::vector<int>{y, x}, {});
        res.terminal_case = "edge";
      }
      return res;
    }
  res.failure = FailureTrace{0, "small-pattern", "NotFound",
                             forward && backward ? "host has no directed cycle" : "host has no edge", {}};
  return res;
}

FinderResult run_driver(const Tournament& t, const PatternDigraph& pattern, const FinderParams& params) {
  const int k = pattern.k;
  if (k <= 2) return find_two_vertex(t, pattern);

  FinderResult res;
  VertexSet current = t.all();
  for (int stage = 1;; ++stage) {
    res.iterations = stage;
    if (stage > t.size()) throw std::logic_error("complete finder: more stages than vertices");
    auto peel = peel_low_outdegree(t, current, params.peel_threshold(), k);

    if (static_cast<int>(peel.removed.size()) == k) {
      std::vector<int> branch = peel.removed;
      std::sort(branch.begin(), branch.end());
      res.chain.terminal = current;
      try {
        auto chain_paths = embed_via_cut_chain(t, required_pairs(t, pattern, branch), res.chain);
        std::map<VertexPair, std::vector<int>> paths;
        for (auto& p : chain_paths) paths[{p.from, p.to}] = p.internals;
        res.witness = assemble(t, pattern, branch, paths);
        res.terminal_case = "peeled+chain";
      } catch (const Error& e) {
        res.failure = trace_from(e, stage, "embed-via-chain");
      }
      return res;
    }

    BalancedSet b;
    DichotomyOutcome outcome;
    try {
      b = find_balanced_set(t, peel.rest, params);
      outcome = greedy_partial_subdivision(t, peel.rest, b, required_pairs(t, pattern, b.members), params);
    } catch (const Error& e) {
      res.failure = trace_from(e, stage, b.members.empty() ? "balanced-set" : "derive-cut");
      return res;
    }
    res.swaps += outcome.swaps;

    if (outcome.arm == DichotomyOutcome::Arm::Partial) {
      auto paths = outcome.partial.paths;
      res.chain.terminal = current;
      if (outcome.partial.pending.empty()) {
        res.terminal_case = "greedy";
      } else {
        try {
          for (auto& p : embed_via_cut_chain(t, outcome.partial.pending, res.chain))
            paths[{p.from, p.to}] = p.internals;
        } catch (const Error& e) {
          res.failure = trace_from(e, stage, "embed-via-chain");
          return res;
        }
        res.terminal_case = "partial+chain";
      }
      res.witness = assemble(t, pattern, b.members, paths);
      return res;
    }

    VertexSet cut = outcome.cut.cut;
    for (int v : peel.removed) cut.set(v);
    try {
      res.chain.stages.push_back(minimize_cut(t, current, cut, outcome.cut.source, outcome.cut.sink, k));
    } catch (const Error& e) {
      res.failure = trace_from(e, stage, "minimize-cut");
      return res;
    }
    current = res.chain.stages.back().sink;
  }
}

}  // namespace

FinderResult find_complete_subdivision(const Tournament& t, int k, const FinderParams& params) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2", {{"k", k}});
  FinderParams p = params;
  p.k = k;
  if (p.paper_scale()) {
    const int min_out = degree_profile(t).min_out;
    const double needed = k == 2 ? 1.0 : p.degree_requirement();
    if (min_out < needed)
      throw Error(ErrorCode::InfeasibleDegree, "minimum out-degree below the construction's requirement",
                  {{"min_out", min_out}, {"needed", static_cast<long long>(std::ceil(needed))}});
  }
  return run_driver(t, pattern_complete_digraph(k), p);
}

FinderResult find_digraph_subdivision(const Tournament& t, const PatternDigraph& pattern, const FinderParams& params) {
  pattern.validate();
  if (pattern.has_isolated_vertices())
    throw Error(ErrorCode::InvalidArgument, "pattern has an isolated vertex");
  if (pattern.k < 2) throw Error(ErrorCode::InvalidArgument, "pattern needs at least two vertices");
  if (pattern.k > t.size())
    throw Error(ErrorCode::TooSmall, "host smaller than the pattern", {{"host", t.size()}, {"pattern", pattern.k}});
  FinderParams p = params;
  p.k = pattern.k;
  if (p.paper_scale()) {
    const int min_out = degree_profile(t).min_out;
    const double needed = p.digraph_constant * static_cast<double>(pattern.edges.size());
    if (min_out < needed)
      throw Error(ErrorCode::InfeasibleDegree, "minimum out-degree below C * |E(D)|",
                  {{"min_out", min_out}, {"needed", static_cast<long long>(std::ceil(needed))}});
  }
  return run_driver(t, pattern, p);
}

}  // namespace tsub
