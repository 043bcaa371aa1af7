#include "tsub/transitive_finder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tsub {

std::string to_string(RegularSide side) { return side == RegularSide::OutHeavy ? "out-heavy" : "in-heavy"; }

bool satisfies_side(const Tournament& t, const VertexSet& ground, int v, RegularSide side, int ratio_bound) {
  const long long out = t.out_degree_in(v, ground), in = t.in_degree_in(v, ground);
  if (side == RegularSide::OutHeavy) return in <= out && out <= ratio_bound * in && in > 0;
  return out <= in && in <= ratio_bound * out && out > 0;
}

NearlyRegularSet find_nearly_regular(const Tournament& t, const VertexSet& ground) {
  const int n = ground.count();
  std::vector<int> out_side, in_side;
  int ratio_set = 0;
  ground.for_each([&](int v) {
    const bool o = satisfies_side(t, ground, v, RegularSide::OutHeavy);
    const bool i = satisfies_side(t, ground, v, RegularSide::InHeavy);
    if (o) out_side.push_back(v);
    if (i) in_side.push_back(v);
    if (o || i) ++ratio_set;
  });
  if (n >= 10 && 5 * ratio_set < n)
    throw std::logic_error("nearly-regular: ratio set smaller than a fifth of the tournament");

  NearlyRegularSet r;
  r.ratio_set_size = ratio_set;
  if (in_side.size() > out_side.size()) {
    r.members = std::move(in_side);
    r.side = RegularSide::InHeavy;
  } else {
    r.members = std::move(out_side);
  }
  return r;
}

NearlyRegularSet find_nearly_regular(const Tournament& t) { return find_nearly_regular(t, t.all()); }

NearlyRegularSet find_nearly_regular_k(const Tournament& t, const VertexSet& ground, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive", {{"k", k}});
  const int n = ground.count();
  if (n < 10 * k) throw Error(ErrorCode::TooSmall, "need at least 10k vertices", {{"size", n}, {"needed", 10LL * k}});
  NearlyRegularSet r = find_nearly_regular(t, ground);

  std::vector<std::pair<int, int>> by_in;  // (in-degree, vertex)
  for (int v : r.members) by_in.emplace_back(t.in_degree_in(v, ground), v);
  std::sort(by_in.begin(), by_in.end());
  for (std::size_t i = 0; i + k <= by_in.size(); ++i) {
    const int lo = by_in[i].first, hi = by_in[i + k - 1].first;
    if (hi - lo > 20 * k) continue;
    r.m = (lo + hi) / 2.0;
    r.members.clear();
    for (std::size_t j = i; j < i + k; ++j) r.members.push_back(by_in[j].second);
    std::sort(r.members.begin(), r.members.end());
    return r;
  }
  throw Error(ErrorCode::TooSmall, "no in-degree window of spread 20k holds k nearly-regular vertices",
              {{"size", n}, {"candidates", static_cast<long long>(by_in.size())}, {"k", k}});
}

NearlyRegularSet find_nearly_regular_k(const Tournament& t, int k) { return find_nearly_regular_k(t, t.all(), k); }

// ---------------------------------------------------------------------------

namespace {

/// A transitive subdivision under construction, in host coordinates.
/// branch is in pattern order; paths holds every pair (branch[i], branch[j]), i < j.
struct Block {
  std::vector<int> branch;
  std::map<VertexPair, std::vector<int>> paths;

  VertexSet vertices(int capacity) const {
    VertexSet s = VertexSet::from(capacity, branch);
    for (const auto& [pair, internals] : paths)
      for (int v : internals) s.set(v);
    return s;
  }
};

struct StepFailure {
  FailureTrace trace;
};

[[noreturn]] void fail(int depth, const std::string& step, const Error& e) {
  throw StepFailure{{depth, step, to_string(e.code()), e.what(), e.values()}};
}

Subdivision to_subdivision(const Block& b) {
  const int k = static_cast<int>(b.branch.size());
  Subdivision sub{pattern_transitive(k), b.branch, {}};
  for (auto [i, j] : sub.pattern.edges) {
    const int x = b.branch[i], y = b.branch[j];
    sub.paths.push_back({x, y, b.paths.at({x, y})});
  }
  return sub;
}

/// Concatenates two blocks; `join` supplies the internals of each cross pair.
template <typename Join>
Block concat(Block first, const Block& second, Join&& join) {
  for (const auto& p : second.paths) first.paths.insert(p);
  for (int x : first.branch)
    for (int y : second.branch) first.paths[{x, y}] = join(x, y);
  first.branch.insert(first.branch.end(), second.branch.begin(), second.branch.end());
  return first;
}

/// Vertices of `ground` sorted by non-increasing out-degree inside `ground`, ties by index.
std::vector<int> by_out_degree(const Tournament& t, const VertexSet& ground) {
  std::vector<std::pair<int, int>> keyed;
  ground.for_each([&](int v) { keyed.emplace_back(-t.out_degree_in(v, ground), v); });
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  for (auto [d, v] : keyed) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Length-3 recursion

class TtLen3 {
 public:
  TtLen3(const Tournament& t, TransitiveResult& res) : t_(t), res_(res) {}

  Block run(const VertexSet& ground, int k, int depth) {
    res_.depth = std::max(res_.depth, depth);
    if (k <= 0) return {};
    const int n = ground.count();
    if (n < k) fail(depth, "recursion-size", Error(ErrorCode::TooSmall, "subtournament smaller than its target",
                                                   {{"size", n}, {"k", k}}));
    if (k == 1) return {{ground.first()}, {}};
    if (k == 2) {
      const int x = by_out_degree(t_, ground).front();
      const int y = (t_.out(x) & ground).first();
      return {{x, y}, {{{x, y}, {}}}};
    }

    std::vector<int> branch;
    if (n >= 10 * k) {
      try {
        branch = find_nearly_regular_k(t_, ground, k).members;
      } catch (const Error& e) {
        fail(depth, "nearly-regular", e);
      }
    } else {
      branch = by_out_degree(t_, ground);
      branch.resize(k);
    }
    const VertexSet inner = VertexSet::from(t_.size(), branch);
    std::sort(branch.begin(), branch.end(), [&](int a, int b) {
      const int da = t_.out_degree_in(a, inner), db = t_.out_degree_in(b, inner);
      if (da != db) return da > db;
      const int ga = t_.out_degree_in(a, ground), gb = t_.out_degree_in(b, ground);
      if (ga != gb) return ga > gb;
      return a < b;
    });

    Block block{branch, {}};
    VertexSet used = inner;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const int x = branch[i], y = branch[j];
        if (t_.edge(x, y)) {
          block.paths[{x, y}] = {};
          continue;
        }
        const VertexSet avail = ground - used;
        if (auto path = embed_short_path(t_, avail, x, y)) {
          block.paths[{x, y}] = *path;
          for (int v : *path) used.set(v);
          continue;
        }
        const VertexSet a = t_.out(x) & t_.out(y) & avail;
        const VertexSet b = t_.in(x) & t_.in(y) & avail;
        // The stuck state is maximal only if A sends no edge to B.
        if (auto probe = probe_a_to_b(a, b)) {
          block.paths[{x, y}] = {probe->first, probe->second};
          used.set(probe->first);
          used.set(probe->second);
          continue;
        }
        return split(a, b, k, depth);
      }
    return block;
  }

 private:
  std::optional<VertexPair> probe_a_to_b(const VertexSet& a, const VertexSet& b) const {
    for (int u = a.first(); u >= 0; u = a.next(u + 1))
      if (int w = (t_.out(u) & b).first(); w >= 0) return VertexPair{u, w};
    return std::nullopt;
  }

  Block split(const VertexSet& a, const VertexSet& b, int k, int depth) {
    ++res_.splits;
    const int big = (3 * k + 4) / 5, small = k - big;
    const bool a_larger = a.count() > b.count();
    Block from_b = run(b, a_larger ? small : big, depth + 1);
    Block from_a = run(a, a_larger ? big : small, depth + 1);
    return concat(std::move(from_b), from_a, [&](int x, int y) {
      if (!t_.edge(x, y)) throw std::logic_error("tt3: common in-neighbourhood does not dominate the out-neighbourhood");
      return std::vector<int>{};
    });
  }

  const Tournament& t_;
  TransitiveResult& res_;
};

// ---------------------------------------------------------------------------
// 1-subdivision recursion

class OneSub {
 public:
  OneSub(const Tournament& t, TransitiveResult& res) : t_(t), res_(res) {}

  Block run(const VertexSet& ground, int k, int depth) {
    res_.depth = std::max(res_.depth, depth);
    if (k <= 3) return base(ground, k, depth);

    const long long tau = 2LL * k * k;
    BallDecomposition dec;
    ComponentPartition part;
    try {
      const AuxGraph aux = build_aux_graph(t_, ground, tau);
      dec = ball_decomposition(aux.graph, ground);
    } catch (const Error& e) {
      fail(depth, "aux-graph", e);
    }
    try {
      part = partition_components(t_, ground, dec.components);
    } catch (const Error& e) {
      fail(depth, "partition", e);
    }
    ++res_.splits;
    Block first = run(part.x_cap_a1, (k + 1) / 2, depth + 1);
    Block second = run(part.y_cap_a2, k / 2, depth + 1);

    VertexSet used = first.vertices(t_.size()) | second.vertices(t_.size());
    return concat(std::move(first), second, [&](int x, int y) {
      const VertexSet common = t_.out(x) & t_.in(y) & ground;
      if (2LL * common.count() < tau - 2)
        throw std::logic_error("one-subdivision: cross pair has fewer 2-paths than the component bound allows");
      const int z = (common - used).first();
      if (z < 0)
        throw StepFailure{{depth, "cross-pair", "CrossPairExhausted", "every 2-path of a cross pair is already used",
                           {{"from", x}, {"to", y}, {"common", common.count()}}}};
      used.set(z);
      ++res_.cross_pairs;
      return std::vector<int>{z};
    });
  }

 private:
  Block base(const VertexSet& ground, int k, int depth) {
    if (k <= 0) return {};
    const std::vector<int> chain = greedy_transitive_chain(t_, ground);
    const std::size_t need = k == 1 ? 1 : k == 2 ? 3 : 6;
    if (chain.size() < need)
      fail(depth, "base-case", Error(ErrorCode::TooSmall, "transitive chain too short for the base case",
                                     {{"chain", static_cast<long long>(chain.size())},
                                      {"needed", static_cast<long long>(need)}}));
    const auto& c = chain;
    if (k == 1) return {{c[0]}, {}};
    if (k == 2) return {{c[0], c[2]}, {{{c[0], c[2]}, {c[1]}}}};
    return {{c[0], c[2], c[5]}, {{{c[0], c[2]}, {c[1]}}, {{c[0], c[5]}, {c[3]}}, {{c[2], c[5]}, {c[4]}}}};
  }

  const Tournament& t_;
  TransitiveResult& res_;
};

template <typename Finder>
TransitiveResult run_finder(const Tournament& t, int k) {
  TransitiveResult res;
  try {
    Finder finder(t, res);
    res.witness = to_subdivision(finder.run(t.all(), k, 0));
  } catch (const StepFailure& f) {
    res.failure = f.trace;
  }
  return res;
}

}  // namespace

TransitiveResult find_tt_len3(const Tournament& t, int k, const TransitiveParams& params) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2", {{"k", k}});
  const double needed = params.tt_constant * k * k;
  if (params.paper_scale() && t.size() < needed)
    throw Error(ErrorCode::InfeasibleSize, "tournament smaller than C k^2",
                {{"size", t.size()}, {"needed", static_cast<long long>(std::ceil(needed))}});
  return run_finder<TtLen3>(t, k);
}

TransitiveResult find_one_subdivision(const Tournament& t, int k, const TransitiveParams& params) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2", {{"k", k}});
  const double lk = std::log(static_cast<double>(k));
  const double needed = params.onesub_constant * k * k * lk * lk * lk;
  if (params.paper_scale() && t.size() < needed)
    throw Error(ErrorCode::InfeasibleSize, "tournament smaller than C k^2 ln^3 k",
                {{"size", t.size()}, {"needed", static_cast<long long>(std::ceil(needed))}});
  return run_finder<OneSub>(t, k);
}

// ---------------------------------------------------------------------------
// Auxiliary graph and ball decomposition

AuxGraph build_aux_graph(const Tournament& t, int k) { return build_aux_graph(t, t.all(), 2LL * k * k); }

AuxGraph build_aux_graph(const Tournament& t, const VertexSet& ground, long long threshold) {
  AuxGraph aux{UndirectedGraph(t.size()), ground, threshold};
  const auto members = ground.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (VertexSet::count_xor_and(t.out(members[i]), t.out(members[j]), ground) < threshold)
        aux.graph.add_edge(members[i], members[j]);
  return aux;
}

std::vector<VertexSet> connected_components(const UndirectedGraph& g, const VertexSet& alive) {
  std::vector<VertexSet> comps;
  VertexSet left = alive;
  while (left.any()) {
    VertexSet comp(g.n), frontier(g.n);
    frontier.set(left.first());
    while (frontier.any()) {
      comp |= frontier;
      VertexSet next(g.n);
      frontier.for_each([&](int v) { next |= g.adj[v]; });
      frontier = (next & left) - comp;
    }
    left -= comp;
    comps.push_back(std::move(comp));
  }
  return comps;
}

BallDecomposition ball_decomposition(const UndirectedGraph& g, const VertexSet& vertices) {
  const int n = vertices.count();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "ball decomposition needs at least two vertices", {{"n", n}});
  const double ln = std::log(static_cast<double>(n));
  const double bound = n / (5 * ln);
  const double radius = 10 * ln * ln;

  BallDecomposition d;
  d.bound = bound;
  d.removed = VertexSet(g.n);
  VertexSet alive = vertices;
  while (true) {
    auto comps = connected_components(g, alive);
    auto big = std::find_if(comps.begin(), comps.end(), [&](const VertexSet& c) { return c.count() > bound; });
    if (big == comps.end()) {
      d.components = std::move(comps);
      break;
    }
    const int x = big->first();
    VertexSet ball(g.n), layer(g.n);
    layer.set(x);
    ball.set(x);
    if (ball.count() > bound)
      throw Error(ErrorCode::BallTooLarge, "ball exceeds n/(5 ln n)", {{"x", x}, {"r", 0}, {"size", 1}});
    for (int r = 1;; ++r) {
      VertexSet next(g.n);
      layer.for_each([&](int v) { next |= g.adj[v]; });
      layer = (next & alive) - ball;
      if (layer.count() < ball.count() / (5 * ln)) {
        if (layer.empty()) throw std::logic_error("ball decomposition: a large component was exhausted");
        d.removed |= layer;
        alive -= layer;
        ++d.cuts;
        break;
      }
      ball |= layer;
      if (ball.count() > bound && r <= radius)
        throw Error(ErrorCode::BallTooLarge, "ball exceeds n/(5 ln n)",
                    {{"x", x}, {"r", r}, {"size", ball.count()}});
      if (r > radius) throw std::logic_error("ball decomposition: no sparse level within the radius");
    }
  }
  if (d.removed.count() > bound) throw std::logic_error("ball decomposition: separator exceeds n/(5 ln n)");
  return d;
}

BallDecomposition ball_decomposition(const UndirectedGraph& g) { return ball_decomposition(g, VertexSet::full(g.n)); }

// ---------------------------------------------------------------------------
// Component partition

ComponentPartition partition_components(const Tournament& t, const VertexSet& ground,
                                        const std::vector<VertexSet>& components) {
  const int n = ground.count();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "partition needs at least two vertices", {{"n", n}});
  const double ln = std::log(static_cast<double>(n));
  const int cap = t.size();

  VertexSet pool(cap);
  for (const auto& c : components) pool |= c & ground;
  ComponentPartition p;
  p.order = by_out_degree(t, pool);
  p.m = std::min<int>(static_cast<int>(p.order.size()), static_cast<int>(std::floor((1 - 1 / (5 * ln)) * n)));
  p.order.resize(p.m);
  p.a1 = VertexSet(cap);
  p.a2 = VertexSet(cap);
  for (int i = 0; i < p.m; ++i) (i < p.m / 2 ? p.a1 : p.a2).set(p.order[i]);

  const int t_count = static_cast<int>(components.size());
  std::vector<int> c1(t_count), c2(t_count);
  std::vector<int> first, second;
  for (int i = 0; i < t_count; ++i) {
    c1[i] = VertexSet::count_and(components[i], p.a1);
    c2[i] = VertexSet::count_and(components[i], p.a2);
    if (c1[i] + c2[i] == 0) continue;
    (c1[i] >= c2[i] ? first : second).push_back(i);
  }
  auto mass = [](const std::vector<int>& fam, const std::vector<int>& share) {
    long long s = 0;
    for (int i : fam) s += share[i];
    return s;
  };

  const long long x_mass = mass(first, c1), y_mass = mass(second, c2);
  if (4 * x_mass >= p.m && 4 * y_mass >= p.m) {
    p.x_family = first;
    p.y_family = second;
  } else {
    // Grow the deficient side by a maximal set of components from the other
    // family while its share of the deficient half stays at most m/4.
    p.greedy = true;
    const bool x_short = 4 * x_mass < p.m;
    auto& keep = x_short ? first : second;
    auto& donor = x_short ? second : first;
    const auto& share = x_short ? c1 : c2;
    long long level = x_short ? x_mass : y_mass;
    std::vector<int> stay;
    for (int j : donor) {
      if (4 * (level + share[j]) <= p.m) {
        level += share[j];
        keep.push_back(j);
      } else {
        stay.push_back(j);
      }
    }
    donor = stay;
    std::sort(keep.begin(), keep.end());
    p.x_family = first;
    p.y_family = second;
  }

  p.x_cap_a1 = VertexSet(cap);
  p.y_cap_a2 = VertexSet(cap);
  for (int i : p.x_family) p.x_cap_a1 |= components[i] & p.a1;
  for (int i : p.y_family) p.y_cap_a2 |= components[i] & p.a2;
  p.lower_bound = (1 - 1 / (2 * ln)) * p.m / 4;
  if (p.x_cap_a1.count() < p.lower_bound || p.y_cap_a2.count() < p.lower_bound)
    throw Error(ErrorCode::PartitionBound, "component partition misses the (1 - 1/(2 ln n)) m/4 bound",
                {{"x", p.x_cap_a1.count()}, {"y", p.y_cap_a2.count()}, {"m", p.m},
                 {"bound", static_cast<long long>(std::ceil(p.lower_bound))}});
  return p;
}

}  // namespace tsub
