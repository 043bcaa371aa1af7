#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tsub/transitive_finder.hpp"

using namespace tsub;
using tsub::testing::cyclic_triangle;

namespace {

/// Transitive order with every aligned triple closed into a cyclic triangle.
Tournament triangle_chain(int n) {
  Tournament t(n);
  for (int i = 0; i + 2 < n; i += 3) t.orient(i + 2, i);
  return t;
}

UndirectedGraph path_graph(int n) {
  UndirectedGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

void check_decomposition(const UndirectedGraph& g, const VertexSet& vertices, const BallDecomposition& d) {
  const int n = vertices.count();
  const double bound = n / (5 * std::log(static_cast<double>(n)));
  CHECK(d.bound == doctest::Approx(bound));
  CHECK(d.removed.count() <= bound);
  VertexSet covered(g.n);
  for (const auto& c : d.components) {
    CHECK(c.count() <= bound);
    CHECK_FALSE(c.intersects(d.removed));
    CHECK_FALSE(c.intersects(covered));
    covered |= c;
  }
  CHECK((covered | d.removed) == vertices);
  CHECK(connected_components(g, vertices - d.removed).size() == d.components.size());
}

}  // namespace

TEST_CASE("ratio set of a regular host is everything") {
  const auto r = find_nearly_regular(rotational_tournament(21));
  CHECK(r.ratio_set_size == 21);
  CHECK(r.members.size() == 21);
  CHECK(r.side == RegularSide::OutHeavy);
}

TEST_CASE("ratio set of transitive(20) is the middle twelve") {
  const auto t = transitive_tournament(20);
  const auto r = find_nearly_regular(t);
  CHECK(r.ratio_set_size == 12);
  CHECK(r.ratio_set_size * 5 >= 20);
  CHECK(r.members == std::vector<int>{4, 5, 6, 7, 8, 9});
  CHECK(r.side == RegularSide::OutHeavy);
  CHECK(satisfies_side(t, t.all(), 12, RegularSide::InHeavy));
  CHECK_FALSE(satisfies_side(t, t.all(), 12, RegularSide::OutHeavy));
  CHECK_FALSE(satisfies_side(t, t.all(), 0, RegularSide::OutHeavy));
}

TEST_CASE("nearly-regular sets of random hosts") {
  const auto t = random_tournament(100, 3);
  const auto r = find_nearly_regular(t);
  CHECK(r.members.size() >= 10);
  for (int v : r.members) CHECK(satisfies_side(t, t.all(), v, r.side));
  CHECK(to_string(RegularSide::InHeavy) == "in-heavy");
}

TEST_CASE("nearly-regular k-sets") {
  SUBCASE("regular host") {
    const auto r = find_nearly_regular_k(rotational_tournament(31), 3);
    CHECK(r.members == std::vector<int>{0, 1, 2});
    CHECK(r.m == doctest::Approx(15.0));
  }
  SUBCASE("fewer than 10k vertices") {
    try {
      find_nearly_regular_k(random_tournament(29, 1), 3);
      FAIL("expected TooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooSmall);
    }
  }
  SUBCASE("random host") {
    const auto t = random_tournament(500, 4);
    const auto r = find_nearly_regular_k(t, 5);
    REQUIRE(r.members.size() == 5);
    for (int v : r.members) {
      CHECK(std::abs(t.in_degree(v) - r.m) <= 50);
      CHECK(satisfies_side(t, t.all(), v, r.side));
    }
  }
}

TEST_CASE("length-3 transitive finder on trivial hosts") {
  SUBCASE("transitive host of exactly k vertices") {
    const auto t = transitive_tournament(5);
    const auto r = find_tt_len3(t, 5, {0.05});
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->branch == std::vector<int>{0, 1, 2, 3, 4});
    for (const auto& p : r.witness->paths) CHECK(p.internals.empty());
    CHECK(verify(t, *r.witness, 1).valid);
  }
  SUBCASE("cyclic triangle, k = 2") {
    const auto t = cyclic_triangle();
    const auto r = find_tt_len3(t, 2, {0.05});
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->paths.size() == 1);
    CHECK(r.witness->paths[0].internals.empty());
    CHECK(verify(t, *r.witness, 1).valid);
  }
}

TEST_CASE("length-3 transitive finder on a random host") {
  const auto t = random_tournament(2000, 11);
  const auto r = find_tt_len3(t, 6, {1.0 / 20});
  CHECK((r.witness.has_value() || r.failure.has_value()));
  if (r.witness) CHECK(verify(t, *r.witness, 3).valid);
}

TEST_CASE("length-3 transitive finder splits on stuck pairs") {
  for (int k = 3; k <= 7; ++k) {
    const auto t = triangle_chain(300);
    const auto r = find_tt_len3(t, k, {0.05});
    REQUIRE(r.witness.has_value());
    CHECK(r.splits >= 1);
    CHECK(r.depth >= 1);
    CHECK(verify(t, *r.witness, 3).valid);
  }
}

TEST_CASE("length-3 transitive finder is sound on random and layered hosts") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int k = 2 + static_cast<int>(seed % 5);
    const auto t = seed % 2 ? random_tournament(250, seed) : layered_tournament(5, 50, seed);
    const auto r = find_tt_len3(t, k, {0.05});
    if (r.witness) CHECK(verify(t, *r.witness, 3).valid);
  }
}

TEST_CASE("transitive finders enforce their size preconditions") {
  try {
    find_tt_len3(random_tournament(100, 1), 2);
    FAIL("expected InfeasibleSize");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleSize);
    CHECK(e.values().at("needed") == 600);
  }
  CHECK_THROWS_AS(find_tt_len3(random_tournament(10, 1), 1, {0.1}), Error);
  CHECK_THROWS_AS(find_one_subdivision(random_tournament(100, 1), 3), Error);
  CHECK_THROWS_AS(find_one_subdivision(random_tournament(100, 1), 1, {0.1}), Error);
}

TEST_CASE("auxiliary graph adjacency") {
  SUBCASE("transitive(3), k = 1") {
    const auto aux = build_aux_graph(transitive_tournament(3), 1);
    CHECK(aux.threshold == 2);
    CHECK(aux.graph.edge(0, 1));
    CHECK(aux.graph.edge(1, 2));
    CHECK_FALSE(aux.graph.edge(0, 2));
  }
  SUBCASE("large threshold makes it complete") {
    const auto aux = build_aux_graph(rotational_tournament(5), 5);
    for (int u = 0; u < 5; ++u)
      for (int v = 0; v < 5; ++v)
        if (u != v) CHECK(aux.graph.edge(u, v));
  }
  SUBCASE("matches a direct recomputation") {
    const auto t = random_tournament(200, 6);
    const auto aux = build_aux_graph(t, 3);
    for (int u = 0; u < 200; ++u)
      for (int v = 0; v < 200; ++v) {
        if (u == v) continue;
        int diff = 0;
        for (int w = 0; w < 200; ++w) diff += t.edge(u, w) != t.edge(v, w);
        CHECK(aux.graph.edge(u, v) == (diff < 18));
      }
  }
}

TEST_CASE("connected components") {
  UndirectedGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(4, 5);
  const auto comps = connected_components(g, VertexSet::full(6));
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == VertexSet(6, {0, 1, 2}));
  CHECK(comps[1] == VertexSet(6, {3}));
  CHECK(comps[2] == VertexSet(6, {4, 5}));
  CHECK(connected_components(g, VertexSet(6, {0, 2})).size() == 2);
}

TEST_CASE("ball decomposition of a matching needs no cuts") {
  UndirectedGraph g(100);
  for (int v = 0; v < 100; v += 2) g.add_edge(v, v + 1);
  const auto d = ball_decomposition(g);
  CHECK(d.removed.empty());
  CHECK(d.cuts == 0);
  CHECK(d.components.size() == 50);
  CHECK(d.bound == doctest::Approx(100 / (5 * std::log(100.0))));
  check_decomposition(g, VertexSet::full(100), d);
}

TEST_CASE("ball decomposition of a complete graph reports a large ball") {
  UndirectedGraph g(100);
  for (int u = 0; u < 100; ++u)
    for (int v = u + 1; v < 100; ++v) g.add_edge(u, v);
  try {
    ball_decomposition(g);
    FAIL("expected BallTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BallTooLarge);
    CHECK(e.values().at("r") == 1);
    CHECK(e.values().at("x") == 0);
    CHECK(e.values().at("size") == 100);
  }
}

TEST_CASE("ball decomposition of a long path") {
  const auto g = path_graph(2000);
  const auto d = ball_decomposition(g);
  CHECK(d.cuts > 0);
  check_decomposition(g, VertexSet::full(2000), d);
}

TEST_CASE("ball decomposition of a subset of vertices") {
  const auto g = path_graph(3000);
  VertexSet half(3000);
  for (int v = 0; v < 2400; ++v) half.set(v);
  const auto d = ball_decomposition(g, half);
  check_decomposition(g, half, d);
  CHECK_THROWS_AS(ball_decomposition(g, VertexSet(3000, {5})), Error);
}

TEST_CASE("component partition with one component per half") {
  const auto t = transitive_tournament(100);
  VertexSet c1(100), c2(100);
  for (int v = 0; v < 50; ++v) c1.set(v);
  for (int v = 50; v < 100; ++v) c2.set(v);
  const auto p = partition_components(t, t.all(), {c1, c2});
  CHECK(p.m == 95);
  CHECK(p.a1.count() == 47);
  CHECK(p.a2.count() == 48);
  CHECK(p.x_family == std::vector<int>{0});
  CHECK(p.y_family == std::vector<int>{1});
  CHECK_FALSE(p.greedy);
  CHECK(p.x_cap_a1.count() >= p.lower_bound);
  CHECK(p.y_cap_a2.count() >= p.lower_bound);
}

TEST_CASE("component partition falls back to the greedy selection") {
  // Pairs {i, 47 + i} straddle the halves evenly, so every one starts on the X side.
  const auto t = transitive_tournament(100);
  std::vector<VertexSet> comps;
  for (int i = 0; i < 47; ++i) comps.push_back(VertexSet(100, {i, 47 + i}));
  comps.push_back(VertexSet(100, {94}));
  const auto p = partition_components(t, t.all(), comps);
  CHECK(p.greedy);
  CHECK(p.x_cap_a1.count() >= p.lower_bound);
  CHECK(p.y_cap_a2.count() >= p.lower_bound);
  CHECK_FALSE(p.x_cap_a1.intersects(p.y_cap_a2));
  for (int i : p.x_family) CHECK(std::find(p.y_family.begin(), p.y_family.end(), i) == p.y_family.end());
}

TEST_CASE("component partition bounds hold or are reported under random small components") {
  std::mt19937_64 rng(8);
  int succeeded = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 200 + trial * 4;
    const auto t = random_tournament(n, trial);
    const int limit = static_cast<int>(n / (5 * std::log(static_cast<double>(n))));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VertexSet> comps;
    for (int i = 0; i < n;) {
      const int size = 1 + static_cast<int>(rng() % limit);
      VertexSet c(n);
      for (int j = i; j < std::min(n, i + size); ++j) c.set(perm[j]);
      comps.push_back(c);
      i += size;
    }
    try {
      const auto p = partition_components(t, t.all(), comps);
      ++succeeded;
      CHECK(p.x_cap_a1.count() >= p.lower_bound);
      CHECK(p.y_cap_a2.count() >= p.lower_bound);
      CHECK(p.x_family.size() + p.y_family.size() <= comps.size());
      CHECK(p.x_cap_a1.subset_of(p.a1));
      CHECK(p.y_cap_a2.subset_of(p.a2));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PartitionBound);
    }
  }
  CHECK(succeeded > 0);
}

TEST_CASE("one-subdivision base cases") {
  SUBCASE("transitive(6), k = 3") {
    const auto t = transitive_tournament(6);
    const auto r = find_one_subdivision(t, 3, {0.01});
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->branch == std::vector<int>{0, 2, 5});
    std::vector<int> internals;
    for (const auto& p : r.witness->paths) internals.insert(internals.end(), p.internals.begin(), p.internals.end());
    std::sort(internals.begin(), internals.end());
    CHECK(internals == std::vector<int>{1, 3, 4});
    CHECK(verify(t, *r.witness, 2, 2).valid);
  }
  SUBCASE("transitive(3), k = 2") {
    const auto t = transitive_tournament(3);
    const auto r = find_one_subdivision(t, 2, {0.01});
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->branch == std::vector<int>{0, 2});
    CHECK(r.witness->paths[0].internals == std::vector<int>{1});
  }
  SUBCASE("chain too short") {
    const auto r = find_one_subdivision(cyclic_triangle(), 2, {0.01});
    REQUIRE(r.failure.has_value());
    CHECK(r.failure->step == "base-case");
  }
}

TEST_CASE("one-subdivision recursion on random hosts") {
  for (std::uint64_t seed : {13, 14}) {
    const auto t = random_tournament(600, seed);
    const auto r = find_one_subdivision(t, 4, {0.01});
    REQUIRE(r.witness.has_value());
    CHECK(r.splits >= 1);
    CHECK(r.cross_pairs == 4);
    CHECK(verify(t, *r.witness, 2, 2).valid);
  }
}

TEST_CASE("one-subdivision failures name their step") {
  const auto t = layered_tournament(20, 30, 1);
  const auto r = find_one_subdivision(t, 4, {0.01});
  if (r.failure) {
    CHECK(r.failure->step == "aux-graph");
    CHECK(r.failure->reason == "BallTooLarge");
  } else {
    CHECK(verify(t, *r.witness, 2, 2).valid);
  }
}
