#include "doctest.h"
#include "support.hpp"
#include "tsub/subdivision.hpp"

using namespace tsub;
using tsub::testing::cyclic_triangle;

namespace {

/// K2 in the cyclic triangle: 0 -> 1 directly, 1 -> 2 -> 0 back.
Subdivision triangle_k2() {
  return {pattern_complete_digraph(2), {0, 1}, {{0, 1, {}}, {1, 0, {2}}}};
}

/// T3 in transitive(6) with branch 0, 2, 5 and one internal per edge.
Subdivision transitive_one_subdivision() {
  return {pattern_transitive(3), {0, 2, 5}, {{0, 2, {1}}, {0, 5, {3}}, {2, 5, {4}}}};
}

}  // namespace

TEST_CASE("pattern constructors") {
  const auto k2 = pattern_complete_digraph(2);
  CHECK(k2.k == 2);
  CHECK(k2.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(pattern_transitive(3).edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(pattern_complete_digraph(3).edges.size() == 6);
  CHECK(k2.is_complete());
  CHECK_FALSE(pattern_transitive(3).is_complete());
}

TEST_CASE("pattern parsing and validation") {
  CHECK(parse_pattern("complete:4") == pattern_complete_digraph(4));
  CHECK(parse_pattern("transitive:3") == pattern_transitive(3));
  const auto cycle = parse_pattern("edges:0>1,1>2,2>0");
  CHECK(cycle.k == 3);
  CHECK(cycle.edges.size() == 3);
  CHECK_FALSE(cycle.has_isolated_vertices());

  CHECK_THROWS_AS(parse_pattern("complete"), Error);
  CHECK_THROWS_AS(parse_pattern("complete:x"), Error);
  CHECK_THROWS_AS(parse_pattern("edges:0-1"), Error);
  CHECK_THROWS_AS(parse_pattern("wheel:3"), Error);

  PatternDigraph loop{2, {{0, 0}}};
  CHECK_THROWS_AS(loop.validate(), Error);
  PatternDigraph dup{2, {{0, 1}, {0, 1}}};
  CHECK_THROWS_AS(dup.validate(), Error);
  PatternDigraph range{2, {{0, 2}}};
  CHECK_THROWS_AS(range.validate(), Error);
  PatternDigraph isolated{3, {{0, 1}}};
  CHECK(isolated.has_isolated_vertices());
}

TEST_CASE("verify accepts the cyclic triangle K2 and reports its counts") {
  const auto report = verify(cyclic_triangle(), triangle_k2(), 3);
  CHECK(report.valid);
  CHECK(report.l1 == 1);
  CHECK(report.l2 == 0);
  CHECK(report.span == 3);
}

TEST_CASE("an exact length cap rejects the direct edge") {
  const auto report = verify(cyclic_triangle(), triangle_k2(), 3, 2);
  CHECK_FALSE(report.valid);
  CHECK(report.has(ViolationKind::ExactLength));
  CHECK(report.violations.size() == 1);
}

TEST_CASE("one-subdivision of T3 in transitive(6)") {
  const auto report = verify(transitive_tournament(6), transitive_one_subdivision(), 2, 2);
  CHECK(report.valid);
  CHECK(report.span == 6);
}

TEST_CASE("each violation kind is detected") {
  const auto host = cyclic_triangle();
  SUBCASE("length cap") {
    CHECK(verify(host, triangle_k2(), 1).has(ViolationKind::LengthCap));
  }
  SUBCASE("missing hop") {
    auto s = triangle_k2();
    s.paths[1].internals = {};
    CHECK(verify(host, s, 3).has(ViolationKind::MissingEdgeHop));
  }
  SUBCASE("missing and unexpected paths") {
    auto s = triangle_k2();
    s.paths.pop_back();
    CHECK(verify(host, s, 3).has(ViolationKind::MissingPath));
    s.paths.push_back({2, 0, {}});
    CHECK(verify(host, s, 3).has(ViolationKind::UnexpectedPath));
  }
  SUBCASE("duplicate path") {
    auto s = triangle_k2();
    s.paths.push_back(s.paths[0]);
    CHECK(verify(host, s, 3).has(ViolationKind::DuplicatePath));
  }
  SUBCASE("branch collisions and range") {
    auto s = triangle_k2();
    s.branch = {0, 0};
    CHECK(verify(host, s, 3).has(ViolationKind::BranchCollision));
    s.branch = {0, 7};
    CHECK(verify(host, s, 3).has(ViolationKind::BranchOutOfRange));
  }
  SUBCASE("vertex out of range") {
    auto s = triangle_k2();
    s.paths[1].internals = {9};
    CHECK(verify(host, s, 3).has(ViolationKind::VertexOutOfRange));
  }
  SUBCASE("internal vertex shared or equal to a branch vertex") {
    auto s = transitive_one_subdivision();
    s.paths[1].internals = {1};
    CHECK(verify(transitive_tournament(6), s, 3).has(ViolationKind::ReusedInternal));
    s = transitive_one_subdivision();
    s.paths[1].internals = {2};
    CHECK(verify(transitive_tournament(6), s, 3).has(ViolationKind::ReusedInternal));
  }
  SUBCASE("invalid pattern") {
    auto s = triangle_k2();
    s.pattern.edges.push_back({0, 0});
    CHECK(verify(host, s, 3).has(ViolationKind::PatternInvalid));
  }
}

TEST_CASE("minimum span") {
  CHECK(min_span(pattern_complete_digraph(3), true) == 6);
  CHECK(min_span(pattern_complete_digraph(2), true) == 3);
  CHECK(min_span(pattern_complete_digraph(4), true) == 10);
  CHECK(min_span(pattern_transitive(4), true) == 4);
  CHECK(min_span(pattern_complete_digraph(4), false) == 4);
}

TEST_CASE("witness JSON round-trips") {
  const auto s = transitive_one_subdivision();
  std::string hash;
  const auto back = witness_from_json(witness_to_json(s, "abc"), &hash);
  CHECK(hash == "abc");
  CHECK(back.pattern == s.pattern);
  CHECK(back.branch == s.branch);
  CHECK(back.paths == s.paths);
  CHECK(pattern_from_json(to_json(s.pattern)) == s.pattern);

  const auto j = to_json(verify(transitive_tournament(6), s, 1));
  CHECK(j.at("valid") == false);
  CHECK(j.at("violations").size() == 3);
}
