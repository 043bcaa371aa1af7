#pragma once

#include <vector>

#include "tsub/tournament.hpp"

namespace tsub::testing {

/// v0 -> v1 -> v2 -> v0.
inline Tournament cyclic_triangle() {
  Tournament t(3);
  t.orient(2, 0);
  return t;
}

/// Reachability closure of T[ground] by repeated squaring of bitset rows.
inline std::vector<VertexSet> reachability(const Tournament& t, const VertexSet& ground) {
  std::vector<VertexSet> reach(t.size(), VertexSet(t.size()));
  ground.for_each([&](int v) {
    reach[v] = t.out(v) & ground;
    reach[v].set(v);
  });
  for (bool changed = true; changed;) {
    changed = false;
    ground.for_each([&](int v) {
      VertexSet next = reach[v];
      reach[v].for_each([&](int w) { next |= reach[w]; });
      if (!(next == reach[v])) {
        reach[v] = next;
        changed = true;
      }
    });
  }
  return reach;
}

inline bool strongly_connected(const Tournament& t, const VertexSet& ground) {
  const auto reach = reachability(t, ground);
  bool ok = true;
  ground.for_each([&](int v) { ok = ok && ground.subset_of(reach[v]); });
  return ok;
}

}  // namespace tsub::testing
