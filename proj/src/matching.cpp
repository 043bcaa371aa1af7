#include "tsub/matching.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace tsub {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), match_left_(g.left_size, -1), match_right_(g.right_size, -1), dist_(g.left_size) {}

  std::vector<int> run() {
    while (bfs())
      for (int u = 0; u < g_.left_size; ++u)
        if (match_left_[u] == -1) dfs(u);
    return match_left_;
  }

 private:
  bool bfs() {
    std::queue<int> q;
    for (int u = 0; u < g_.left_size; ++u) {
      if (match_left_[u] == -1) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool reachable_free = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g_.adj[u]) {
        const int w = match_right_[v];
        if (w == -1) {
          reachable_free = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int u) {
    for (int v : g_.adj[u]) {
      const int w = match_right_[v];
      if (w == -1 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace

std::vector<int> maximum_matching(const BipartiteGraph& g) { return HopcroftKarp(g).run(); }

HalfMatchingResult half_matching(const BipartiteGraph& g) {
  // Right copy v lives at 2v and 2v+1.
  BipartiteGraph dup(g.left_size, 2 * g.right_size);
  for (int u = 0; u < g.left_size; ++u)
    for (int v : g.adj[u]) {
      dup.add_edge(u, 2 * v);
      dup.add_edge(u, 2 * v + 1);
    }
  const auto match = maximum_matching(dup);

  HalfMatchingResult r;
  if (std::find(match.begin(), match.end(), -1) == match.end()) {
    r.ok = true;
    for (int u = 0; u < g.left_size; ++u) r.matching.edges.emplace_back(u, match[u] / 2);
    return r;
  }

  // Alternating reachability from every unsaturated left vertex.
  std::vector<int> match_right(dup.right_size, -1);
  for (int u = 0; u < g.left_size; ++u)
    if (match[u] != -1) match_right[match[u]] = u;
  std::vector<bool> seen_left(g.left_size, false), seen_right(dup.right_size, false);
  std::queue<int> q;
  for (int u = 0; u < g.left_size; ++u)
    if (match[u] == -1) {
      seen_left[u] = true;
      q.push(u);
    }
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : dup.adj[u]) {
      if (seen_right[v]) continue;
      seen_right[v] = true;
      const int w = match_right[v];  // matched, else the matching was not maximum
      if (w != -1 && !seen_left[w]) {
        seen_left[w] = true;
        q.push(w);
      }
    }
  }
  for (int u = 0; u < g.left_size; ++u)
    if (seen_left[u]) r.violator.push_back(u);
  return r;
}

HalfMatchingResult half_matching(const Tournament& t, const std::vector<int>& left, const std::vector<int>& right) {
  BipartiteGraph g(static_cast<int>(left.size()), static_cast<int>(right.size()));
  for (int i = 0; i < g.left_size; ++i)
    for (int j = 0; j < g.right_size; ++j)
      if (t.edge(left[i], right[j])) g.add_edge(i, j);
  auto r = half_matching(g);
  for (auto& [u, v] : r.matching.edges) {
    u = left[u];
    v = right[v];
  }
  for (auto& u : r.violator) u = left[u];
  return r;
}

std::pair<HalfMatching, HalfMatching> split_half_matching(const HalfMatching& hm) {
  std::pair<HalfMatching, HalfMatching> out;
  std::map<int, int> uses;
  for (auto [u, v] : hm.edges) (uses[v]++ == 0 ? out.first : out.second).edges.emplace_back(u, v);
  return out;
}

}  // namespace tsub
