#include "tsub/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "tsub/parallel.hpp"

namespace tsub {

std::string to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::Found: return "found";
    case OracleStatus::NotFound: return "not-found";
    case OracleStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

namespace {

struct OutOfBudget {};

class Search {
 public:
  Search(const Tournament& t, const OracleQuery& q)
      : t_(t),
        q_(q),
        n_(t.size()),
        k_(q.pattern.k),
        lo_(q.exact_len ? *q.exact_len : 1),
        hi_(q.exact_len ? *q.exact_len : q.max_len),
        branch_(k_, -1),
        used_(n_),
        chosen_(q.pattern.edges.size()) {}

  bool run() { return assign(0, 0); }
  long long nodes() const { return nodes_; }

  Subdivision witness() const {
    Subdivision sub{q_.pattern, branch_, {}};
    for (std::size_t e = 0; e < q_.pattern.edges.size(); ++e) {
      auto [a, b] = q_.pattern.edges[e];
      sub.paths.push_back({branch_[a], branch_[b], chosen_[e]});
    }
    return sub;
  }

 private:
  void tick() {
    if (++nodes_ > q_.node_budget) throw OutOfBudget{};
  }

  bool assign(int i, int from) {
    if (i == k_) return route();
    const bool symmetric = q_.pattern.is_complete();
    for (int v = symmetric ? from : 0; v < n_; ++v) {
      if (used_.test(v)) continue;
      tick();
      branch_[i] = v;
      used_.set(v);
      const bool ok = assign(i + 1, v + 1);
      used_.reset(v);
      if (ok) return true;
    }
    branch_[i] = -1;
    return false;
  }

  /// Internals every still-unrouted edge needs at minimum.
  int demand(const std::vector<int>& edges) const { return static_cast<int>(edges.size()) * std::max(lo_ - 1, 1); }

  bool route() {
    std::vector<int> open;
    for (std::size_t e = 0; e < q_.pattern.edges.size(); ++e) {
      auto [a, b] = q_.pattern.edges[e];
      if (lo_ <= 1 && t_.edge(branch_[a], branch_[b]))
        chosen_[e].clear();
      else
        open.push_back(static_cast<int>(e));
    }
    return solve(open, t_.all() - used_);
  }

  bool solve(std::vector<int>& open, VertexSet free) {
    if (open.empty()) return true;
    tick();
    if (demand(open) > free.count()) return false;

    std::size_t best = 0;
    std::vector<std::vector<int>> best_paths;
    for (std::size_t i = 0; i < open.size(); ++i) {
      auto [a, b] = q_.pattern.edges[open[i]];
      const std::size_t cap = i == 0 ? SIZE_MAX : best_paths.size();
      auto paths = enumerate(branch_[a], branch_[b], free, cap);
      if (i == 0 || paths.size() < best_paths.size()) {
        best = i;
        best_paths = std::move(paths);
        if (best_paths.empty()) return false;
      }
    }

    const int e = open[best];
    open.erase(open.begin() + static_cast<long>(best));
    for (const auto& path : best_paths) {
      VertexSet rest = free;
      for (int v : path) rest.reset(v);
      chosen_[e] = path;
      if (solve(open, rest)) return true;
    }
    open.insert(open.begin() + static_cast<long>(best), e);
    return false;
  }

  /// Internal-vertex lists of x-y paths with 1..hi-1 internals drawn from
  /// `free`, honouring the lower length bound; stops after `cap` + 1 paths.
  std::vector<std::vector<int>> enumerate(int x, int y, const VertexSet& free, std::size_t cap) const {
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    VertexSet on_path(n_);
    auto dfs = [&](auto&& self, int last) -> void {
      if (out.size() > cap) return;
      const int d = static_cast<int>(stack.size());
      if (d >= 1 && d + 1 >= lo_ && t_.edge(last, y)) out.push_back(stack);
      if (d + 1 >= hi_) return;
      const VertexSet next = (t_.out(last) & free) - on_path;
      for (int z = next.first(); z >= 0; z = next.next(z + 1)) {
        stack.push_back(z);
        on_path.set(z);
        self(self, z);
        on_path.reset(z);
        stack.pop_back();
      }
    };
    dfs(dfs, x);
    return out;
  }

  const Tournament& t_;
  const OracleQuery& q_;
  const int n_, k_, lo_, hi_;
  std::vector<int> branch_;
  VertexSet used_;
  std::vector<std::vector<int>> chosen_;
  long long nodes_ = 0;
};

}  // namespace

OracleResult oracle_subdivision(const Tournament& t, const OracleQuery& q) {
  q.pattern.validate();
  if (q.max_len < 1) throw Error(ErrorCode::InvalidArgument, "max_len must be at least 1", {{"max_len", q.max_len}});
  if (q.exact_len && *q.exact_len < 1)
    throw Error(ErrorCode::InvalidArgument, "exact_len must be at least 1", {{"exact_len", *q.exact_len}});
  if (q.node_budget <= 0) throw Error(ErrorCode::InvalidArgument, "node budget must be positive");

  OracleResult r;
  if (q.pattern.k > t.size()) return r;
  Search s(t, q);
  try {
    if (s.run()) {
      r.status = OracleStatus::Found;
      r.witness = s.witness();
    }
  } catch (const OutOfBudget&) {
    r.status = OracleStatus::BudgetExceeded;
  }
  r.nodes = s.nodes();
  return r;
}

// ---------------------------------------------------------------------------

Tournament tournament_from_mask(int n, std::uint64_t mask) {
  Tournament t(n);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (!((mask >> bit) & 1U)) t.orient(j, i);
  return t;
}

void for_each_tournament(int n, const std::function<void(std::uint64_t, const Tournament&)>& fn) {
  if (n < 1 || n > 5) throw Error(ErrorCode::InvalidArgument, "exhaustive enumeration needs 1 <= n <= 5", {{"n", n}});
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) fn(mask, tournament_from_mask(n, mask));
}

std::vector<Tournament> exhaustive_tournaments(int n) {
  std::vector<Tournament> out;
  for_each_tournament(n, [&](std::uint64_t, const Tournament& t) { out.push_back(t); });
  return out;
}

DkScan scan_d_lower(int k, int n_lo, int n_hi, int trials, std::uint64_t seed, int workers, bool timing,
                    long long node_budget) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2", {{"k", k}});
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorCode::InvalidArgument, "bad n range", {{"lo", n_lo}, {"hi", n_hi}});
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive", {{"trials", trials}});

  struct Instance {
    int n;
    std::uint64_t seed;
    bool enumerated;
  };
  std::vector<Instance> instances;
  std::uint64_t index = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (n <= 5) {
      const std::uint64_t count = std::uint64_t{1} << (n * (n - 1) / 2);
      for (std::uint64_t mask = 0; mask < count; ++mask) instances.push_back({n, mask, true});
    } else {
      for (int i = 0; i < trials; ++i) instances.push_back({n, mix_seed(seed, index++), false});
    }
  }

  const OracleQuery q{pattern_complete_digraph(k), 3, std::nullopt, node_budget};
  DkScan scan;
  scan.k = k;
  scan.rows.resize(instances.size());
  parallel_for(instances.size(), workers, [&](std::size_t i) {
    const auto& inst = instances[i];
    const Tournament t =
        inst.enumerated ? tournament_from_mask(inst.n, inst.seed) : random_tournament(inst.n, inst.seed);
    const auto start = std::chrono::steady_clock::now();
    const auto res = oracle_subdivision(t, q);
    DkRow& row = scan.rows[i];
    row.n = inst.n;
    row.seed = inst.seed;
    row.delta_plus = degree_profile(t).min_out;
    row.status = res.status;
    row.contains = res.status == OracleStatus::Found;
    row.nodes = res.nodes;
    if (timing)
      row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
  });
  for (const auto& row : scan.rows)
    if (row.status == OracleStatus::NotFound) scan.max_delta_without = std::max(scan.max_delta_without, row.delta_plus);
  return scan;
}

}  // namespace tsub
