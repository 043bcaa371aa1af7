#include "tsub/subdivision.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tsub {

bool PatternDigraph::is_complete() const {
  if (static_cast<long long>(edges.size()) != static_cast<long long>(k) * (k - 1)) return false;
  std::set<std::pair<int, int>> seen(edges.begin(), edges.end());
  return static_cast<long long>(seen.size()) == static_cast<long long>(k) * (k - 1);
}

bool PatternDigraph::has_isolated_vertices() const {
  std::vector<bool> touched(k, false);
  for (auto [a, b] : edges) {
    if (a >= 0 && a < k) touched[a] = true;
    if (b >= 0 && b < k) touched[b] = true;
  }
  return std::find(touched.begin(), touched.end(), false) != touched.end();
}

void PatternDigraph::validate() const {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "pattern needs at least one vertex", {{"k", k}});
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= k || b < 0 || b >= k)
      throw Error(ErrorCode::InvalidArgument, "pattern edge endpoint out of range", {{"from", a}, {"to", b}});
    if (a == b) throw Error(ErrorCode::InvalidArgument, "pattern has a self-loop", {{"vertex", a}});
    if (!seen.insert({a, b}).second)
      throw Error(ErrorCode::InvalidArgument, "pattern has a duplicate edge", {{"from", a}, {"to", b}});
  }
}

PatternDigraph pattern_complete_digraph(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "pattern needs at least one vertex", {{"k", k}});
  PatternDigraph p{k, {}};
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b) p.edges.emplace_back(a, b);
  return p;
}

PatternDigraph pattern_transitive(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "pattern needs at least one vertex", {{"k", k}});
  PatternDigraph p{k, {}};
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) p.edges.emplace_back(a, b);
  return p;
}

PatternDigraph parse_pattern(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "pattern must look like kind:args");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad integer in pattern: " + s);
    }
  };
  if (kind == "complete") return pattern_complete_digraph(to_int(arg));
  if (kind == "transitive") return pattern_transitive(to_int(arg));
  if (kind == "edges") {
    PatternDigraph p;
    std::stringstream ss(arg);
    std::string item;
    int maxv = -1;
    while (std::getline(ss, item, ',')) {
      const auto gt = item.find('>');
      if (gt == std::string::npos) throw Error(ErrorCode::InvalidArgument, "edge must look like a>b: " + item);
      const int a = to_int(item.substr(0, gt));
      const int b = to_int(item.substr(gt + 1));
      p.edges.emplace_back(a, b);
      maxv = std::max({maxv, a, b});
    }
    p.k = maxv + 1;
    p.validate();
    return p;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pattern kind: " + kind);
}

// ---------------------------------------------------------------------------

int Subdivision::count_paths_of_length(int len) const {
  return static_cast<int>(std::count_if(paths.begin(), paths.end(), [&](const auto& p) { return p.length() == len; }));
}

int Subdivision::span() const {
  int s = static_cast<int>(branch.size());
  for (const auto& p : paths) s += static_cast<int>(p.internals.size());
  return s;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PatternInvalid: return "pattern-invalid";
    case ViolationKind::BranchOutOfRange: return "branch-out-of-range";
    case ViolationKind::BranchCollision: return "branch-collision";
    case ViolationKind::MissingPath: return "missing-path";
    case ViolationKind::DuplicatePath: return "duplicate-path";
    case ViolationKind::UnexpectedPath: return "unexpected-path";
    case ViolationKind::VertexOutOfRange: return "vertex-out-of-range";
    case ViolationKind::MissingEdgeHop: return "missing-edge-hop";
    case ViolationKind::ReusedInternal: return "reused-internal";
    case ViolationKind::LengthCap: return "length-cap";
    case ViolationKind::ExactLength: return "exact-length";
  }
  return "unknown";
}

bool VerifyReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const auto& v) { return v.kind == kind; });
}

namespace {

std::string describe(const PathWitness& p) {
  std::string s = std::to_string(p.from);
  for (int v : p.internals) s += "->" + std::to_string(v);
  return s + "->" + std::to_string(p.to);
}

}  // namespace

VerifyReport verify(const Tournament& host, const Subdivision& sub, int max_len, std::optional<int> exact_len) {
  VerifyReport r;
  const int n = host.size();
  auto add = [&](ViolationKind kind, std::string detail) {
    r.violations.push_back({kind, std::move(detail)});
  };

  try {
    sub.pattern.validate();
  } catch (const Error& e) {
    add(ViolationKind::PatternInvalid, e.what());
  }
  if (static_cast<int>(sub.branch.size()) != sub.pattern.k)
    add(ViolationKind::PatternInvalid, "branch map has " + std::to_string(sub.branch.size()) + " entries for k=" +
                                           std::to_string(sub.pattern.k));

  // Which pattern vertex does each host vertex carry?
  std::map<int, int> branch_owner;
  for (int i = 0; i < static_cast<int>(sub.branch.size()); ++i) {
    const int v = sub.branch[i];
    if (v < 0 || v >= n) {
      add(ViolationKind::BranchOutOfRange, "pattern vertex " + std::to_string(i) + " -> " + std::to_string(v));
      continue;
    }
    auto [it, fresh] = branch_owner.emplace(v, i);
    if (!fresh)
      add(ViolationKind::BranchCollision, "pattern vertices " + std::to_string(it->second) + " and " +
                                              std::to_string(i) + " share host vertex " + std::to_string(v));
  }

  // Match paths to pattern edges by host endpoints.
  std::map<std::pair<int, int>, int> wanted;  // host (from, to) -> times required
  for (auto [a, b] : sub.pattern.edges)
    if (a >= 0 && b >= 0 && a < static_cast<int>(sub.branch.size()) && b < static_cast<int>(sub.branch.size()))
      ++wanted[{sub.branch[a], sub.branch[b]}];
  std::map<std::pair<int, int>, int> provided;
  for (const auto& p : sub.paths) ++provided[{p.from, p.to}];
  for (auto [key, need] : wanted) {
    const int have = provided.count(key) ? provided[key] : 0;
    if (have == 0)
      add(ViolationKind::MissingPath, "no path " + std::to_string(key.first) + "->" + std::to_string(key.second));
    else if (have > need)
      add(ViolationKind::DuplicatePath,
          std::to_string(have) + " paths " + std::to_string(key.first) + "->" + std::to_string(key.second));
  }
  for (auto [key, have] : provided)
    if (!wanted.count(key))
      add(ViolationKind::UnexpectedPath,
          "path " + std::to_string(key.first) + "->" + std::to_string(key.second) + " matches no pattern edge");

  std::map<int, int> internal_owner;  // host vertex -> path index
  for (int pi = 0; pi < static_cast<int>(sub.paths.size()); ++pi) {
    const auto& p = sub.paths[pi];
    std::vector<int> hops;
    hops.reserve(p.internals.size() + 2);
    hops.push_back(p.from);
    hops.insert(hops.end(), p.internals.begin(), p.internals.end());
    hops.push_back(p.to);
    bool in_range = true;
    for (int v : hops)
      if (v < 0 || v >= n) {
        add(ViolationKind::VertexOutOfRange, describe(p) + " uses vertex " + std::to_string(v));
        in_range = false;
      }
    if (in_range)
      for (std::size_t h = 0; h + 1 < hops.size(); ++h)
        if (hops[h] == hops[h + 1] || !host.edge(hops[h], hops[h + 1]))
          add(ViolationKind::MissingEdgeHop,
              describe(p) + ": no edge " + std::to_string(hops[h]) + "->" + std::to_string(hops[h + 1]));
    for (int v : p.internals) {
      if (branch_owner.count(v))
        add(ViolationKind::ReusedInternal, describe(p) + ": internal " + std::to_string(v) + " is a branch vertex");
      auto [it, fresh] = internal_owner.emplace(v, pi);
      if (!fresh)
        add(ViolationKind::ReusedInternal, "internal " + std::to_string(v) + " shared by " +
                                               describe(sub.paths[it->second]) + " and " + describe(p));
    }
    if (p.length() > max_len)
      add(ViolationKind::LengthCap, describe(p) + " has length " + std::to_string(p.length()) + " > " +
                                        std::to_string(max_len));
    if (exact_len && p.length() != *exact_len)
      add(ViolationKind::ExactLength, describe(p) + " has length " + std::to_string(p.length()) +
                                          ", required exactly " + std::to_string(*exact_len));
  }

  r.l1 = sub.l1();
  r.l2 = sub.l2();
  r.span = sub.span();
  r.valid = r.violations.empty();
  return r;
}

int min_span(const PatternDigraph& pattern, bool host_is_tournament) {
  const int k = pattern.k;
  if (host_is_tournament && pattern.is_complete()) return k * (k - 1) / 2 + k;
  return k;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const PatternDigraph& pattern) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : pattern.edges) edges.push_back({a, b});
  return {{"k", pattern.k}, {"edges", edges}};
}

PatternDigraph pattern_from_json(const nlohmann::json& j) {
  PatternDigraph p;
  p.k = j.at("k").get<int>();
  for (const auto& e : j.at("edges")) p.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return p;
}

nlohmann::json witness_to_json(const Subdivision& sub, const std::string& host_hash) {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : sub.paths) paths.push_back({{"from", p.from}, {"to", p.to}, {"internals", p.internals}});
  return {{"pattern", to_json(sub.pattern)}, {"branch", sub.branch}, {"paths", paths}, {"host_hash", host_hash}};
}

Subdivision witness_from_json(const nlohmann::json& j, std::string* host_hash) {
  try {
    Subdivision sub;
    sub.pattern = pattern_from_json(j.at("pattern"));
    sub.branch = j.at("branch").get<std::vector<int>>();
    for (const auto& p : j.at("paths"))
      sub.paths.push_back({p.at("from").get<int>(), p.at("to").get<int>(), p.at("internals").get<std::vector<int>>()});
    if (host_hash) *host_hash = j.value("host_hash", std::string{});
    return sub;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed witness: ") + e.what());
  }
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : report.violations) v.push_back({{"kind", to_string(x.kind)}, {"detail", x.detail}});
  return {{"valid", report.valid}, {"l1", report.l1}, {"l2", report.l2}, {"span", report.span}, {"violations", v}};
}

}  // namespace tsub
