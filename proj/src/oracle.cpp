#include "simfvs/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace simfvs {

bool SetSystem::groups_pairwise_disjoint() const {
  for (const auto& group : groups) {
    std::vector<char> hit(universe_size, 0);
    for (const auto& set : group)
      for (ElementId e : set) {
        if (e < 0 || e >= universe_size) return false;
        if (hit[e]) return false;
        hit[e] = 1;
      }
  }
  return true;
}

bool verify_solution(const EdgeColoredGraph& g, const std::vector<VertexId>& s) {
  for (VertexId v : s)
    if (!g.has_vertex(v)) throw std::invalid_argument("solution contains unknown vertex");
  if (s.empty()) {
    for (ColorId c = 1; c <= g.alpha(); ++c)
      if (!g.is_forest(c)) return false;
    return true;
  }
  std::vector<VertexId> keep;
  std::vector<char> drop_mark;
  for (VertexId v : s) {
    if (static_cast<size_t>(v) >= drop_mark.size()) drop_mark.resize(v + 1, 0);
    drop_mark[v] = 1;
  }
  for (VertexId v : g.vertices())
    if (static_cast<size_t>(v) >= drop_mark.size() || !drop_mark[v]) keep.push_back(v);
  EdgeColoredGraph rest = g.induced_subgraph(keep);
  for (ColorId c = 1; c <= g.alpha(); ++c)
    if (!rest.is_forest(c)) return false;
  return true;
}

namespace {

constexpr int kOracleVertexBound = 24;

// Enumerates size-r index combinations in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  int r = static_cast<int>(idx.size());
  for (int i = r - 1; i >= 0; --i) {
    if (idx[i] < n - (r - i)) {
      ++idx[i];
      for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult brute_force_min_simfvs(const EdgeColoredGraph& g, int cap,
                                    const std::vector<VertexId>& avoid) {
  std::vector<VertexId> pool = g.vertices();
  if (static_cast<int>(pool.size()) > kOracleVertexBound)
    throw std::invalid_argument("graph too large for brute force oracle");
  for (VertexId v : avoid) {
    if (!g.has_vertex(v)) throw std::invalid_argument("avoid set contains unknown vertex");
    pool.erase(std::remove(pool.begin(), pool.end(), v), pool.end());
  }
  int n = static_cast<int>(pool.size());
  int limit = std::min(cap, n);
  for (int r = 0; r <= limit; ++r) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    do {
      std::vector<VertexId> candidate(r);
      for (int i = 0; i < r; ++i) candidate[i] = pool[idx[i]];
      if (verify_solution(g, candidate)) return {r, candidate};
    } while (r > 0 && next_combination(idx, n));
  }
  return {std::nullopt, {}};
}

std::optional<std::vector<int>> brute_force_hitting_set(const SetSystem& sys, int cap) {
  if (sys.universe_size > kOracleVertexBound)
    throw std::invalid_argument("universe too large for brute force hitting set");
  auto sets = sys.all_sets();
  for (const auto& set : sets)
    if (set.empty()) return std::nullopt;  // empty set can never be hit
  int n = sys.universe_size;
  int limit = std::min(cap, n);
  auto hits_all = [&](const std::vector<int>& chosen) {
    std::vector<char> in(n, 0);
    for (int e : chosen) in[e] = 1;
    for (const auto& set : sets) {
      bool hit = false;
      for (ElementId e : set)
        if (in[e]) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };
  for (int r = 0; r <= limit; ++r) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    do {
      if (hits_all(idx)) return idx;
    } while (r > 0 && next_combination(idx, n));
  }
  return std::nullopt;
}

}  // namespace simfvs
