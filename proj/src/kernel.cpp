#include "simfvs/kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace simfvs {

namespace {

// ---------------------------------------------------------------------------
// Local simple-graph scratchpad for the 2-approximation. Parallel edges are
// subdivided so the classic local-ratio scheme applies; subdivision vertices
// map back to an endpoint of their edge.
struct LocalGraph {
  std::vector<std::vector<int>> adj;  // simple, symmetric
  int n() const { return static_cast<int>(adj.size()); }
  void add_edge(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
};

bool local_is_fvs(const LocalGraph& g, const std::vector<char>& removed) {
  std::vector<int> comp(g.n(), -1);
  for (int r = 0; r < g.n(); ++r) {
    if (removed[r] || comp[r] != -1) continue;
    comp[r] = r;
    std::vector<std::pair<int, int>> stack{{r, -1}};
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      bool skipped_parent = false;
      for (int u : g.adj[v]) {
        if (removed[u]) continue;
        if (u == parent && !skipped_parent) {
          skipped_parent = true;  // one edge back to the parent is the tree edge
          continue;
        }
        if (comp[u] != -1) return false;
        comp[u] = r;
        stack.push_back({u, v});
      }
    }
  }
  return true;
}

}  // namespace

std::vector<VertexId> two_approx_fvs(const ColorView& view) {
  const EdgeColoredGraph& g = *view.graph;
  std::vector<VertexId> verts = g.vertices();
  std::vector<VertexId> forced;  // loop carriers belong to every solution

  std::map<VertexId, int> local_of;
  std::vector<VertexId> vertex_of;
  for (VertexId v : verts) {
    if (g.multiplicity(v, v, view.color) > 0) {
      forced.push_back(v);
      continue;
    }
    local_of[v] = static_cast<int>(vertex_of.size());
    vertex_of.push_back(v);
  }

  LocalGraph lg;
  lg.adj.resize(vertex_of.size());
  std::vector<VertexId> owner(vertex_of.size(), -1);  // subdivision vertex -> endpoint
  for (const auto& e : g.edges()) {
    if (e.color != view.color || e.u == e.v) continue;
    if (!local_of.count(e.u) || !local_of.count(e.v)) continue;  // endpoint was forced
    int a = local_of[e.u], b = local_of[e.v];
    lg.add_edge(a, b);
    for (int extra = 1; extra < e.multiplicity; ++extra) {
      int mid = lg.n();
      lg.adj.emplace_back();
      owner.push_back(std::min(e.u, e.v));
      lg.add_edge(a, mid);
      lg.add_edge(mid, b);
    }
  }

  int n = lg.n();
  std::vector<char> removed(n, 0);
  std::vector<int> deg(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(lg.adj[v].size());
  std::vector<long double> weight(n, 1.0L);
  std::vector<int> stack_order;

  auto erase_vertex = [&](int v) {
    removed[v] = 1;
    for (int u : lg.adj[v])
      if (!removed[u]) --deg[u];
    deg[v] = 0;
  };
  auto cleanup = [&]() {
    bool again = true;
    while (again) {
      again = false;
      for (int v = 0; v < n; ++v)
        if (!removed[v] && deg[v] <= 1) {
          erase_vertex(v);
          again = true;
        }
    }
  };

  constexpr long double kEps = 1e-12L;
  for (;;) {
    cleanup();
    int live = 0;
    for (int v = 0; v < n; ++v) live += !removed[v];
    if (live == 0) break;

    // Min degree is now >= 2, so a cycle exists. Look for a semidisjoint
    // cycle: all vertices of degree two except at most one.
    std::vector<int> semi;
    for (int v = 0; v < n && semi.empty(); ++v) {
      if (removed[v] || deg[v] != 2) continue;
      auto walk = [&](int start, int from) {
        int prev = from, cur = start;
        std::vector<int> chain;
        while (deg[cur] == 2) {
          chain.push_back(cur);
          int next = -1;
          for (int u : lg.adj[cur])
            if (!removed[u] && u != prev) {
              next = u;
              break;
            }
          if (next == -1) break;  // chain of the entire component
          prev = cur;
          cur = next;
          if (cur == start || cur == from) break;
        }
        chain.push_back(cur);
        return chain;
      };
      int n1 = -1, n2 = -1;
      for (int u : lg.adj[v])
        if (!removed[u]) (n1 == -1 ? n1 : n2) = u;
      std::vector<int> left = walk(n1, v);
      if (left.back() == v) {  // closed all-degree-two cycle
        semi = left;
        break;
      }
      std::vector<int> right = walk(n2, v);
      if (deg[left.back()] != 2 && left.back() == right.back()) {
        // chain closes through a single higher-degree vertex
        semi.assign(left.begin(), left.end() - 1);
        std::reverse(semi.begin(), semi.end());
        semi.push_back(v);
        semi.insert(semi.end(), right.begin(), right.end());
      }
    }

    if (!semi.empty()) {
      long double gamma = weight[semi.front()];
      for (int u : semi) gamma = std::min(gamma, weight[u]);
      for (int u : semi) weight[u] -= gamma;
    } else {
      long double gamma = -1;
      for (int v = 0; v < n; ++v)
        if (!removed[v]) {
          long double r = weight[v] / (deg[v] - 1);
          if (gamma < 0 || r < gamma) gamma = r;
        }
      for (int v = 0; v < n; ++v)
        if (!removed[v]) weight[v] -= gamma * (deg[v] - 1);
    }
    for (int v = 0; v < n; ++v)
      if (!removed[v] && weight[v] <= kEps) {
        erase_vertex(v);
        stack_order.push_back(v);
      }
  }

  // Reverse pruning keeps the solution minimal, which the factor-2 argument
  // requires.
  std::vector<char> in_fvs(n, 0);
  for (int v : stack_order) in_fvs[v] = 1;
  std::vector<char> test(n, 0);
  for (auto it = stack_order.rbegin(); it != stack_order.rend(); ++it) {
    for (int v = 0; v < n; ++v) test[v] = in_fvs[v];
    test[*it] = 0;
    if (local_is_fvs(lg, test)) in_fvs[*it] = 0;
  }

  std::set<VertexId> out(forced.begin(), forced.end());
  for (int v = 0; v < n; ++v)
    if (in_fvs[v]) out.insert(v < static_cast<int>(vertex_of.size()) ? vertex_of[v] : owner[v]);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------

std::optional<std::vector<std::vector<VertexId>>> cycles_through_vertex(const ColorView& view,
                                                                        VertexId v, int max_cycles,
                                                                        long long max_steps) {
  const EdgeColoredGraph& g = *view.graph;
  std::vector<std::vector<VertexId>> cycles;
  if (g.multiplicity(v, v, view.color) > 0) cycles.push_back({v});

  std::vector<VertexId> nbrs;
  for (const auto& [u, mult] : g.neighbors(v, view.color)) {
    if (u == v) continue;
    if (mult >= 2) cycles.push_back({v, u});
    nbrs.push_back(u);
  }
  std::set<VertexId> nbr_set(nbrs.begin(), nbrs.end());

  long long steps = 0;
  bool overflow = false;
  std::set<VertexId> visited{v};
  std::vector<VertexId> path;
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId start, VertexId cur) {
    if (overflow) return;
    if (++steps > max_steps || static_cast<int>(cycles.size()) > max_cycles) {
      overflow = true;
      return;
    }
    if (cur != start && nbr_set.count(cur) && cur > start) {
      std::vector<VertexId> cycle{v};
      cycle.insert(cycle.end(), path.begin(), path.end());
      cycles.push_back(std::move(cycle));
    }
    for (const auto& [u, mult] : g.neighbors(cur, view.color)) {
      if (visited.count(u)) continue;
      visited.insert(u);
      path.push_back(u);
      dfs(start, u);
      path.pop_back();
      visited.erase(u);
    }
  };
  for (VertexId x : nbrs) {
    visited.insert(x);
    path.push_back(x);
    dfs(x, x);
    path.pop_back();
    visited.erase(x);
    if (overflow) return std::nullopt;
  }
  return cycles;
}

namespace {

// Straightforward exact packing: memoized best count over (index, avail);
// reconstruction by re-walking the memo. Clearer than threading witness
// vectors through the recursion.
class PackingSolver {
 public:
  PackingSolver(const std::vector<std::vector<VertexId>>& cycles, VertexId center,
                long long budget)
      : cycles_(cycles), budget_(budget), initial_budget_(budget) {
    std::set<VertexId> universe;
    for (const auto& c : cycles)
      for (VertexId x : c)
        if (x != center) universe.insert(x);
    ok_ = universe.size() <= 62;
    if (!ok_) return;
    std::map<VertexId, int> bit;
    for (VertexId x : universe) bit[x] = static_cast<int>(bit.size());
    for (const auto& c : cycles) {
      unsigned long long m = 0;
      for (VertexId x : c)
        if (x != center) m |= 1ull << bit[x];
      masks_.push_back(m);
    }
  }

  // Max packing size, or nullopt when the search budget ran out (or the
  // universe was too large for masks).
  std::optional<int> max_size() {
    if (!ok_) return std::nullopt;
    int r = rec(0, ~0ull);
    if (budget_ < 0) return std::nullopt;
    return r;
  }

  std::vector<int> reconstruct(int value) {
    budget_ = initial_budget_;  // reconstruction re-walks memoized states
    std::vector<int> out;
    unsigned long long avail = ~0ull;
    size_t idx = 0;
    while (value > 0) {
      // taking cycle idx is optimal iff it fits and 1 + rec(rest) == value
      if ((masks_[idx] & ~avail) == 0 && 1 + rec(idx + 1, avail & ~masks_[idx]) == value) {
        out.push_back(static_cast<int>(idx));
        avail &= ~masks_[idx];
        --value;
      }
      ++idx;
    }
    return out;
  }

 private:
  int rec(size_t idx, unsigned long long avail) {
    if (idx >= cycles_.size()) return 0;
    if (--budget_ < 0) return 0;
    auto key = std::make_pair(idx, avail);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int best = rec(idx + 1, avail);
    if ((masks_[idx] & ~avail) == 0) best = std::max(best, 1 + rec(idx + 1, avail & ~masks_[idx]));
    memo_[key] = best;
    return best;
  }

  const std::vector<std::vector<VertexId>>& cycles_;
  std::vector<unsigned long long> masks_;
  std::map<std::pair<size_t, unsigned long long>, int> memo_;
  long long budget_;
  long long initial_budget_;
  bool ok_ = true;
};

// Shortest cycle through v avoiding `blocked`, as a vertex sequence starting
// at v, or empty when none exists.
std::vector<VertexId> shortest_cycle_through(const ColorView& view, VertexId v,
                                             const std::set<VertexId>& blocked) {
  const EdgeColoredGraph& g = *view.graph;
  if (g.multiplicity(v, v, view.color) > 0) return {v};
  std::vector<VertexId> best;
  for (const auto& [u, mult] : g.neighbors(v, view.color)) {
    if (u == v || blocked.count(u)) continue;
    if (mult >= 2) return {v, u};
  }
  // BFS from each neighbor inside G_i minus v; stop at another neighbor.
  for (const auto& [x, mult_x] : g.neighbors(v, view.color)) {
    if (x == v || blocked.count(x)) continue;
    std::map<VertexId, VertexId> pred;
    pred[x] = -1;
    std::vector<VertexId> queue{x};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId cur = queue[qi];
      for (const auto& [u, mult] : g.neighbors(cur, view.color)) {
        if (u == v || u == cur || blocked.count(u) || pred.count(u)) continue;
        pred[u] = cur;
        // u closes a cycle if it is also adjacent to v and differs from x
        if (u != x && g.multiplicity(v, u, view.color) > 0) {
          std::vector<VertexId> cycle{v};
          std::vector<VertexId> chain;
          for (VertexId t = u; t != -1; t = pred[t]) chain.push_back(t);
          std::reverse(chain.begin(), chain.end());
          cycle.insert(cycle.end(), chain.begin(), chain.end());
          if (best.empty() || cycle.size() < best.size()) best = cycle;
          queue.clear();
          break;
        }
        queue.push_back(u);
      }
    }
  }
  return best;
}

// Bounded branching: a vertex set of size <= budget (and avoiding v) meeting
// every cycle through v, or nullopt within this budget. `steps` guards the
// whole iterative deepening loop.
std::optional<std::set<VertexId>> block_cycles_through(const ColorView& view, VertexId v,
                                                       std::set<VertexId>& blocked, int budget,
                                                       long long& steps) {
  if (--steps < 0) return std::nullopt;
  std::vector<VertexId> cycle = shortest_cycle_through(view, v, blocked);
  if (cycle.empty()) return blocked;
  if (budget == 0) return std::nullopt;
  for (VertexId x : cycle) {
    if (x == v) continue;
    blocked.insert(x);
    auto r = block_cycles_through(view, v, blocked, budget - 1, steps);
    blocked.erase(x);
    if (r) return r;
    if (steps < 0) return std::nullopt;
  }
  return std::nullopt;
}

bool validate_cycle(const EdgeColoredGraph& g, ColorId color, const std::vector<VertexId>& cycle) {
  if (cycle.empty()) return false;
  std::set<VertexId> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != cycle.size()) return false;
  if (cycle.size() == 1) return g.multiplicity(cycle[0], cycle[0], color) > 0;
  if (cycle.size() == 2) return g.multiplicity(cycle[0], cycle[1], color) >= 2;
  for (size_t i = 0; i < cycle.size(); ++i)
    if (g.multiplicity(cycle[i], cycle[(i + 1) % cycle.size()], color) == 0) return false;
  return true;
}

}  // namespace

Certificate flower_or_avoiding_fvs(const ColorView& view, VertexId v, int k,
                                   const KernelOptions& options) {
  const EdgeColoredGraph& g = *view.graph;
  if (g.multiplicity(v, v, view.color) > 0)
    throw std::invalid_argument("flower search requires a loop-free vertex");

  Certificate cert;
  cert.v = v;
  cert.color = view.color;

  auto cycles = cycles_through_vertex(view, v, options.max_cycles_through_vertex,
                                      options.max_search_steps);
  if (!cycles) return cert;  // enumeration blew the cap: Neither

  if (!cycles->empty()) {
    PackingSolver packing(*cycles, v, options.max_search_steps);
    auto max_order = packing.max_size();
    if (!max_order) return cert;  // packing search blew the cap: Neither
    if (*max_order >= k + 1) {
      cert.kind = Certificate::Kind::Flower;
      for (int idx : packing.reconstruct(*max_order)) cert.flower.push_back((*cycles)[idx]);
      return cert;
    }
  }

  // No large flower; find a feedback vertex set avoiding v: an approximate
  // solution for everything away from v plus a bounded blocker for the
  // cycles through v.
  std::vector<VertexId> rest;
  for (VertexId x : g.vertices())
    if (x != v) rest.push_back(x);
  EdgeColoredGraph without_v = g.induced_subgraph(rest);
  std::vector<VertexId> approx = two_approx_fvs(ColorView{&without_v, view.color});

  std::set<VertexId> h(approx.begin(), approx.end());
  if (!cycles->empty()) {
    long long steps = options.max_search_steps;
    std::optional<std::set<VertexId>> blocker;
    for (int budget = 0; budget <= options.blocker_budget_factor * k && !blocker; ++budget) {
      std::set<VertexId> scratch;
      blocker = block_cycles_through(view, v, scratch, budget, steps);
    }
    if (!blocker) return cert;  // budget exhausted: Neither
    h.insert(blocker->begin(), blocker->end());
  }

  cert.kind = Certificate::Kind::AvoidingFvs;
  cert.h_v.assign(h.begin(), h.end());
  return cert;
}

void apply_r6(EdgeColoredGraph& g, VertexId v, ColorId color,
              const std::vector<std::vector<VertexId>>& flower, int& k, ReductionTrace& trace) {
  if (static_cast<int>(flower.size()) < k + 1)
    throw std::invalid_argument("flower order below k+1");
  std::set<VertexId> used;
  for (const auto& cycle : flower) {
    if (!validate_cycle(g, color, cycle)) throw std::invalid_argument("invalid flower cycle");
    if (std::find(cycle.begin(), cycle.end(), v) == cycle.end())
      throw std::invalid_argument("flower cycle misses its center");
    for (VertexId x : cycle) {
      if (x == v) continue;
      if (used.count(x)) throw std::invalid_argument("flower cycles overlap outside the center");
      used.insert(x);
    }
  }
  TraceEvent e;
  e.kind = TraceEventKind::R6Take;
  e.v = v;
  e.color = color;
  trace.events.push_back(std::move(e));
  g.remove_vertex(v);
  --k;
}

ExpansionResult expansion_lemma(const BipartiteGraph& b, int q) {
  if (q < 1) throw std::invalid_argument("expansion requires q >= 1");
  if (b.b_size < q * b.a_size) throw std::invalid_argument("expansion requires |B| >= q|A|");
  std::vector<std::vector<int>> adj_b(b.b_size);
  for (int a = 0; a < b.a_size; ++a)
    for (int bb : b.adj[a]) adj_b[bb].push_back(a);
  for (int bb = 0; bb < b.b_size; ++bb)
    if (adj_b[bb].empty()) throw std::invalid_argument("expansion requires no isolated B vertex");

  // Maximum matching where each A vertex accepts up to q partners.
  std::vector<int> match_b(b.b_size, -1);
  std::vector<std::vector<int>> match_a(b.a_size);
  std::vector<char> visited(b.a_size, 0);
  std::function<bool(int)> augment = [&](int bb) -> bool {
    for (int a : adj_b[bb]) {
      if (visited[a]) continue;
      visited[a] = 1;
      if (static_cast<int>(match_a[a].size()) < q) {
        match_a[a].push_back(bb);
        match_b[bb] = a;
        return true;
      }
      for (size_t i = 0; i < match_a[a].size(); ++i) {
        if (augment(match_a[a][i])) {
          match_a[a][i] = bb;
          match_b[bb] = a;
          return true;
        }
      }
    }
    return false;
  };
  for (int bb = 0; bb < b.b_size; ++bb) {
    std::fill(visited.begin(), visited.end(), 0);
    augment(bb);
  }

  std::vector<int> unmatched;
  for (int bb = 0; bb < b.b_size; ++bb)
    if (match_b[bb] == -1) unmatched.push_back(bb);

  std::vector<char> reach_a(b.a_size, 0), reach_b(b.b_size, 0);
  if (unmatched.empty()) {
    // |M| = |B| >= q|A| forces every A vertex to be exactly q-saturated.
    std::fill(reach_a.begin(), reach_a.end(), 1);
    std::fill(reach_b.begin(), reach_b.end(), 1);
  } else {
    std::vector<int> queue;
    for (int bb : unmatched) {
      reach_b[bb] = 1;
      queue.push_back(bb);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int bb = queue[qi];
      for (int a : adj_b[bb]) {
        if (reach_a[a]) continue;
        if (static_cast<int>(match_a[a].size()) < q)
          throw std::logic_error("augmenting path survived maximum matching");
        reach_a[a] = 1;
        for (int nb : match_a[a])
          if (!reach_b[nb]) {
            reach_b[nb] = 1;
            queue.push_back(nb);
          }
      }
    }
  }

  ExpansionResult out;
  for (int a = 0; a < b.a_size; ++a)
    if (reach_a[a]) {
      out.x.push_back(a);
      out.assignment.push_back(match_a[a]);
    }
  for (int bb = 0; bb < b.b_size; ++bb)
    if (reach_b[bb]) out.y.push_back(bb);
  if (out.x.empty() || out.y.empty()) throw std::logic_error("empty expansion");
  return out;
}

bool apply_r7(EdgeColoredGraph& g, VertexId v, ColorId color, const std::vector<VertexId>& h_v,
              int k, ReductionTrace& trace) {
  if (h_v.empty()) return false;
  std::set<VertexId> h_set(h_v.begin(), h_v.end());
  if (h_set.count(v)) return false;
  for (VertexId h : h_v)
    if (!g.has_vertex(h)) return false;
  if (g.degree(v, color) <= static_cast<int>(h_v.size()) * (k + 4)) return false;

  // Re-validate the certificate before rewriting anything.
  {
    std::vector<VertexId> rest;
    for (VertexId x : g.vertices())
      if (!h_set.count(x)) rest.push_back(x);
    EdgeColoredGraph sub = g.induced_subgraph(rest);
    if (!sub.is_forest(color)) return false;
  }

  // Components of G_i minus (H_v, v, color-isolated vertices) adjacent to v.
  std::vector<VertexId> rest;
  for (VertexId x : g.vertices())
    if (x != v && !h_set.count(x) && g.degree(x, color) > 0) rest.push_back(x);
  auto comps = g.components(color, rest);
  std::vector<std::vector<VertexId>> d;  // components adjacent to v
  for (auto& comp : comps) {
    bool adj_v = false;
    for (VertexId x : comp)
      if (g.multiplicity(v, x, color) > 0) {
        adj_v = true;
        break;
      }
    if (adj_v) d.push_back(std::move(comp));
  }

  BipartiteGraph bip;
  bip.a_size = static_cast<int>(h_v.size());
  bip.b_size = static_cast<int>(d.size());
  bip.adj.resize(bip.a_size);
  for (int ai = 0; ai < bip.a_size; ++ai)
    for (int bi = 0; bi < bip.b_size; ++bi) {
      bool touches = false;
      for (VertexId x : d[bi])
        if (g.multiplicity(h_v[ai], x, color) > 0) {
          touches = true;
          break;
        }
      if (touches) bip.adj[ai].push_back(bi);
    }
  int q = k + 2;
  if (bip.b_size < q * bip.a_size) return false;
  for (int bi = 0; bi < bip.b_size; ++bi) {
    bool covered = false;
    for (int ai = 0; ai < bip.a_size && !covered; ++ai)
      covered = std::find(bip.adj[ai].begin(), bip.adj[ai].end(), bi) != bip.adj[ai].end();
    if (!covered) return false;  // a component with no FVS neighbor; rule inapplicable
  }

  ExpansionResult exp = expansion_lemma(bip, q);

  TraceEvent e;
  e.kind = TraceEventKind::R7Rewire;
  e.v = v;
  e.color = color;
  for (int bi : exp.y)
    for (VertexId x : d[bi]) {
      int m = g.multiplicity(v, x, color);
      if (m > 0) {
        e.r7_deleted.push_back({x, m});
        g.remove_edge(v, x, color, m);
      }
    }
  for (int xi : exp.x) {
    VertexId h = h_v[xi];
    int m = g.multiplicity(v, h, color);
    if (m < 2) {
      g.add_edge(v, h, color, 2 - m);
      e.r7_doubled.push_back(h);
    }
  }
  trace.events.push_back(std::move(e));
  return true;
}

std::vector<std::vector<VertexId>> enumerate_deg2_paths(const ColorView& view,
                                                        const std::vector<VertexId>& s_i) {
  const EdgeColoredGraph& g = *view.graph;
  std::set<VertexId> s(s_i.begin(), s_i.end());
  for (VertexId x : s_i)
    if (!g.has_vertex(x)) throw std::invalid_argument("FVS contains unknown vertex");
  {
    std::vector<VertexId> rest;
    for (VertexId x : g.vertices())
      if (!s.count(x)) rest.push_back(x);
    EdgeColoredGraph sub = g.induced_subgraph(rest);
    if (!sub.is_forest(view.color))
      throw std::invalid_argument("s_i is not a feedback vertex set of the color view");
  }

  auto candidate = [&](VertexId x) {
    if (s.count(x) || g.degree(x, view.color) != 2) return false;
    for (const auto& [u, mult] : g.neighbors(x, view.color))
      if (u == x || s.count(u)) return false;
    return true;
  };

  std::set<VertexId> used;
  std::vector<std::vector<VertexId>> paths;
  for (VertexId start : g.vertices()) {
    if (!candidate(start) || used.count(start)) continue;
    // Walk to one end of the chain of candidates.
    VertexId cur = start, prev = -1;
    for (;;) {
      VertexId next = -1;
      for (const auto& [u, mult] : g.neighbors(cur, view.color))
        if (u != prev && candidate(u)) next = u;
      if (next == -1) break;
      prev = cur;
      cur = next;
    }
    // Collect the chain from that end.
    std::vector<VertexId> path;
    prev = -1;
    while (cur != -1) {
      path.push_back(cur);
      used.insert(cur);
      VertexId next = -1;
      for (const auto& [u, mult] : g.neighbors(cur, view.color))
        if (u != prev && candidate(u) && !used.count(u)) next = u;
      prev = cur;
      cur = next;
    }
    if (path.back() < path.front()) std::reverse(path.begin(), path.end());
    paths.push_back(std::move(path));
  }
  std::sort(paths.begin(), paths.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return paths;
}

std::vector<VertexId> intercept(const std::vector<VertexId>& path, const PathTuple& tuple) {
  bool member = false;
  for (const auto& entry : tuple.entries) member |= (entry == path);
  if (!member) return {};
  std::vector<VertexId> out;
  for (VertexId v : path) {
    bool in_all = true;
    for (const auto& entry : tuple.entries) {
      if (entry.empty()) continue;
      if (std::find(entry.begin(), entry.end(), v) == entry.end()) {
        in_all = false;
        break;
      }
    }
    if (in_all) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void unravel(EdgeColoredGraph& g, const std::vector<VertexId>& path, const PathTuple& tuple,
             VertexId u, ReductionTrace& trace) {
  std::vector<VertexId> ic = intercept(path, tuple);
  if (ic.size() <= 1) throw std::invalid_argument("unravel guard: intercept must exceed one");
  if (std::find(ic.begin(), ic.end(), u) == ic.end())
    throw std::invalid_argument("unravel vertex outside the intercept");
  if (static_cast<int>(tuple.entries.size()) != g.alpha())
    throw std::invalid_argument("tuple arity differs from color count");

  TraceEvent e;
  e.kind = TraceEventKind::R8Unravel;
  e.v = u;
  for (ColorId t = 1; t <= g.alpha(); ++t) {
    if (tuple.entries[t - 1].empty()) continue;
    std::vector<std::pair<VertexId, int>> ends = g.neighbors(u, t);
    if (ends.size() != 2 || ends[0].second != 1 || ends[1].second != 1)
      throw std::logic_error("path vertex must have two distinct single edges per tuple color");
    VertexId x = ends[0].first, y = ends[1].first;
    VertexId copy = g.add_vertex_copy_of(u);
    g.remove_edge(x, u, t, 1);
    g.remove_edge(u, y, t, 1);
    g.add_edge(x, copy, t, 1);
    g.add_edge(copy, y, t, 1);
    e.copies.push_back({t, copy});
  }
  trace.events.push_back(std::move(e));
}

namespace {

KernelResult canonical_no(int alpha, ReductionTrace trace) {
  EdgeColoredGraph no_instance(alpha, 2);
  no_instance.add_edge(0, 1, 1, 2);
  return {std::move(no_instance), 0, std::move(trace), true};
}

}  // namespace

KernelResult kernelize(const EdgeColoredGraph& g, int k, const KernelOptions& options) {
  KernelResult out{g, k, {}, false};
  int initial_vertices = g.num_vertices();

  auto cleanup = [&]() -> bool {
    ReducedInstance red = reduce_exhaustive(out.graph, out.k);
    out.graph = std::move(red.graph);
    out.k = red.k;
    out.trace.append(red.trace);
    return red.status == ReduceStatus::Ok && out.k >= 0;
  };
  if (!cleanup()) return canonical_no(g.alpha(), std::move(out.trace));

  // A color whose approximate feedback vertex set exceeds 2k cannot be fixed
  // within budget at all.
  auto early_reject = [&]() {
    for (ColorId c = 1; c <= out.graph.alpha(); ++c)
      if (static_cast<int>(two_approx_fvs(ColorView{&out.graph, c}).size()) > 2 * out.k)
        return true;
    return false;
  };
  if (early_reject()) return canonical_no(g.alpha(), std::move(out.trace));

  // Stage one: bound per-color degrees via the flower rule and the expansion
  // rewiring.
  for (bool changed = true; changed;) {
    changed = false;
    int h_bound = options.trigger_fvs_size >= 0 ? options.trigger_fvs_size : 3 * out.k;
    int trigger = std::max(1, h_bound * (out.k + 4));
    for (ColorId c = 1; c <= out.graph.alpha() && !changed; ++c) {
      for (VertexId v : out.graph.vertices()) {
        if (out.graph.degree(v, c) < trigger) continue;
        Certificate cert = flower_or_avoiding_fvs(ColorView{&out.graph, c}, v, out.k, options);
        if (cert.kind == Certificate::Kind::Flower) {
          apply_r6(out.graph, v, c, cert.flower, out.k, out.trace);
          if (out.k < 0 || !cleanup()) return canonical_no(g.alpha(), std::move(out.trace));
          changed = true;
          break;
        }
        if (cert.kind == Certificate::Kind::AvoidingFvs &&
            apply_r7(out.graph, v, c, cert.h_v, out.k, out.trace)) {
          if (!cleanup()) return canonical_no(g.alpha(), std::move(out.trace));
          changed = true;
          break;
        }
      }
    }
  }

  // Stage two: unravel degree-two paths shared between colors. Tuples need at
  // least two real entries; splitting a path out of nothing would only rename
  // a vertex and never terminate.
  long long unravel_cap = 64LL * (initial_vertices + 8) * g.alpha() * g.alpha();
  for (bool changed = true; changed;) {
    changed = false;
    int alpha = out.graph.alpha();
    std::vector<std::vector<std::vector<VertexId>>> paths(alpha);
    for (ColorId c = 1; c <= alpha; ++c) {
      ColorView view{&out.graph, c};
      std::vector<VertexId> s_c = two_approx_fvs(view);
      if (static_cast<int>(s_c.size()) > 2 * out.k)
        return canonical_no(g.alpha(), std::move(out.trace));
      paths[c - 1] = enumerate_deg2_paths(view, s_c);
    }
    // Odometer over path indices, phi last, lexicographic.
    std::vector<int> idx(alpha, 0);
    auto advance = [&]() {
      for (int c = alpha - 1; c >= 0; --c) {
        if (idx[c] < static_cast<int>(paths[c].size())) {
          ++idx[c];
          for (int c2 = c + 1; c2 < alpha; ++c2) idx[c2] = 0;
          return true;
        }
      }
      return false;
    };
    for (bool more = true; more && !changed; more = advance()) {
      PathTuple tuple;
      tuple.entries.resize(alpha);
      int non_phi = 0;
      for (int c = 0; c < alpha; ++c)
        if (idx[c] < static_cast<int>(paths[c].size())) {
          tuple.entries[c] = paths[c][idx[c]];
          ++non_phi;
        }
      if (non_phi < 2) continue;
      const std::vector<VertexId>* first_entry = nullptr;
      for (const auto& entry : tuple.entries)
        if (!entry.empty()) {
          first_entry = &entry;
          break;
        }
      std::vector<VertexId> ic = intercept(*first_entry, tuple);
      if (static_cast<int>(ic.size()) <= 1) continue;
      if (--unravel_cap < 0) throw std::logic_error("unravel failed to terminate");
      unravel(out.graph, *first_entry, tuple, ic.front(), out.trace);
      if (!cleanup()) return canonical_no(g.alpha(), std::move(out.trace));
      changed = true;
    }
  }

  return out;
}

}  // namespace simfvs
