#include "simfvs/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "simfvs/oracle.hpp"

namespace simfvs {

bool DisjointInstance::w_is_alpha_forest() const {
  EdgeColoredGraph sub = graph.induced_subgraph(w);
  for (ColorId c = 1; c <= graph.alpha(); ++c)
    if (!sub.is_forest(c)) return false;
  return true;
}

long long Measure::half_value(const DisjointInstance& inst, bool alpha2_variant) {
  int alpha = inst.graph.alpha();
  long long eta_sum = 0;
  for (ColorId c = 1; c <= alpha; ++c)
    eta_sum += static_cast<long long>(inst.graph.components(c, inst.w).size());
  long long cycles = 0;
  for (const auto& family : inst.cycles) cycles += static_cast<long long>(family.size());
  if (alpha2_variant) {
    if (alpha != 2) throw std::invalid_argument("two-color measure needs alpha == 2");
    return 4LL * inst.k + eta_sum - 2 * cycles;
  }
  return 2LL * alpha * inst.k + 2 * eta_sum - 2 * cycles;
}

namespace {

std::vector<char> make_mask(size_t size_hint, const std::vector<VertexId>& verts) {
  std::vector<char> mask(size_hint, 0);
  for (VertexId v : verts) {
    if (static_cast<size_t>(v) >= mask.size()) mask.resize(v + 1, 0);
    mask[v] = 1;
  }
  return mask;
}

int purge_cycles(std::vector<std::vector<std::vector<VertexId>>>& cycles,
                 const std::vector<VertexId>& taken) {
  if (taken.empty()) return 0;
  std::set<VertexId> t(taken.begin(), taken.end());
  int purged = 0;
  for (auto& family : cycles) {
    auto it = std::remove_if(family.begin(), family.end(), [&](const std::vector<VertexId>& c) {
      return std::any_of(c.begin(), c.end(), [&](VertexId v) { return t.count(v) > 0; });
    });
    purged += static_cast<int>(family.end() - it);
    family.erase(it, family.end());
  }
  return purged;
}

}  // namespace

std::optional<CordateWitness> find_cordate(const DisjointInstance& inst, ColorId color) {
  const EdgeColoredGraph& g = inst.graph;
  std::vector<char> in_w = make_mask(0, inst.w);
  auto frozen = [&](VertexId v) { return static_cast<size_t>(v) < in_w.size() && in_w[v]; };

  std::vector<VertexId> f_vertices;
  for (VertexId v : g.vertices())
    if (!frozen(v)) f_vertices.push_back(v);
  if (f_vertices.empty()) return std::nullopt;

  // Per-vertex data over the forest F_i = G_i minus W.
  std::map<VertexId, int> attach_edges;  // color edges into W, counting multiplicity
  std::map<VertexId, int> f_degree;
  for (VertexId v : f_vertices) {
    int att = 0, deg = 0;
    for (const auto& [u, mult] : g.neighbors(v, color)) {
      if (u == v) continue;  // loops never survive the reductions
      if (frozen(u))
        att += mult;
      else
        deg += mult;
    }
    attach_edges[v] = att;
    f_degree[v] = deg;
  }

  // Root every tree at its minimum-id vertex; record parent and depth.
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, int> depth;
  std::map<VertexId, std::vector<VertexId>> children;
  std::vector<VertexId> order;  // BFS order, roots first
  std::set<VertexId> seen;
  for (VertexId root : f_vertices) {
    if (seen.count(root)) continue;
    seen.insert(root);
    parent[root] = -1;
    depth[root] = 0;
    std::vector<VertexId> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId v = queue[qi];
      order.push_back(v);
      for (const auto& [u, mult] : g.neighbors(v, color)) {
        if (u == v || frozen(u) || seen.count(u)) continue;
        seen.insert(u);
        parent[u] = v;
        depth[u] = depth[v] + 1;
        children[v].push_back(u);
        queue.push_back(u);
      }
    }
  }

  // Count attached vertices per subtree, bottom-up.
  std::map<VertexId, int> subtree_attached;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId v = *it;
    int cnt = attach_edges[v] >= 1 ? 1 : 0;
    for (VertexId c : children[v]) cnt += subtree_attached[c];
    subtree_attached[v] = cnt;
  }

  VertexId best = -1;
  for (VertexId v : f_vertices) {
    bool leaf_rule = f_degree[v] <= 1 && attach_edges[v] >= 2;
    bool subtree_rule = subtree_attached[v] >= 2;
    if (!leaf_rule && !subtree_rule) continue;
    if (best == -1 || depth[v] > depth[best] || (depth[v] == depth[best] && v < best)) best = v;
  }
  if (best == -1) return std::nullopt;

  CordateWitness wit;
  wit.color = color;
  wit.v_c = best;

  // Attached vertices inside the subtree of v_c, ascending.
  std::vector<VertexId> attached;
  {
    std::vector<VertexId> stack{best};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      if (attach_edges[v] >= 1) attached.push_back(v);
      for (VertexId c : children[v]) stack.push_back(c);
    }
    std::sort(attached.begin(), attached.end());
  }

  if (attach_edges[best] >= 2) {
    wit.u_c = wit.w_c = best;
  } else if (attach_edges[best] == 1) {
    wit.u_c = best;
    wit.w_c = -1;
    for (VertexId v : attached)
      if (v != best) {
        wit.w_c = v;
        break;
      }
  } else {
    if (attached.size() < 2) throw std::logic_error("cordate vertex without two attachments");
    wit.u_c = attached[0];
    wit.w_c = attached[1];
  }
  if (wit.u_c == -1 || wit.w_c == -1) throw std::logic_error("cordate witness incomplete");

  auto path_to_vc = [&](VertexId from) {
    std::vector<VertexId> path;
    for (VertexId x = from; x != -1 && x != best; x = parent[x]) path.push_back(x);
    path.push_back(best);
    return path;  // from .. v_c
  };
  wit.path_p = path_to_vc(wit.u_c);
  wit.path_p_prime = path_to_vc(wit.w_c);
  std::reverse(wit.path_p_prime.begin(), wit.path_p_prime.end());  // v_c .. w_c

  // Attachments land in the same component of the color graph induced on W?
  auto comps = g.components(color, inst.w);
  std::map<VertexId, int> comp_of;
  for (size_t i = 0; i < comps.size(); ++i)
    for (VertexId v : comps[i]) comp_of[v] = static_cast<int>(i);
  if (wit.u_c == wit.w_c) {
    std::map<int, int> edges_into;
    for (const auto& [u, mult] : g.neighbors(wit.u_c, color))
      if (u != wit.u_c && frozen(u)) edges_into[comp_of[u]] += mult;
    wit.same_component = std::any_of(edges_into.begin(), edges_into.end(),
                                     [](const auto& e) { return e.second >= 2; });
  } else {
    std::set<int> from_u, from_w;
    for (const auto& [u, mult] : g.neighbors(wit.u_c, color))
      if (u != wit.u_c && frozen(u)) from_u.insert(comp_of[u]);
    for (const auto& [u, mult] : g.neighbors(wit.w_c, color))
      if (u != wit.w_c && frozen(u)) from_w.insert(comp_of[u]);
    wit.same_component = std::any_of(from_u.begin(), from_u.end(),
                                     [&](int c) { return from_w.count(c) > 0; });
  }
  return wit;
}

std::optional<std::vector<VertexId>> base_hitting_set(
    const std::vector<std::vector<std::vector<VertexId>>>& cycles, int k) {
  if (k < 0) return std::nullopt;
  std::vector<std::vector<VertexId>> families;
  for (const auto& per_color : cycles)
    for (const auto& c : per_color) families.push_back(c);
  if (families.empty()) return std::vector<VertexId>{};
  int m = static_cast<int>(families.size());
  if (m > 26) throw std::invalid_argument("hitting set family too large for subset DP");
  for (const auto& f : families)
    if (f.empty()) return std::nullopt;

  std::vector<VertexId> universe;
  for (const auto& f : families) universe.insert(universe.end(), f.begin(), f.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::map<VertexId, int> index_of;
  for (size_t i = 0; i < universe.size(); ++i) index_of[universe[i]] = static_cast<int>(i);
  std::vector<unsigned> hits(universe.size(), 0);
  for (int j = 0; j < m; ++j)
    for (VertexId v : families[j]) hits[index_of[v]] |= 1u << j;

  // dp over the mask of already-hit families; expand the lowest unhit one.
  unsigned full = (m == 32) ? ~0u : (1u << m) - 1;
  std::vector<int> dp(full + 1, -1);
  std::vector<int> choice(full + 1, -1);
  std::vector<unsigned> prev(full + 1, 0);
  dp[0] = 0;
  for (unsigned mask = 0; mask <= full; ++mask) {
    if (dp[mask] < 0 || mask == full) continue;
    int j = 0;
    while (mask & (1u << j)) ++j;
    for (VertexId v : families[j]) {
      unsigned next = mask | hits[index_of[v]];
      if (dp[next] < 0 || dp[next] > dp[mask] + 1) {
        dp[next] = dp[mask] + 1;
        choice[next] = index_of[v];
        prev[next] = mask;
      }
    }
  }
  if (dp[full] < 0 || dp[full] > k) return std::nullopt;
  std::vector<VertexId> out;
  for (unsigned mask = full; mask != 0; mask = prev[mask]) out.push_back(universe[choice[mask]]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<VertexId>> base_matching_alpha2(
    const std::vector<std::vector<VertexId>>& c1, const std::vector<std::vector<VertexId>>& c2,
    int k) {
  if (k < 0) return std::nullopt;
  for (const auto* family : {&c1, &c2}) {
    std::set<VertexId> seen;
    for (const auto& cycle : *family) {
      if (cycle.empty()) return std::nullopt;  // unhittable
      for (VertexId v : cycle) {
        if (seen.count(v))
          throw std::invalid_argument("cycles within one family must be vertex-disjoint");
        seen.insert(v);
      }
    }
  }
  int n1 = static_cast<int>(c1.size());
  int n2 = static_cast<int>(c2.size());

  // One vertex per cycle; edge when the underlying cycles share a vertex.
  std::vector<std::vector<int>> adj(n1);
  std::vector<std::vector<VertexId>> shared(static_cast<size_t>(n1) * std::max(n2, 1));
  for (int x = 0; x < n1; ++x) {
    std::set<VertexId> sx(c1[x].begin(), c1[x].end());
    for (int y = 0; y < n2; ++y) {
      std::vector<VertexId> common;
      for (VertexId v : c2[y])
        if (sx.count(v)) common.push_back(v);
      if (!common.empty()) {
        adj[x].push_back(y);
        std::sort(common.begin(), common.end());
        shared[static_cast<size_t>(x) * n2 + y] = common;
      }
    }
  }

  // Augmenting-path maximum matching.
  std::vector<int> match_right(n2, -1), match_left(n1, -1);
  std::vector<char> visited;
  std::function<bool(int)> try_augment = [&](int x) -> bool {
    for (int y : adj[x]) {
      if (visited[y]) continue;
      visited[y] = 1;
      if (match_right[y] == -1 || try_augment(match_right[y])) {
        match_right[y] = x;
        match_left[x] = y;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int x = 0; x < n1; ++x) {
    visited.assign(n2, 0);
    if (try_augment(x)) ++matched;
  }

  int unmatched = (n1 - matched) + (n2 - matched);
  if (matched + unmatched > k) return std::nullopt;
  std::vector<VertexId> out;
  for (int x = 0; x < n1; ++x) {
    if (match_left[x] != -1)
      out.push_back(shared[static_cast<size_t>(x) * n2 + match_left[x]].front());
    else
      out.push_back(*std::min_element(c1[x].begin(), c1[x].end()));
  }
  for (int y = 0; y < n2; ++y)
    if (match_right[y] == -1) out.push_back(*std::min_element(c2[y].begin(), c2[y].end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct BranchContext {
  const SolverOptions* options;
  bool alpha2_variant;
};

std::optional<std::vector<VertexId>> disjoint_rec(DisjointInstance inst, const BranchContext& ctx,
                                                  int depth);

// Runs one child branch with measure bookkeeping. `expected_half` is the exact
// required drop in half-units, or 0 combined with `move_color` for the
// move-to-W rule where only the branch color's component count is pinned.
std::optional<std::vector<VertexId>> run_branch(const DisjointInstance& parent,
                                                DisjointInstance child, const BranchContext& ctx,
                                                int depth, long long parent_half,
                                                long long expected_half, char branch_kind,
                                                ColorId move_color) {
  if (MeasureStats* stats = ctx.options->stats) {
    ++stats->branch_edges;
    long long child_half = Measure::half_value(child, ctx.alpha2_variant);
    long long delta = child_half - parent_half;
    if (branch_kind == 't') {
      ++stats->take_branches;
      if (delta != expected_half) ++stats->violations;
    } else if (branch_kind == 'i') {
      ++stats->isolate_branches;
      if (delta != expected_half) ++stats->violations;
    } else {
      ++stats->move_branches;
      long long eta_parent =
          static_cast<long long>(parent.graph.components(move_color, parent.w).size());
      long long eta_child =
          static_cast<long long>(child.graph.components(move_color, child.w).size());
      if (eta_child - eta_parent > -1) ++stats->violations;
      if (delta >= 0) ++stats->move_full_measure_non_drops;
    }
  }
  return disjoint_rec(std::move(child), ctx, depth + 1);
}

std::optional<std::vector<VertexId>> disjoint_rec(DisjointInstance inst, const BranchContext& ctx,
                                                  int depth) {
  if (MeasureStats* stats = ctx.options->stats)
    stats->max_depth = std::max<long long>(stats->max_depth, depth);
  if (inst.k < 0) return std::nullopt;

  ReducedInstance red = reduce_exhaustive(inst.graph, inst.k, inst.w);
  if (red.status != ReduceStatus::Ok) return std::nullopt;
  inst.graph = std::move(red.graph);
  inst.k = red.k;
  std::vector<VertexId> taken = red.forced;
  purge_cycles(inst.cycles, red.forced);

  if (inst.k < 0) return std::nullopt;
  for (const auto& family : inst.cycles)
    if (static_cast<int>(family.size()) > inst.k) return std::nullopt;
  if (!inst.w_is_alpha_forest()) return std::nullopt;

  int alpha = inst.graph.alpha();
  ColorId branch_color = 0;
  for (ColorId c = 1; c <= alpha && !branch_color; ++c)
    if (!inst.graph.is_forest(c)) branch_color = c;

  if (!branch_color) {
    // Every color graph is a forest; only the recorded special cycles remain.
    // W vertices can never enter the solution, so they are stripped from the
    // hittable sets; a cycle left with no free vertex kills the branch.
    std::vector<char> in_w = make_mask(0, inst.w);
    auto strip = [&](const std::vector<VertexId>& c) {
      std::vector<VertexId> out;
      for (VertexId v : c)
        if (static_cast<size_t>(v) >= in_w.size() || !in_w[v]) out.push_back(v);
      return out;
    };
    std::vector<std::vector<std::vector<VertexId>>> free_cycles(inst.cycles.size());
    for (size_t i = 0; i < inst.cycles.size(); ++i)
      for (const auto& c : inst.cycles[i]) free_cycles[i].push_back(strip(c));

    std::optional<std::vector<VertexId>> hit;
    if (alpha == 2 && ctx.options->use_matching_base_for_two_colors)
      hit = base_matching_alpha2(free_cycles[0], free_cycles[1], inst.k);
    else
      hit = base_hitting_set(free_cycles, inst.k);
    if (!hit) return std::nullopt;
    taken.insert(taken.end(), hit->begin(), hit->end());
    std::sort(taken.begin(), taken.end());
    return taken;
  }

  auto wit = find_cordate(inst, branch_color);
  if (!wit)
    throw std::logic_error("color graph has a cycle but no cordate vertex exists");

  long long parent_half = 0;
  if (ctx.options->stats) parent_half = Measure::half_value(inst, ctx.alpha2_variant);

  // Branch: the cordate vertex joins the solution.
  {
    DisjointInstance child = inst;
    child.graph.remove_vertex(wit->v_c);
    child.k -= 1;
    int purged = purge_cycles(child.cycles, {wit->v_c});
    long long expected = -2LL * alpha + 2 * purged;
    if (auto r = run_branch(inst, std::move(child), ctx, depth, parent_half, expected, 't', 0)) {
      r->push_back(wit->v_c);
      r->insert(r->end(), taken.begin(), taken.end());
      std::sort(r->begin(), r->end());
      return r;
    }
  }

  // Branches: some interior vertex of one path side joins the solution. The
  // side is cut out of the color graph and kept as a special cycle.
  auto isolate = [&](const std::vector<VertexId>& path,
                     bool drop_first) -> std::optional<std::vector<VertexId>> {
    DisjointInstance child = inst;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      child.graph.remove_edge(path[i], path[i + 1], branch_color, 1);
    std::vector<VertexId> cycle(path.begin() + (drop_first ? 1 : 0),
                                path.end() - (drop_first ? 0 : 1));
    std::sort(cycle.begin(), cycle.end());
    // Members of earlier special cycles have no edges left in this color, so
    // they can never reappear on a path.
    for (const auto& previous : child.cycles[branch_color - 1])
      for (VertexId v : previous)
        if (std::binary_search(cycle.begin(), cycle.end(), v))
          throw std::logic_error("special cycles of one color must stay vertex-disjoint");
    child.cycles[branch_color - 1].push_back(std::move(cycle));
    return run_branch(inst, std::move(child), ctx, depth, parent_half, -2, 'i', 0);
  };
  if (wit->path_p.size() >= 2) {
    if (auto r = isolate(wit->path_p, /*drop_first=*/false)) {
      r->insert(r->end(), taken.begin(), taken.end());
      std::sort(r->begin(), r->end());
      return r;
    }
  }
  if (wit->path_p_prime.size() >= 2) {
    if (auto r = isolate(wit->path_p_prime, /*drop_first=*/true)) {
      r->insert(r->end(), taken.begin(), taken.end());
      std::sort(r->begin(), r->end());
      return r;
    }
  }

  // Branch: no path vertex joins the solution; the whole path becomes
  // undeletable. Only sound when both attachments sit in distinct components,
  // and skipped when it would close a cycle inside W.
  if (!wit->same_component) {
    DisjointInstance child = inst;
    std::set<VertexId> new_w(child.w.begin(), child.w.end());
    new_w.insert(wit->path_p.begin(), wit->path_p.end());
    new_w.insert(wit->path_p_prime.begin(), wit->path_p_prime.end());
    child.w.assign(new_w.begin(), new_w.end());
    if (child.w_is_alpha_forest()) {
      if (auto r =
              run_branch(inst, std::move(child), ctx, depth, parent_half, 0, 'm', branch_color)) {
        r->insert(r->end(), taken.begin(), taken.end());
        std::sort(r->begin(), r->end());
        return r;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<VertexId>> disjoint_solve(DisjointInstance inst,
                                                    const SolverOptions& options) {
  inst.cycles.resize(inst.graph.alpha());
  BranchContext ctx{&options,
                    inst.graph.alpha() == 2 && options.use_matching_base_for_two_colors};
  return disjoint_rec(std::move(inst), ctx, 0);
}

std::optional<std::vector<VertexId>> compress(const EdgeColoredGraph& g,
                                              const std::vector<VertexId>& w_plus, int k,
                                              const SolverOptions& options) {
  if (static_cast<int>(w_plus.size()) != k + 1)
    throw std::invalid_argument("compression needs |w_plus| == k + 1");
  if (k >= 30) throw std::invalid_argument("budget too large for subset enumeration");
  if (!verify_solution(g, w_plus))
    throw std::invalid_argument("w_plus is not a simultaneous feedback vertex set");

  int m = static_cast<int>(w_plus.size());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<VertexId> y, rest;
    for (int i = 0; i < m; ++i)
      (mask & (1u << i) ? y : rest).push_back(w_plus[i]);
    if (static_cast<int>(y.size()) > k) continue;

    std::vector<VertexId> keep;
    std::set<VertexId> drop(y.begin(), y.end());
    for (VertexId v : g.vertices())
      if (!drop.count(v)) keep.push_back(v);
    DisjointInstance inst{g.induced_subgraph(keep), rest, k - static_cast<int>(y.size()),
                          std::vector<std::vector<std::vector<VertexId>>>(g.alpha())};
    std::sort(inst.w.begin(), inst.w.end());
    if (!inst.w_is_alpha_forest()) continue;
    if (auto r = disjoint_solve(std::move(inst), options)) {
      r->insert(r->end(), y.begin(), y.end());
      std::sort(r->begin(), r->end());
      return r;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<VertexId>> solve(const EdgeColoredGraph& g, int k,
                                           const SolverOptions& options) {
  if (k < 0) return std::nullopt;
  ReducedInstance red = reduce_exhaustive(g, k);
  if (red.status != ReduceStatus::Ok) return std::nullopt;

  std::vector<VertexId> ids = red.graph.vertices();
  std::vector<VertexId> solution;
  std::vector<VertexId> prefix;
  for (VertexId v : ids) {
    prefix.push_back(v);
    EdgeColoredGraph sub = red.graph.induced_subgraph(prefix);
    if (verify_solution(sub, solution)) continue;
    solution.push_back(v);
    if (static_cast<int>(solution.size()) <= red.k) continue;
    auto compressed = compress(sub, solution, red.k, options);
    if (!compressed) return std::nullopt;
    solution = *compressed;
  }
  return red.trace.lift(solution);
}

}  // namespace simfvs
