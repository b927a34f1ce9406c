#include "simfvs/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace simfvs {

int PsiInstance::t() const {
  int bits = 0;
  while ((1 << bits) < class_size) ++bits;
  return bits;
}

void PsiInstance::validate() const {
  if (ell < 1) throw std::invalid_argument("pattern needs at least one vertex");
  if (class_size < 2 || (class_size & (class_size - 1)) != 0)
    throw std::invalid_argument("class size must be a power of two, at least 2");
  std::vector<int> deg(ell + 1, 0);
  std::set<std::pair<int, int>> edges;
  for (auto [x, y] : pattern_edges) {
    if (x < 1 || y < 1 || x > ell || y > ell || x >= y)
      throw std::invalid_argument("pattern edge out of range");
    if (!edges.insert({x, y}).second) throw std::invalid_argument("duplicate pattern edge");
    ++deg[x];
    ++deg[y];
  }
  for (int x = 1; x <= ell; ++x)
    if (deg[x] > 3) throw std::invalid_argument("pattern degree above three");
  for (auto [x, jx, y, jy] : host_edges) {
    if (x >= y || !edges.count({x, y}))
      throw std::invalid_argument("host edge between classes without a pattern edge");
    if (jx < 0 || jy < 0 || jx >= class_size || jy >= class_size)
      throw std::invalid_argument("host vertex index out of range");
  }
}

void PsiInstance::pad_to_power_of_two() {
  int target = 2;
  while (target < class_size) target <<= 1;
  class_size = target;
}

namespace {

// Shared cycle construction: one cycle on 2|U| vertices per set, each element
// merged into its odd slots across all the cycles of sets containing it.
GeneratedGraph build_cycles(const SetSystem& sys, const std::vector<ColorId>& set_color,
                            int alpha) {
  int u_count = sys.universe_size;
  if (u_count < 1) throw std::invalid_argument("empty universe");
  auto sets = sys.all_sets();

  std::vector<char> covered(u_count, 0);
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("sets must be nonempty");
    for (ElementId e : s) {
      if (e < 0 || e >= u_count) throw std::invalid_argument("element out of range");
      covered[e] = 1;
    }
  }
  for (int e = 0; e < u_count; ++e)
    if (!covered[e]) throw std::invalid_argument("element belongs to no set");

  EdgeColoredGraph g(alpha);
  int cycle_len = 2 * u_count;
  std::vector<std::vector<VertexId>> cycle_vertices(sets.size());
  for (size_t si = 0; si < sets.size(); ++si) {
    auto& cv = cycle_vertices[si];
    for (int j = 0; j < cycle_len; ++j) cv.push_back(g.add_vertex());
    for (int j = 0; j < cycle_len; ++j)
      g.add_edge(cv[j], cv[(j + 1) % cycle_len], set_color[si], 1);
  }

  // Element vertices plus the merge star onto their cycle slots.
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<VertexId> element_vertex(u_count);
  for (int e = 0; e < u_count; ++e) element_vertex[e] = g.add_vertex();
  for (size_t si = 0; si < sets.size(); ++si)
    for (ElementId e : sets[si]) pairs.push_back({element_vertex[e], cycle_vertices[si][2 * e]});

  EdgeColoredGraph merged = g.contract_zero_edges(pairs);

  // Representatives are minimum ids, so each element ends up at the first
  // cycle slot of the first set containing it.
  std::vector<VertexId> rep(u_count, -1);
  for (int e = 0; e < u_count; ++e) {
    VertexId best = element_vertex[e];
    for (size_t si = 0; si < sets.size(); ++si)
      for (ElementId x : sets[si])
        if (x == e) best = std::min(best, cycle_vertices[si][2 * e]);
    rep[e] = best;
  }
  return {std::move(merged), std::move(rep)};
}

}  // namespace

GeneratedGraph from_hitting_set(const SetSystem& sys) {
  if (sys.num_groups() != 1)
    throw std::invalid_argument("plain hitting set takes a single group");
  int num_sets = sys.num_sets();
  if (num_sets == 0) return {EdgeColoredGraph(1), std::vector<VertexId>(sys.universe_size, -1)};
  std::vector<ColorId> set_color(num_sets);
  for (int i = 0; i < num_sets; ++i) set_color[i] = i + 1;  // one color per set
  return build_cycles(sys, set_color, num_sets);
}

GeneratedGraph phs_to_simfvs(const SetSystem& sys) {
  if (!sys.groups_pairwise_disjoint())
    throw std::invalid_argument("sets within a group must be pairwise disjoint");
  int num_sets = sys.num_sets();
  if (num_sets == 0)
    return {EdgeColoredGraph(std::max(1, sys.num_groups())),
            std::vector<VertexId>(sys.universe_size, -1)};
  std::vector<ColorId> set_color;
  for (int gi = 0; gi < sys.num_groups(); ++gi)
    for (size_t j = 0; j < sys.groups[gi].size(); ++j) set_color.push_back(gi + 1);
  return build_cycles(sys, set_color, sys.num_groups());
}

std::vector<int> edge_coloring_4(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> deg(num_vertices + 1, 0);
  for (auto [x, y] : edges) {
    if (x < 1 || y < 1 || x > num_vertices || y > num_vertices || x == y)
      throw std::invalid_argument("bad edge");
    ++deg[x];
    ++deg[y];
  }
  for (int v = 1; v <= num_vertices; ++v)
    if (deg[v] > 3) throw std::invalid_argument("maximum degree above three");

  std::vector<int> color(edges.size(), 0);
  std::vector<std::set<int>> used(num_vertices + 1);
  std::function<bool(size_t)> place = [&](size_t i) -> bool {
    if (i == edges.size()) return true;
    auto [x, y] = edges[i];
    for (int c = 1; c <= 4; ++c) {
      if (used[x].count(c) || used[y].count(c)) continue;
      color[i] = c;
      used[x].insert(c);
      used[y].insert(c);
      if (place(i + 1)) return true;
      used[x].erase(c);
      used[y].erase(c);
    }
    color[i] = 0;
    return false;
  };
  if (!place(0)) throw std::logic_error("four colors must suffice at maximum degree three");
  return color;
}

SetSystem psi_to_phs(const PsiInstance& psi) {
  psi.validate();
  int t = psi.t();
  int two_t = psi.class_size;

  // Universe: one element per host vertex, then one per host edge.
  auto vertex_element = [&](int x, int j) { return (x - 1) * two_t + j; };
  int vertex_elements = psi.ell * two_t;
  std::map<std::tuple<int, int, int, int>, int> edge_element;
  for (const auto& he : psi.host_edges)
    if (!edge_element.count(he))
      edge_element[he] = vertex_elements + static_cast<int>(edge_element.size());

  SetSystem out;
  out.universe_size = vertex_elements + static_cast<int>(edge_element.size());
  out.k = static_cast<int>(psi.pattern_edges.size()) + psi.ell;

  std::vector<int> pattern_color = edge_coloring_4(psi.ell, psi.pattern_edges);
  std::map<std::pair<int, int>, int> color_of_pair;
  for (size_t i = 0; i < psi.pattern_edges.size(); ++i)
    color_of_pair[psi.pattern_edges[i]] = pattern_color[i];

  // Groups: (pattern edge color, bit position, U or D, orientation) plus one
  // group holding all the Q sets.
  out.groups.assign(16 * t + 1, {});
  auto group_index = [&](int edge_color, int p, bool is_u, bool x_lt_y) {
    return (((edge_color - 1) * t + (p - 1)) * 2 + (is_u ? 0 : 1)) * 2 + (x_lt_y ? 0 : 1);
  };
  auto bit_of = [&](int value, int p) { return (value >> (t - p)) & 1; };  // p=1 is the MSB

  for (auto [gx, gy] : psi.pattern_edges) {
    int edge_color = color_of_pair[{gx, gy}];
    for (auto [x, y] : {std::pair{gx, gy}, std::pair{gy, gx}}) {
      for (int p = 1; p <= t; ++p) {
        std::vector<ElementId> set_u, set_d;
        for (int j = 0; j < two_t; ++j)
          (bit_of(j, p) == 0 ? set_d : set_u).push_back(vertex_element(x, j));
        for (const auto& he : psi.host_edges) {
          auto [hx, jx, hy, jy] = he;
          int x_index;
          if (hx == x && hy == y)
            x_index = jx;
          else if (hy == x && hx == y)
            x_index = jy;
          else
            continue;
          (bit_of(x_index, p) == 0 ? set_u : set_d).push_back(edge_element.at(he));
        }
        out.groups[group_index(edge_color, p, true, x < y)].push_back(std::move(set_u));
        out.groups[group_index(edge_color, p, false, x < y)].push_back(std::move(set_d));
      }
    }
  }

  auto& q_group = out.groups[16 * t];
  for (int x = 1; x <= psi.ell; ++x) {
    std::vector<ElementId> q;
    for (int j = 0; j < two_t; ++j) q.push_back(vertex_element(x, j));
    q_group.push_back(std::move(q));
  }
  for (auto [gx, gy] : psi.pattern_edges) {
    std::vector<ElementId> q;
    for (const auto& [he, id] : edge_element) {
      auto [hx, jx, hy, jy] = he;
      if (hx == gx && hy == gy) q.push_back(id);
    }
    q_group.push_back(std::move(q));
  }

  if (!out.groups_pairwise_disjoint())
    throw std::logic_error("selector groups must be pairwise disjoint");
  return out;
}

bool psi_has_embedding(const PsiInstance& psi) {
  psi.validate();
  std::set<std::tuple<int, int, int, int>> host(psi.host_edges.begin(), psi.host_edges.end());
  std::vector<int> pick(psi.ell + 1, 0);
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x > psi.ell) return true;
    for (int j = 0; j < psi.class_size; ++j) {
      pick[x] = j;
      bool ok = true;
      for (auto [a, b] : psi.pattern_edges) {
        if (b != x || a > x) continue;
        if (!host.count({a, pick[a], b, pick[b]})) {
          ok = false;
          break;
        }
      }
      if (ok && rec(x + 1)) return true;
    }
    return false;
  };
  return rec(1);
}

EdgeColoredGraph random_instance(const RandomInstanceParams& params) {
  if (params.n < 1 || params.alpha < 1 || params.edges_per_color < 0)
    throw std::invalid_argument("instance parameters must be positive");
  std::mt19937_64 rng(params.seed);
  EdgeColoredGraph g(params.alpha, params.n);
  auto pick = [&](int bound) { return static_cast<int>(rng() % bound); };

  if (params.planted_size < 0) {
    for (ColorId c = 1; c <= params.alpha; ++c)
      for (int i = 0; i < params.edges_per_color; ++i) {
        VertexId u = pick(params.n), v = pick(params.n);
        if (g.multiplicity(u, v, c) >= 2) continue;
        g.add_edge(u, v, c, 1);
      }
    return g;
  }

  if (params.planted_size > params.n) throw std::invalid_argument("planted set larger than graph");
  std::vector<VertexId> ids(params.n);
  for (int i = 0; i < params.n; ++i) ids[i] = i;
  for (int i = params.n - 1; i > 0; --i) std::swap(ids[i], ids[pick(i + 1)]);
  std::set<VertexId> planted(ids.begin(), ids.begin() + params.planted_size);

  for (ColorId c = 1; c <= params.alpha; ++c) {
    // Union-find keeps the graph away from the planted set acyclic.
    std::vector<int> uf(params.n);
    for (int i = 0; i < params.n; ++i) uf[i] = i;
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (int i = 0; i < params.edges_per_color; ++i) {
      VertexId u = pick(params.n), v = pick(params.n);
      if (g.multiplicity(u, v, c) >= 2) continue;
      if (!planted.count(u) && !planted.count(v)) {
        if (u == v || find(u) == find(v)) continue;  // would close a free cycle
        uf[find(u)] = find(v);
      }
      g.add_edge(u, v, c, 1);
    }
  }
  return g;
}

PsiInstance random_psi_instance(int ell, int class_size, std::uint64_t seed, bool plant) {
  if (ell < 2) throw std::invalid_argument("pattern needs at least two vertices");
  std::mt19937_64 rng(seed);
  PsiInstance psi;
  psi.ell = ell;
  psi.class_size = class_size;
  psi.pad_to_power_of_two();

  // Connected pattern of maximum degree three: a random spanning path plus a
  // few extra edges.
  std::vector<int> perm(ell);
  for (int i = 0; i < ell; ++i) perm[i] = i + 1;
  for (int i = ell - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
  std::set<std::pair<int, int>> edges;
  std::vector<int> deg(ell + 1, 0);
  for (int i = 0; i + 1 < ell; ++i) {
    int a = std::min(perm[i], perm[i + 1]), b = std::max(perm[i], perm[i + 1]);
    edges.insert({a, b});
    ++deg[a];
    ++deg[b];
  }
  int extra = static_cast<int>(rng() % (ell + 1));
  for (int i = 0; i < extra; ++i) {
    int a = 1 + static_cast<int>(rng() % ell), b = 1 + static_cast<int>(rng() % ell);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (edges.count({a, b}) || deg[a] >= 3 || deg[b] >= 3) continue;
    edges.insert({a, b});
    ++deg[a];
    ++deg[b];
  }
  psi.pattern_edges.assign(edges.begin(), edges.end());

  std::vector<int> embedding(ell + 1, 0);
  if (plant)
    for (int x = 1; x <= ell; ++x) embedding[x] = static_cast<int>(rng() % psi.class_size);

  std::set<std::tuple<int, int, int, int>> host;
  for (auto [x, y] : psi.pattern_edges) {
    int count = 1 + static_cast<int>(rng() % (psi.class_size));
    for (int i = 0; i < count; ++i)
      host.insert({x, static_cast<int>(rng() % psi.class_size), y,
                   static_cast<int>(rng() % psi.class_size)});
    if (plant) host.insert({x, embedding[x], y, embedding[y]});
  }
  psi.host_edges.assign(host.begin(), host.end());
  psi.validate();
  return psi;
}

}  // namespace simfvs
