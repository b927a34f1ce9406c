#include "simfvs/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace simfvs {

namespace {

// Sorted-vector map helpers for the per-vertex adjacency rows.
int lookup(const std::vector<std::pair<VertexId, int>>& row, VertexId key) {
  auto it = std::lower_bound(row.begin(), row.end(), key,
                             [](const auto& e, VertexId k) { return e.first < k; });
  if (it == row.end() || it->first != key) return 0;
  return it->second;
}

void store(std::vector<std::pair<VertexId, int>>& row, VertexId key, int value) {
  auto it = std::lower_bound(row.begin(), row.end(), key,
                             [](const auto& e, VertexId k) { return e.first < k; });
  if (it != row.end() && it->first == key) {
    if (value == 0)
      row.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    row.insert(it, {key, value});
  }
}

}  // namespace

EdgeColoredGraph::EdgeColoredGraph(int alpha) : alpha_(alpha) {
  if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
}

EdgeColoredGraph::EdgeColoredGraph(int alpha, int num_vertices) : EdgeColoredGraph(alpha) {
  for (int i = 0; i < num_vertices; ++i) add_vertex();
}

void EdgeColoredGraph::check_vertex(VertexId v) const {
  if (!has_vertex(v)) throw std::invalid_argument("unknown vertex " + std::to_string(v));
}

void EdgeColoredGraph::check_color(ColorId color) const {
  if (color < 1 || color > alpha_)
    throw std::invalid_argument("color " + std::to_string(color) + " out of range 1.." +
                                std::to_string(alpha_));
}

VertexId EdgeColoredGraph::add_vertex() {
  VertexId v;
  if (!free_list_.empty()) {
    v = free_list_.back();
    free_list_.pop_back();
    alive_[v] = 1;
    origin_[v] = v;
  } else {
    v = static_cast<VertexId>(alive_.size());
    alive_.push_back(1);
    origin_.push_back(v);
    adjacency_.emplace_back(alpha_);
  }
  ++alive_count_;
  return v;
}

VertexId EdgeColoredGraph::add_vertex_copy_of(VertexId original) {
  check_vertex(original);
  VertexId o = origin_[original];
  VertexId v = add_vertex();
  origin_[v] = o;
  return v;
}

void EdgeColoredGraph::remove_vertex(VertexId v) {
  check_vertex(v);
  for (ColorId c = 1; c <= alpha_; ++c) {
    for (auto& [u, mult] : adj(v, c)) {
      if (u != v) store(adjacency_[u][c - 1], v, 0);
    }
    adj(v, c).clear();
  }
  alive_[v] = 0;
  --alive_count_;
  free_list_.push_back(v);
}

std::vector<VertexId> EdgeColoredGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(alive_count_);
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

VertexId EdgeColoredGraph::origin(VertexId v) const {
  check_vertex(v);
  return origin_[v];
}

void EdgeColoredGraph::add_edge(VertexId u, VertexId v, ColorId color, int multiplicity) {
  check_vertex(u);
  check_vertex(v);
  check_color(color);
  if (multiplicity <= 0) throw std::invalid_argument("multiplicity must be positive");
  int m = lookup(adj(u, color), v) + multiplicity;
  store(adj(u, color), v, m);
  if (u != v) store(adj(v, color), u, m);
}

int EdgeColoredGraph::remove_edge(VertexId u, VertexId v, ColorId color, int multiplicity) {
  check_vertex(u);
  check_vertex(v);
  check_color(color);
  int have = lookup(adj(u, color), v);
  int removed = std::min(have, multiplicity);
  if (removed > 0) {
    store(adj(u, color), v, have - removed);
    if (u != v) store(adj(v, color), u, have - removed);
  }
  return removed;
}

void EdgeColoredGraph::set_multiplicity(VertexId u, VertexId v, ColorId color, int multiplicity) {
  check_vertex(u);
  check_vertex(v);
  check_color(color);
  if (multiplicity < 0) throw std::invalid_argument("multiplicity must be non-negative");
  store(adj(u, color), v, multiplicity);
  if (u != v) store(adj(v, color), u, multiplicity);
}

int EdgeColoredGraph::multiplicity(VertexId u, VertexId v, ColorId color) const {
  check_vertex(u);
  check_vertex(v);
  check_color(color);
  return lookup(adj(u, color), v);
}

long long EdgeColoredGraph::num_edges() const {
  long long total = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v) {
    if (!alive_[v]) continue;
    for (ColorId c = 1; c <= alpha_; ++c)
      for (const auto& [u, mult] : adj(v, c))
        if (u >= v) total += mult;
  }
  return total;
}

std::vector<EdgeColoredGraph::Edge> EdgeColoredGraph::edges() const {
  std::vector<Edge> out;
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v) {
    if (!alive_[v]) continue;
    for (ColorId c = 1; c <= alpha_; ++c)
      for (const auto& [u, mult] : adj(v, c))
        if (u >= v) out.push_back({v, u, c, mult});
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.color) < std::tie(b.u, b.v, b.color);
  });
  return out;
}

const std::vector<std::pair<VertexId, int>>& EdgeColoredGraph::neighbors(VertexId v,
                                                                         ColorId color) const {
  check_vertex(v);
  check_color(color);
  return adj(v, color);
}

int EdgeColoredGraph::degree(VertexId v, ColorId color) const {
  check_vertex(v);
  check_color(color);
  int d = 0;
  for (const auto& [u, mult] : adj(v, color)) d += (u == v) ? 2 * mult : mult;
  return d;
}

int EdgeColoredGraph::total_degree(VertexId v) const {
  check_vertex(v);
  int d = 0;
  for (ColorId c = 1; c <= alpha_; ++c) d += degree(v, c);
  return d;
}

bool EdgeColoredGraph::is_forest(ColorId color) const {
  return !find_cycle(color).has_value();
}

std::optional<std::vector<VertexId>> EdgeColoredGraph::find_cycle(ColorId color) const {
  check_color(color);
  // Loops and double edges are cycles of length 1 and 2.
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v) {
    if (!alive_[v]) continue;
    for (const auto& [u, mult] : adj(v, color)) {
      if (u == v) return std::vector<VertexId>{v};
      if (mult >= 2 && u > v) return std::vector<VertexId>{v, u};
    }
  }
  // BFS per component; a visited non-parent neighbor closes a cycle, which we
  // rebuild by walking both parent chains back to their junction.
  std::vector<char> seen(alive_.size(), 0);
  std::vector<VertexId> parent(alive_.size(), -1);
  for (VertexId root = 0; root < static_cast<VertexId>(alive_.size()); ++root) {
    if (!alive_[root] || seen[root]) continue;
    std::vector<VertexId> queue{root};
    seen[root] = 1;
    parent[root] = -1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId v = queue[qi];
      for (const auto& [u, mult] : adj(v, color)) {
        if (u == parent[v]) continue;
        if (seen[u]) {
          std::vector<VertexId> cv, cu;
          for (VertexId x = v; x != -1; x = parent[x]) cv.push_back(x);
          for (VertexId x = u; x != -1; x = parent[x]) cu.push_back(x);
          while (cv.size() > 1 && cu.size() > 1 && cv[cv.size() - 2] == cu[cu.size() - 2]) {
            cv.pop_back();
            cu.pop_back();
          }
          // cv = v..j, cu = u..j; stitch v..j..u into one simple cycle.
          cu.pop_back();
          std::reverse(cu.begin(), cu.end());
          cv.insert(cv.end(), cu.begin(), cu.end());
          return cv;
        }
        seen[u] = 1;
        parent[u] = v;
        queue.push_back(u);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<VertexId>> EdgeColoredGraph::components(
    ColorId color, const std::vector<VertexId>& restrict_to) const {
  check_color(color);
  for (VertexId v : restrict_to) check_vertex(v);
  std::vector<char> in_set(alive_.size(), 0);
  for (VertexId v : restrict_to) in_set[v] = 1;

  std::vector<char> seen(alive_.size(), 0);
  std::vector<std::vector<VertexId>> parts;
  std::vector<VertexId> order = restrict_to;
  std::sort(order.begin(), order.end());
  for (VertexId start : order) {
    if (seen[start]) continue;
    std::vector<VertexId> part;
    std::vector<VertexId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (const auto& [u, mult] : adj(v, color)) {
        if (u == v || !in_set[u] || seen[u]) continue;
        seen[u] = 1;
        stack.push_back(u);
      }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;
}

EdgeColoredGraph EdgeColoredGraph::contract_zero_edges(
    const std::vector<std::pair<VertexId, VertexId>>& pairs) const {
  for (const auto& [a, b] : pairs) {
    check_vertex(a);
    check_vertex(b);
  }
  // Union-find; merging an already-joined pair would close a cycle in the
  // merge graph, which the caller promised not to do.
  std::vector<VertexId> rep(alive_.size());
  for (size_t i = 0; i < rep.size(); ++i) rep[i] = static_cast<VertexId>(i);
  auto find = [&](VertexId x) {
    while (rep[x] != x) {
      rep[x] = rep[rep[x]];
      x = rep[x];
    }
    return x;
  };
  for (const auto& [a, b] : pairs) {
    VertexId ra = find(a), rb = find(b);
    if (ra == rb) throw std::invalid_argument("contraction pairs do not form a merge forest");
    // Smaller id wins so representatives are deterministic.
    if (ra < rb)
      rep[rb] = ra;
    else
      rep[ra] = rb;
  }

  EdgeColoredGraph out(alpha_);
  // Recreate the id space: representatives and untouched vertices keep their
  // ids, which requires materializing every id up to the current maximum.
  out.alive_.assign(alive_.size(), 0);
  out.origin_.assign(origin_.begin(), origin_.end());
  out.adjacency_.assign(alive_.size(), std::vector<std::vector<std::pair<VertexId, int>>>(alpha_));
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v) {
    if (alive_[v] && find(v) == v) {
      out.alive_[v] = 1;
      ++out.alive_count_;
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v) {
    if (!out.alive_[v]) out.free_list_.push_back(v);
  }
  for (const Edge& e : edges()) {
    VertexId u = find(e.u), v = find(e.v);
    out.add_edge(std::min(u, v), std::max(u, v), e.color, e.multiplicity);
  }
  return out;
}

EdgeColoredGraph EdgeColoredGraph::induced_subgraph(const std::vector<VertexId>& keep) const {
  for (VertexId v : keep) check_vertex(v);
  std::vector<char> in_keep(alive_.size(), 0);
  for (VertexId v : keep) in_keep[v] = 1;
  EdgeColoredGraph out(alpha_);
  out.alive_.assign(alive_.size(), 0);
  out.origin_.assign(origin_.begin(), origin_.end());
  out.adjacency_.assign(alive_.size(), std::vector<std::vector<std::pair<VertexId, int>>>(alpha_));
  for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v) {
    if (alive_[v] && in_keep[v]) {
      out.alive_[v] = 1;
      ++out.alive_count_;
    } else {
      out.free_list_.push_back(v);
    }
  }
  for (const Edge& e : edges()) {
    if (in_keep[e.u] && in_keep[e.v]) out.add_edge(e.u, e.v, e.color, e.multiplicity);
  }
  return out;
}

}  // namespace simfvs
