#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace simfvs {

using VertexId = int;
using ColorId = int;  // colors are 1-based, in 1..alpha

/// Undirected multigraph whose edges carry a color in 1..alpha.
///
/// Multiplicity is stored once per (unordered pair, color); a loop (v,v,i)
/// is stored at (v,v) and contributes 2 per unit to degree(v,i).
/// Vertex ids are dense integers handed out from a free list. Every vertex
/// remembers the original vertex it descends from (origin), so solutions
/// found on rewritten graphs can be mapped back to input ids.
///
/// Value semantics throughout: copying a graph and mutating the copy leaves
/// the source untouched, which is what branching search relies on.
class EdgeColoredGraph {
 public:
  struct Edge {
    VertexId u;
    VertexId v;  // u <= v
    ColorId color;
    int multiplicity;
  };

  explicit EdgeColoredGraph(int alpha);
  EdgeColoredGraph(int alpha, int num_vertices);

  int alpha() const { return alpha_; }

  // -- vertices -------------------------------------------------------------
  VertexId add_vertex();
  VertexId add_vertex_copy_of(VertexId original);
  void remove_vertex(VertexId v);
  bool has_vertex(VertexId v) const {
    return v >= 0 && v < static_cast<VertexId>(alive_.size()) && alive_[v];
  }
  int num_vertices() const { return alive_count_; }
  std::vector<VertexId> vertices() const;  // ascending ids
  VertexId origin(VertexId v) const;

  // -- edges ----------------------------------------------------------------
  void add_edge(VertexId u, VertexId v, ColorId color, int multiplicity = 1);
  /// Removes up to `multiplicity` parallel copies; returns how many were removed.
  int remove_edge(VertexId u, VertexId v, ColorId color, int multiplicity = 1);
  void set_multiplicity(VertexId u, VertexId v, ColorId color, int multiplicity);
  int multiplicity(VertexId u, VertexId v, ColorId color) const;
  long long num_edges() const;  // total multiplicity over all colors
  std::vector<Edge> edges() const;  // sorted by (u, v, color)

  /// Color-i neighbors of v as (neighbor, multiplicity), ascending; includes
  /// v itself when a loop is present.
  const std::vector<std::pair<VertexId, int>>& neighbors(VertexId v, ColorId color) const;

  // -- queries --------------------------------------------------------------
  int degree(VertexId v, ColorId color) const;  // loops count twice
  int total_degree(VertexId v) const;
  bool is_forest(ColorId color) const;
  /// A cycle of the color-i graph: [v] for a loop, [u,v] for a double edge,
  /// otherwise the vertices of a simple cycle in order. Empty optional iff
  /// the color view is a forest.
  std::optional<std::vector<VertexId>> find_cycle(ColorId color) const;
  /// Connected components of the color-i graph induced on `restrict_to`.
  /// Parts are sorted internally and ordered by smallest member.
  std::vector<std::vector<VertexId>> components(ColorId color,
                                                const std::vector<VertexId>& restrict_to) const;

  /// Merges vertex classes given by `pairs` (which must form a forest over the
  /// touched vertices); class representative is the smallest id. Colored edges
  /// are re-attached to representatives, accumulating multiplicities.
  EdgeColoredGraph contract_zero_edges(const std::vector<std::pair<VertexId, VertexId>>& pairs) const;

  /// Graph induced on `keep` (same id space; other vertices dropped).
  EdgeColoredGraph induced_subgraph(const std::vector<VertexId>& keep) const;

 private:
  void check_vertex(VertexId v) const;
  void check_color(ColorId color) const;
  std::vector<std::pair<VertexId, int>>& adj(VertexId v, ColorId color) {
    return adjacency_[v][color - 1];
  }
  const std::vector<std::pair<VertexId, int>>& adj(VertexId v, ColorId color) const {
    return adjacency_[v][color - 1];
  }

  int alpha_;
  int alive_count_ = 0;
  std::vector<char> alive_;
  std::vector<VertexId> origin_;
  std::vector<VertexId> free_list_;
  // adjacency_[v][color-1] = sorted (neighbor, multiplicity); symmetric, loops stored once.
  std::vector<std::vector<std::vector<std::pair<VertexId, int>>>> adjacency_;
};

/// Read-only view of one color class G_i of a parent graph.
struct ColorView {
  const EdgeColoredGraph* graph;
  ColorId color;

  int degree(VertexId v) const { return graph->degree(v, color); }
  const std::vector<std::pair<VertexId, int>>& neighbors(VertexId v) const {
    return graph->neighbors(v, color);
  }
  bool is_forest() const { return graph->is_forest(color); }
  std::optional<std::vector<VertexId>> find_cycle() const { return graph->find_cycle(color); }
};

}  // namespace simfvs
