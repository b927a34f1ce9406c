#pragma once

#include <optional>
#include <vector>

#include "simfvs/graph.hpp"
#include "simfvs/reductions.hpp"

namespace simfvs {

/// One node of the disjoint search: a graph, an undeletable set W that is a
/// simultaneous feedback vertex set of it, the remaining budget, and per-color
/// families of special cycles whose edges were already cut out of the graph.
/// Cycles within one family are pairwise vertex-disjoint.
struct DisjointInstance {
  EdgeColoredGraph graph;
  std::vector<VertexId> w;  // sorted ascending
  int k = 0;
  std::vector<std::vector<std::vector<VertexId>>> cycles;  // [color-1][j] = sorted vertex set

  bool w_is_alpha_forest() const;
};

/// Branching witness: a cordate vertex of a per-color forest together with the
/// two attachment vertices in its subtree and the paths connecting them.
/// Interior path vertices have degree exactly two in the color graph; v_c has
/// maximum depth among cordate vertices. same_component tells whether the two
/// attachments reach one component of the color graph induced on W.
struct CordateWitness {
  ColorId color = 0;
  VertexId v_c = -1;
  VertexId u_c = -1;
  VertexId w_c = -1;
  std::vector<VertexId> path_p;        // u_c .. v_c inclusive (may be just {v_c})
  std::vector<VertexId> path_p_prime;  // v_c .. w_c inclusive (may be just {v_c})
  bool same_component = false;
};

/// Potential function driving the branch analysis: alpha*k plus the component
/// counts of each color graph induced on W, minus the special cycle counts.
/// The alpha=2 variant halves the component contribution. Values are kept in
/// half-units so both variants stay integral.
struct Measure {
  static long long half_value(const DisjointInstance& inst, bool alpha2_variant);
};

/// Per-branch instrumentation counters. `violations` counts branch edges whose
/// measure deltas differ from the declared amounts (take: alpha minus purged
/// cycles, exactly; isolate: exactly one; move-to-W: component count of the
/// branch color must drop by at least one).
struct MeasureStats {
  long long branch_edges = 0;
  long long take_branches = 0;
  long long isolate_branches = 0;
  long long move_branches = 0;
  long long violations = 0;
  // Move-to-W branches where the full measure failed to drop; the branch-color
  // component count still dropped (asserted), other colors just grew more.
  long long move_full_measure_non_drops = 0;
  long long max_depth = 0;
};

struct SolverOptions {
  bool use_matching_base_for_two_colors = true;
  MeasureStats* stats = nullptr;  // optional instrumentation sink
};

/// Deepest cordate vertex of the color-i forest on V(G) minus W, with its
/// witness paths; absent when no vertex qualifies. Trees are rooted at their
/// minimum-id vertex and depth is distance from the root.
std::optional<CordateWitness> find_cordate(const DisjointInstance& inst, ColorId color);

/// Exact minimum hitting set over the cycle families via subset dynamic
/// programming on the family mask; returns it when its size is within k.
std::optional<std::vector<VertexId>> base_hitting_set(
    const std::vector<std::vector<std::vector<VertexId>>>& cycles, int k);

/// Two-color base case: one vertex per cycle pair sharing a vertex (maximum
/// bipartite matching), one arbitrary vertex per unmatched cycle.
std::optional<std::vector<VertexId>> base_matching_alpha2(
    const std::vector<std::vector<VertexId>>& c1, const std::vector<std::vector<VertexId>>& c2,
    int k);

/// Decides whether some X inside V(G) minus W of size <= k hits every
/// monochromatic cycle of the graph and every recorded special cycle; returns
/// such an X when it exists.
std::optional<std::vector<VertexId>> disjoint_solve(DisjointInstance inst,
                                                    const SolverOptions& options = {});

/// Compression step: w_plus is a simultaneous feedback vertex set of size k+1;
/// guesses its intersection with a hypothetical size-k solution and delegates
/// the rest to disjoint_solve.
std::optional<std::vector<VertexId>> compress(const EdgeColoredGraph& g,
                                              const std::vector<VertexId>& w_plus, int k,
                                              const SolverOptions& options = {});

/// Full decision + search via iterative compression over vertices in
/// ascending id. Returns a verified solution of size <= k or absent.
std::optional<std::vector<VertexId>> solve(const EdgeColoredGraph& g, int k,
                                           const SolverOptions& options = {});

}  // namespace simfvs
