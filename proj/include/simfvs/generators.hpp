#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "simfvs/graph.hpp"
#include "simfvs/set_system.hpp"

namespace simfvs {

/// Partitioned subgraph isomorphism instance: a host graph whose vertices are
/// colored by pattern indices, and a pattern of maximum degree three. Host
/// classes are edgeless and equal-sized (a power of two); host edges only run
/// between classes joined by a pattern edge.
struct PsiInstance {
  int ell = 0;                                     // pattern vertices 1..ell
  std::vector<std::pair<int, int>> pattern_edges;  // (x, y) with x < y
  int class_size = 0;                              // 2^t per class
  // (x, jx, y, jy): host edge between vertex jx of class x and jy of class y, x < y.
  std::vector<std::tuple<int, int, int, int>> host_edges;

  int t() const;
  void validate() const;
  /// Pads class_size up to the next power of two (at least 2) by adding
  /// isolated host vertices.
  void pad_to_power_of_two();
};

/// Generated graph together with the map from universe elements to the merged
/// vertex representing them.
struct GeneratedGraph {
  EdgeColoredGraph graph;
  std::vector<VertexId> element_vertex;  // 0-based element id -> vertex id
};

/// Plain hitting set to edge-colored graph: one color per set, one cycle on
/// 2|U| vertices per set, elements merged into their cycle slots. The system
/// must consist of a single group; answers at budget k coincide.
GeneratedGraph from_hitting_set(const SetSystem& sys);

/// Partitioned hitting set to edge-colored graph: sets of one group share a
/// color; requires within-group disjointness. Answers at budget k coincide.
GeneratedGraph phs_to_simfvs(const SetSystem& sys);

/// Partitioned subgraph isomorphism to partitioned hitting set with 16t+1
/// groups and budget k' = |E(pattern)| + |V(pattern)| via per-bit selector
/// sets keyed by a proper 4-edge-coloring of the pattern.
SetSystem psi_to_phs(const PsiInstance& psi);

/// Proper edge coloring with at most four colors of a graph with maximum
/// degree three (backtracking; always succeeds by Vizing's bound). Returns
/// one color in 1..4 per edge, in input order.
std::vector<int> edge_coloring_4(int num_vertices, const std::vector<std::pair<int, int>>& edges);

/// Exhaustive check for a colorful pattern embedding; the source-problem
/// ground truth for reduction faithfulness tests.
bool psi_has_embedding(const PsiInstance& psi);

struct RandomInstanceParams {
  int n = 0;
  int alpha = 1;
  int edges_per_color = 0;
  std::uint64_t seed = 0;
  /// >= 0 plants a solution of that size: each color stays acyclic away from
  /// the planted set, cycles only run through it.
  int planted_size = -1;
};

EdgeColoredGraph random_instance(const RandomInstanceParams& params);

/// Random partitioned subgraph isomorphism instance; `plant` wires a valid
/// embedding into the host so the instance is a yes-instance by construction.
PsiInstance random_psi_instance(int ell, int class_size, std::uint64_t seed, bool plant);

}  // namespace simfvs
