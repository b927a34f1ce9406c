#pragma once

#include <optional>
#include <vector>

#include "simfvs/graph.hpp"

namespace simfvs {

enum class TraceEventKind {
  R1Delete,   // isolated vertex removed
  R2EdgeDrop, // pendant color edge removed
  R3Bypass,   // total-degree-2 vertex spliced out
  R4Cap,      // multiplicity capped at 2
  R5Take,     // looped vertex forced into the solution
  R6Take,     // flower-certified vertex forced into the solution
  R7Rewire,   // high-degree rewiring against an avoiding FVS
  R8Unravel,  // shared degree-two path vertex split into per-color copies
};

struct TraceEvent {
  TraceEventKind kind = TraceEventKind::R1Delete;
  VertexId v = -1;
  VertexId u = -1;
  VertexId w = -1;
  ColorId color = 0;
  int old_multiplicity = 0;                            // R4
  std::vector<std::pair<ColorId, VertexId>> copies;    // R8: color -> copy id
  std::vector<std::pair<VertexId, int>> r7_deleted;    // R7: (component vertex, multiplicity)
  std::vector<VertexId> r7_doubled;                    // R7: FVS vertices given double edges
};

/// Forward log of rewrites. Replaying it on the original graph reproduces the
/// reduced one; lift() maps a solution of the reduced instance back to
/// original ids, folding in forced vertices and collapsing unravel copies.
struct ReductionTrace {
  std::vector<TraceEvent> events;

  std::vector<VertexId> forced() const;
  std::vector<VertexId> lift(std::vector<VertexId> solution) const;
  void append(const ReductionTrace& tail);
};

enum class ReduceStatus {
  Ok,
  Infeasible,        // budget went negative
  BranchInfeasible,  // a frozen vertex carries a loop no allowed rule can clear
};

struct ReducedInstance {
  EdgeColoredGraph graph;
  int k;
  std::vector<VertexId> forced;  // vertices committed by R5 during this pass
  ReductionTrace trace;
  ReduceStatus status = ReduceStatus::Ok;
};

/// Applies rules 1..5 exhaustively, always the lowest-numbered applicable one,
/// scanning vertices in ascending id. Vertices in `frozen` are never deleted,
/// bypassed, or taken; an R3 bypass is also skipped when every replacement
/// endpoint is frozen, since the rewrite is only answer-preserving when the
/// spliced vertex can be traded for a deletable neighbor.
ReducedInstance reduce_exhaustive(const EdgeColoredGraph& g, int k,
                                  const std::vector<VertexId>& frozen = {});

/// Finds one application of the given rule (1..5) without performing it;
/// used by rule-level safety tests and by reduce_exhaustive itself.
std::optional<TraceEvent> find_rule(const EdgeColoredGraph& g, int rule,
                                    const std::vector<VertexId>& frozen = {});

/// Performs a single rule application. For R5 the budget is decremented.
void apply_rule(EdgeColoredGraph& g, const TraceEvent& event, int* k = nullptr);

}  // namespace simfvs
