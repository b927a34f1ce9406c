#pragma once

#include <optional>
#include <vector>

#include "simfvs/graph.hpp"
#include "simfvs/set_system.hpp"

namespace simfvs {

/// Exhaustive ground truth for small instances. `min_size` is absent when no
/// solution within the cap exists; the witness never touches `avoid`.
struct OracleResult {
  std::optional<int> min_size;
  std::vector<VertexId> witness;
};

/// True iff every color view of g minus s is a forest.
bool verify_solution(const EdgeColoredGraph& g, const std::vector<VertexId>& s);

/// Exact minimum simultaneous feedback vertex set by subset enumeration in
/// increasing cardinality. Refuses graphs beyond the desk-scale bound.
OracleResult brute_force_min_simfvs(const EdgeColoredGraph& g, int cap,
                                    const std::vector<VertexId>& avoid = {});

/// Exact minimum hitting set of all families in the system, if one of size
/// <= cap exists.
std::optional<std::vector<int>> brute_force_hitting_set(const SetSystem& sys, int cap);

}  // namespace simfvs
