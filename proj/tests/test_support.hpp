#pragma once

#include <optional>
#include <vector>

#include "simfvs/generators.hpp"
#include "simfvs/graph.hpp"
#include "simfvs/oracle.hpp"

namespace simfvs::testing {

inline EdgeColoredGraph random_graph(int n, int alpha, int edges_per_color, std::uint64_t seed) {
  return random_instance({n, alpha, edges_per_color, seed, -1});
}

inline std::optional<int> oracle_min(const EdgeColoredGraph& g,
                                     const std::vector<VertexId>& avoid = {}) {
  OracleResult r = brute_force_min_simfvs(g, g.num_vertices(), avoid);
  return r.min_size;
}

inline bool oracle_yes(const EdgeColoredGraph& g, int k,
                       const std::vector<VertexId>& avoid = {}) {
  if (k < 0) return false;
  OracleResult r = brute_force_min_simfvs(g, k, avoid);
  return r.min_size.has_value();
}

}  // namespace simfvs::testing
