#pragma once

#include <optional>
#include <vector>

#include "simfvs/graph.hpp"
#include "simfvs/reductions.hpp"

namespace simfvs {

/// Gate for the degree rules on one (vertex, color) pair: either enough
/// vertex-disjoint cycles through v to force it into any solution, or a
/// feedback vertex set of the color graph that avoids v, or nothing because
/// the bounded searches gave up. Rules never fire on Neither.
struct Certificate {
  enum class Kind { Flower, AvoidingFvs, Neither };
  Kind kind = Kind::Neither;
  VertexId v = -1;
  ColorId color = 0;
  std::vector<std::vector<VertexId>> flower;  // cycles as vertex sequences, each through v
  std::vector<VertexId> h_v;                  // feedback vertex set avoiding v
};

/// One entry per color: a maximal degree-two path of that color, or empty for
/// the phi slot (no path chosen).
struct PathTuple {
  std::vector<std::vector<VertexId>> entries;

  int non_phi_count() const {
    int n = 0;
    for (const auto& e : entries) n += !e.empty();
    return n;
  }
};

struct BipartiteGraph {
  int a_size = 0;
  int b_size = 0;
  std::vector<std::vector<int>> adj;  // adj[a] = neighbor indices in B
};

/// Nonempty X (indices into A) and Y (indices into B) such that every x gets
/// exactly q private Y-partners and Y has no neighbors outside X.
struct ExpansionResult {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<std::vector<int>> assignment;  // assignment[i] = q partners of x[i]
};

struct KernelOptions {
  /// Degree rules trigger when degree(v, i) >= trigger_fvs_size * (k + 4).
  /// -1 derives the classic trigger from 3k.
  int trigger_fvs_size = -1;
  /// Budget for the bounded search blocking all cycles through v is
  /// blocker_budget_factor * k.
  int blocker_budget_factor = 2;
  /// Caps on the certificate searches; exceeding them yields Neither.
  int max_cycles_through_vertex = 4000;
  long long max_search_steps = 2'000'000;
};

struct KernelResult {
  EdgeColoredGraph graph;
  int k = 0;
  ReductionTrace trace;
  bool infeasible = false;  // graph has been replaced by a canonical NO instance
};

/// Feedback vertex set of the color view at most twice the optimum
/// (local-ratio scheme with a final minimality prune).
std::vector<VertexId> two_approx_fvs(const ColorView& view);

/// All cycles through v in the color view, pairwise distinct as vertex sets,
/// up to the given cap; nullopt when the cap was exceeded.
std::optional<std::vector<std::vector<VertexId>>> cycles_through_vertex(const ColorView& view,
                                                                        VertexId v, int max_cycles,
                                                                        long long max_steps);

Certificate flower_or_avoiding_fvs(const ColorView& view, VertexId v, int k,
                                   const KernelOptions& options = {});

/// Forces v into the solution given a valid flower of order >= k+1 at v.
void apply_r6(EdgeColoredGraph& g, VertexId v, ColorId color,
              const std::vector<std::vector<VertexId>>& flower, int& k, ReductionTrace& trace);

ExpansionResult expansion_lemma(const BipartiteGraph& b, int q);

/// Rewires a vertex of large color degree against its avoiding feedback
/// vertex set: edges into expansion components are dropped and replaced by
/// double edges to the chosen FVS vertices. Returns false when the rule's
/// preconditions do not hold (no-op).
bool apply_r7(EdgeColoredGraph& g, VertexId v, ColorId color, const std::vector<VertexId>& h_v,
              int k, ReductionTrace& trace);

/// Maximal paths of vertices with degree exactly two in the color graph and
/// no edge into s_i; s_i must be a feedback vertex set of the view.
std::vector<std::vector<VertexId>> enumerate_deg2_paths(const ColorView& view,
                                                        const std::vector<VertexId>& s_i);

/// Vertices of `path` present in every non-phi entry of the tuple; empty when
/// the path is not itself one of the entries.
std::vector<VertexId> intercept(const std::vector<VertexId>& path, const PathTuple& tuple);

/// Splits u out of every non-phi path of the tuple: each such color gets a
/// private copy of u carrying u's two edges of that color.
void unravel(EdgeColoredGraph& g, const std::vector<VertexId>& path, const PathTuple& tuple,
             VertexId u, ReductionTrace& trace);

/// Full pipeline: cleanup rules, degree bounding, path unraveling, cleanup.
/// Output instance is equivalent to the input and never has more vertices.
KernelResult kernelize(const EdgeColoredGraph& g, int k, const KernelOptions& options = {});

}  // namespace simfvs
