#include "doctest.h"
#include "simfvs/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "simfvs/oracle.hpp"
#include "test_support.hpp"

using namespace simfvs;
using simfvs::testing::oracle_yes;

TEST_CASE("hitting set instances become graphs with one color per set") {
  // Universe u1..u4 with sets {u1,u2}, {u2,u3}, {u2,u4}: u2 hits everything.
  SetSystem sys{4, {{{0, 1}, {1, 2}, {1, 3}}}, 1};
  GeneratedGraph gen = from_hitting_set(sys);
  CHECK(gen.graph.alpha() == 3);
  for (VertexId v : gen.element_vertex) CHECK(gen.graph.has_vertex(v));

  SUBCASE("answers transfer at the same budget") {
    auto hs = brute_force_hitting_set(sys, 1);
    REQUIRE(hs);
    CHECK(*hs == std::vector<int>{1});
    CHECK(oracle_yes(gen.graph, 1));
    // and the hitting set maps onto a concrete witness
    CHECK(verify_solution(gen.graph, {gen.element_vertex[1]}));
    // nothing smaller works on either side
    CHECK(!oracle_yes(gen.graph, 0));
  }
  SUBCASE("multi-set elements merge into a single vertex") {
    std::set<VertexId> distinct(gen.element_vertex.begin(), gen.element_vertex.end());
    CHECK(distinct.size() == 4);
  }
  SUBCASE("uncovered elements are rejected") {
    SetSystem bad{5, {{{0, 1}}}, 1};
    CHECK_THROWS_AS(from_hitting_set(bad), std::invalid_argument);
  }
  SUBCASE("an empty family yields an empty graph") {
    SetSystem empty{3, {{}}, 2};
    GeneratedGraph gen = from_hitting_set(empty);
    CHECK(gen.graph.num_vertices() == 0);
    CHECK(oracle_yes(gen.graph, 0));  // trivially yes at any budget
  }
}

TEST_CASE("partitioned systems share one color per group") {
  SUBCASE("single monochromatic cycle") {
    SetSystem sys{2, {{{0, 1}}}, 1};
    GeneratedGraph gen = phs_to_simfvs(sys);
    CHECK(gen.graph.alpha() == 1);
    CHECK(!oracle_yes(gen.graph, 0));
    CHECK(oracle_yes(gen.graph, 1));
  }
  SUBCASE("shared element certifies both groups at once") {
    SetSystem sys{3, {{{0, 1}}, {{1, 2}}}, 1};
    GeneratedGraph gen = phs_to_simfvs(sys);
    CHECK(gen.graph.alpha() == 2);
    CHECK(verify_solution(gen.graph, {gen.element_vertex[1]}));
  }
  SUBCASE("group overlap violates the contract") {
    SetSystem sys{3, {{{0, 1}, {1, 2}}}, 1};
    CHECK_THROWS_AS(phs_to_simfvs(sys), std::invalid_argument);
  }
  SUBCASE("answers transfer on random partitioned systems, both directions") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
      int universe = 2 + static_cast<int>(rng() % 2);
      int groups = 1 + static_cast<int>(rng() % 2);
      SetSystem sys{universe, {}, 0};
      sys.groups.resize(groups);
      std::vector<char> covered(universe, 0);
      for (int gi = 0; gi < groups; ++gi) {
        std::vector<int> pool(universe);
        for (int i = 0; i < universe; ++i) pool[i] = i;
        for (int i = universe - 1; i > 0; --i) std::swap(pool[i], pool[rng() % (i + 1)]);
        size_t pos = 0;
        while (pos < pool.size()) {
          size_t len = std::min<size_t>(1 + rng() % 2, pool.size() - pos);
          if (rng() % 2) {
            sys.groups[gi].emplace_back(pool.begin() + pos, pool.begin() + pos + len);
            for (size_t i = pos; i < pos + len; ++i) covered[pool[i]] = 1;
          }
          pos += len;
        }
      }
      if (std::count(covered.begin(), covered.end(), 0) > 0) continue;
      if (sys.num_sets() == 0) continue;
      GeneratedGraph gen = phs_to_simfvs(sys);
      if (gen.graph.num_vertices() > 20) continue;
      ++checked;
      for (int k = 0; k <= 2; ++k) {
        bool hs = brute_force_hitting_set(sys, k).has_value();
        bool fvs = oracle_yes(gen.graph, k);
        CHECK(hs == fvs);
      }
    }
    CHECK(checked > 25);
  }
}

TEST_CASE("four-edge-coloring of small patterns") {
  SUBCASE("path") {
    auto colors = edge_coloring_4(3, {{1, 2}, {2, 3}});
    CHECK(colors.size() == 2);
    CHECK(colors[0] != colors[1]);
  }
  SUBCASE("triangle needs three colors") {
    auto colors = edge_coloring_4(3, {{1, 2}, {1, 3}, {2, 3}});
    std::set<int> used(colors.begin(), colors.end());
    CHECK(used.size() == 3);
  }
  SUBCASE("degree above three is rejected") {
    CHECK_THROWS_AS(edge_coloring_4(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}), std::invalid_argument);
  }
  SUBCASE("random low-degree patterns get proper colorings") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 4 + static_cast<int>(rng() % 5);
      std::set<std::pair<int, int>> edges;
      std::vector<int> deg(n + 1, 0);
      for (int tries = 0; tries < 3 * n; ++tries) {
        int a = 1 + static_cast<int>(rng() % n), b = 1 + static_cast<int>(rng() % n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (edges.count({a, b}) || deg[a] >= 3 || deg[b] >= 3) continue;
        edges.insert({a, b});
        ++deg[a];
        ++deg[b];
      }
      std::vector<std::pair<int, int>> edge_list(edges.begin(), edges.end());
      auto colors = edge_coloring_4(n, edge_list);
      for (size_t i = 0; i < edge_list.size(); ++i) {
        CHECK(colors[i] >= 1);
        CHECK(colors[i] <= 4);
        for (size_t j = i + 1; j < edge_list.size(); ++j) {
          bool incident = edge_list[i].first == edge_list[j].first ||
                          edge_list[i].first == edge_list[j].second ||
                          edge_list[i].second == edge_list[j].first ||
                          edge_list[i].second == edge_list[j].second;
          if (incident) CHECK(colors[i] != colors[j]);
        }
      }
    }
  }
}

TEST_CASE("subgraph isomorphism to partitioned hitting set") {
  SUBCASE("single pattern edge with one host edge") {
    PsiInstance psi;
    psi.ell = 2;
    psi.pattern_edges = {{1, 2}};
    psi.class_size = 2;  // t = 1
    psi.host_edges = {{1, 0, 2, 1}};
    SetSystem sys = psi_to_phs(psi);
    CHECK(sys.k == 3);  // pattern edge + two pattern vertices
    CHECK(sys.num_groups() == 17);  // 16t + 1
    CHECK(sys.groups_pairwise_disjoint());
    // within budget: the embedding elements hit everything
    auto hs = brute_force_hitting_set(sys, sys.k);
    REQUIRE(hs);
    CHECK(static_cast<int>(hs->size()) <= 3);
    // and one less never suffices
    CHECK(!brute_force_hitting_set(sys, sys.k - 1));
  }
  SUBCASE("answers transfer on random instances, both directions") {
    int yes = 0, no = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      PsiInstance psi = random_psi_instance(2 + seed % 2, 2, seed * 11 + 1, seed % 2 == 0);
      SetSystem sys = psi_to_phs(psi);
      CHECK(sys.groups_pairwise_disjoint());
      if (sys.universe_size > 20) continue;
      bool embed = psi_has_embedding(psi);
      bool hit = brute_force_hitting_set(sys, sys.k).has_value();
      CHECK(embed == hit);
      (embed ? yes : no) += 1;
    }
    CHECK(yes > 5);
    CHECK(no > 5);
  }
  SUBCASE("pattern vertices of degree four are rejected") {
    PsiInstance psi;
    psi.ell = 5;
    psi.pattern_edges = {{1, 2}, {1, 3}, {1, 4}, {1, 5}};
    psi.class_size = 2;
    CHECK_THROWS_AS(psi_to_phs(psi), std::invalid_argument);
  }
}

TEST_CASE("random instances") {
  SUBCASE("same seed, same graph") {
    EdgeColoredGraph a = random_instance({8, 2, 9, 42, -1});
    EdgeColoredGraph b = random_instance({8, 2, 9, 42, -1});
    auto ea = a.edges();
    auto eb = b.edges();
    REQUIRE(ea.size() == eb.size());
    for (size_t i = 0; i < ea.size(); ++i) {
      CHECK(ea[i].u == eb[i].u);
      CHECK(ea[i].v == eb[i].v);
      CHECK(ea[i].color == eb[i].color);
      CHECK(ea[i].multiplicity == eb[i].multiplicity);
    }
  }
  SUBCASE("no edges requested, none delivered") {
    EdgeColoredGraph g = random_instance({5, 3, 0, 1, -1});
    CHECK(g.num_edges() == 0);
  }
  SUBCASE("multiplicities stay capped") {
    EdgeColoredGraph g = random_instance({4, 2, 40, 7, -1});
    for (const auto& e : g.edges()) CHECK(e.multiplicity <= 2);
  }
  SUBCASE("planted instances stay acyclic away from the plant") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      int s = 1 + static_cast<int>(seed % 3);
      EdgeColoredGraph g = random_instance({9, 2, 10, seed, s});
      OracleResult r = brute_force_min_simfvs(g, 9);
      REQUIRE(r.min_size);
      CHECK(*r.min_size <= s);
    }
  }
}
