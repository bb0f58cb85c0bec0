#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_util.hpp"
#include "theta/errors.hpp"
#include "theta/generators.hpp"
#include "theta/graph.hpp"

using namespace theta;

TEST_CASE("edges normalize endpoints and keep stable ids") {
  MultiGraph g;
  EdgeId a = g.add_edge(3, 1);
  EdgeId b = g.add_edge(1, 3);
  CHECK(a == 0);
  CHECK(b == 1);
  CHECK(g.edge(a).u == 1);
  CHECK(g.edge(a).v == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.vertex_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.neighbor_count(1) == 1);
}

TEST_CASE("parse and serialize round-trip") {
  const std::string text = "0 1\n1 2\n0 2\n0 1\n";
  MultiGraph g = parse_graph(text);
  CHECK(g.edge_count() == 4);
  CHECK(g.vertex_count() == 3);
  CHECK(serialize_graph(g) == text);

  MultiGraph again = parse_graph(serialize_graph(g));
  CHECK(again.edge_count() == g.edge_count());
  CHECK(again.vertex_list() == g.vertex_list());
}

TEST_CASE("parser reports line numbers and rejects self-loops") {
  CHECK_THROWS_AS(parse_graph("0 1\n2 2\n"), ParseError);
  try {
    parse_graph("0 1\nbogus\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  // comments and the optional header are tolerated
  MultiGraph g = parse_graph("# a comment\np 3 2\n0 1\n1 2\n");
  CHECK(g.edge_count() == 2);
}

TEST_CASE("connectivity and components") {
  MultiGraph g;
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_vertex(9);
  CHECK_FALSE(g.is_connected());
  auto comps = g.connected_components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == VertexSet{0, 1});
  CHECK(comps[1] == VertexSet{2, 3});
  CHECK(comps[2] == VertexSet{9});
  CHECK(MultiGraph{}.is_connected());
}

TEST_CASE("subgraph operations preserve edge ids") {
  MultiGraph g = parse_graph("0 1\n1 2\n2 0\n2 3\n");
  MultiGraph tri = g.induced_subgraph({0, 1, 2});
  CHECK(tri.edge_count() == 3);
  CHECK(tri.has_edge(0));
  CHECK_FALSE(tri.has_edge(3));

  MultiGraph sub = g.subgraph_from_edges({3});
  CHECK(sub.vertex_list() == VertexSet{2, 3});
  CHECK(sub.edge(3).u == 2);

  MultiGraph cut = g.remove_edges({0});
  CHECK(cut.edge_count() == 3);
  CHECK(cut.has_vertex(0));

  MultiGraph gone = g.remove_vertices({2});
  CHECK(gone.edge_count() == 1);
  CHECK(gone.has_edge(0));
  CHECK_THROWS_AS(g.induced_subgraph({0, 7}), std::invalid_argument);
}

TEST_CASE("biconnected components split at cut vertices") {
  // bowtie: two triangles sharing vertex 2
  MultiGraph g = parse_graph("0 1\n1 2\n0 2\n2 3\n3 4\n2 4\n");
  auto comps = biconnected_components(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].edge_count() == 3);
  CHECK(comps[1].edge_count() == 3);
  CHECK(comps[0].has_edge(0));
  CHECK(comps[1].has_edge(3));

  // a bridge forms its own component
  MultiGraph path = parse_graph("0 1\n1 2\n");
  CHECK(biconnected_components(path).size() == 2);

  // parallel edges are 2-edge-connected and stay together
  MultiGraph bundle = parse_graph("0 1\n0 1\n");
  CHECK(biconnected_components(bundle).size() == 1);

  // edge partition: every edge appears in exactly one component
  SplitMix64 rng(7);
  for (int it = 0; it < 50; ++it) {
    MultiGraph h = theta_test::random_multigraph(rng, 8, 12);
    std::set<EdgeId> seen;
    for (const MultiGraph& c : biconnected_components(h)) {
      for (EdgeId e : c.edge_ids()) {
        CHECK(seen.insert(e).second);
        CHECK(h.has_edge(e));
      }
    }
    CHECK(seen.size() == static_cast<std::size_t>(h.edge_count()));
  }
}

TEST_CASE("contract_edge merges endpoints and drops the parallel class") {
  MultiGraph g = parse_graph("0 1\n0 1\n1 2\n");
  MultiGraph c = contract_edge(g, 0);
  CHECK(c.vertex_count() == 2);
  CHECK(c.edge_count() == 1);  // the parallel copy became a loop and vanished
  CHECK(c.has_edge(2));
  CHECK(c.edge(2).u == 0);
  CHECK(c.edge(2).v == 2);
}

TEST_CASE("minimal spanning subtree has only terminal leaves") {
  MultiGraph g = make_clique(5);
  VertexSet terminals{0, 3};
  MultiGraph t = minimal_spanning_subtree(g, terminals);
  CHECK(t.edge_count() == t.vertex_count() - 1);
  CHECK(t.is_connected());
  for (VertexId v : t.vertex_list()) {
    if (t.degree(v) <= 1) CHECK(set_contains(terminals, v));
  }

  MultiGraph one = minimal_spanning_subtree(g, {2});
  CHECK(one.vertex_count() == 1);
  CHECK(one.edge_count() == 0);

  SplitMix64 rng(11);
  for (int it = 0; it < 60; ++it) {
    MultiGraph h = random_biconnected(8, 4, rng.next());
    VertexSet want;
    for (VertexId v : h.vertex_list()) {
      if (rng.below(3) == 0) want.push_back(v);
    }
    if (want.empty()) want.push_back(0);
    MultiGraph tree = minimal_spanning_subtree(h, want);
    CHECK(tree.is_connected());
    CHECK(tree.edge_count() == tree.vertex_count() - 1);
    for (VertexId v : want) CHECK(tree.has_vertex(v));
    for (VertexId v : tree.vertex_list()) {
      if (tree.degree(v) <= 1) CHECK(set_contains(want, v));
    }
  }

  CHECK_THROWS_AS(minimal_spanning_subtree(parse_graph("0 1\n2 3\n"), VertexSet{0, 2}),
                  std::invalid_argument);
}

TEST_CASE("sorted-set helpers") {
  std::vector<int> a{1, 3, 5};
  std::vector<int> b{3, 4};
  CHECK(set_union_of(a, b) == std::vector<int>{1, 3, 4, 5});
  CHECK(set_intersection_of(a, b) == std::vector<int>{3});
  CHECK(set_difference_of(a, b) == std::vector<int>{1, 5});
  CHECK_FALSE(sets_disjoint(a, b));
  CHECK(sets_disjoint(a, std::vector<int>{2, 4}));
  CHECK(set_contains(a, 5));
  CHECK_FALSE(set_contains(a, 2));
  std::vector<int> messy{5, 1, 5, 3};
  set_normalize(messy);
  CHECK(messy == a);
  CHECK(is_sorted_unique(a));
  CHECK_FALSE(is_sorted_unique(std::vector<int>{1, 1}));
}
