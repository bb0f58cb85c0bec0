#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "test_util.hpp"
#include "theta/errors.hpp"
#include "theta/generators.hpp"
#include "theta/graph.hpp"
#include "theta/hitting_sets.hpp"
#include "theta/oracles.hpp"

using namespace theta;

namespace {

MultiGraph two_triangles() {
  MultiGraph g;
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(10, 11);
  g.add_edge(11, 12);
  g.add_edge(12, 10);
  return g;
}

int vertex_tau(const MultiGraph& g, int r) {
  return static_cast<int>(vertex_cover_exact(g, r).size());
}

}  // namespace

TEST_CASE("recursive vertex hitting handles the easy shapes") {
  SplitMix64 rng(3);
  CHECK(vertex_hitting_recursive(theta_test::random_tree(rng, 12), 2).empty());
  CHECK(vertex_hitting_recursive(MultiGraph{}, 2).empty());

  MultiGraph tri;
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(2, 0);
  VertexSet x = vertex_hitting_recursive(tri, 2);
  CHECK(x.size() == 1);
  CHECK_FALSE(has_theta_model(tri.remove_vertices(x), 2));

  VertexSet y = vertex_hitting_recursive(two_triangles(), 2);
  CHECK(y.size() >= 2);
  CHECK_FALSE(has_theta_model(two_triangles().remove_vertices(y), 2));
}

TEST_CASE("recursive vertex hitting always leaves a clean graph") {
  SplitMix64 rng(47);
  int nontrivial = 0;
  for (int it = 0; it < 40; ++it) {
    int n = 3 + static_cast<int>(rng.below(6));
    int m = static_cast<int>(rng.below(14));
    MultiGraph g = theta_test::random_multigraph(rng, n, m);
    int r = 2 + static_cast<int>(rng.below(2));
    VertexSet x = vertex_hitting_recursive(g, r);
    CHECK(is_sorted_unique(x));
    CHECK_FALSE(has_theta_model(g.remove_vertices(x), r));
    CHECK(static_cast<int>(x.size()) >= vertex_tau(g, r));
    if (!x.empty()) ++nontrivial;
  }
  CHECK(nontrivial > 5);
  CHECK_THROWS_AS(vertex_hitting_recursive(make_cycle(3), 1), std::invalid_argument);
  CHECK_THROWS_AS(vertex_hitting_recursive(make_cycle(30), 2), BudgetError);
}

TEST_CASE("edge sets grown from vertex hitting sets") {
  MultiGraph tri;
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(2, 0);
  // an empty x is only legal when the graph is already clean
  CHECK_THROWS_AS(edge_hitting_from_vertex(tri, {}, 1, 2), CertificateError);

  MultiGraph path;
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  CHECK(edge_hitting_from_vertex(path, {}, 1, 2).empty());

  EdgeSet y = edge_hitting_from_vertex(tri, {0}, 1, 2);
  CHECK(y.size() == 2);  // both edges at vertex 0
  CHECK_FALSE(has_theta_model(tri.remove_edges(y), 2));

  // K4 minus one vertex still holds a triangle, so {0} is not a hitting set
  CHECK_THROWS_AS(edge_hitting_from_vertex(make_clique(4), {0}, 1, 2), CertificateError);

  // a fat hub means the caller should have packed instead
  MultiGraph star = make_wheel(8);
  CHECK_THROWS_AS(edge_hitting_from_vertex(star, {0}, 2, 2), std::invalid_argument);

  CHECK_THROWS_AS(edge_hitting_from_vertex(tri, {9}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(edge_hitting_from_vertex(tri, {2, 0}, 1, 2), std::invalid_argument);

  SplitMix64 rng(81);
  for (int it = 0; it < 30; ++it) {
    MultiGraph g = theta_test::random_multigraph(rng, 3 + static_cast<int>(rng.below(5)),
                                                 static_cast<int>(rng.below(10)));
    int r = 2;
    if (g.max_neighbor_degree() >= 4) continue;  // would trip the degree gate
    VertexSet x = vertex_cover_exact(g, r);
    EdgeSet y = edge_hitting_from_vertex(g, x, 1, r);
    CHECK(is_sorted_unique(y));
    CHECK_FALSE(has_theta_model(g.remove_edges(y), r));
    CHECK(static_cast<long long>(y.size()) <=
          static_cast<long long>(g.max_degree()) * static_cast<long long>(x.size()));
  }
}

TEST_CASE("pipeline picks the packing branch when models abound") {
  MultiGraph w = make_wheel(8);
  PipelineResult res = edge_ep_pipeline(w, 2, 2);
  CHECK(res.packed);
  CHECK(res.packing.certificates.size() == 2);
  CHECK(verify_packing(w, res.packing).ok);

  // forests have nothing to hit and nothing to pack
  SplitMix64 rng(7);
  PipelineResult clean = edge_ep_pipeline(theta_test::random_tree(rng, 10), 1, 2);
  CHECK_FALSE(clean.packed);
  CHECK(clean.cover.empty());
}

TEST_CASE("pipeline cover branch leaves every block clean") {
  // one cycle cannot host two edge-disjoint models
  MultiGraph c5 = make_cycle(5);
  PipelineResult res = edge_ep_pipeline(c5, 2, 2);
  CHECK_FALSE(res.packed);
  CHECK_FALSE(res.cover.empty());
  CHECK_FALSE(has_theta_model(c5.remove_edges(res.cover), 2));

  SplitMix64 rng(53);
  int covered = 0, packed = 0;
  for (int it = 0; it < 60; ++it) {
    int n = 3 + static_cast<int>(rng.below(6));
    int m = static_cast<int>(rng.below(14));
    MultiGraph g = theta_test::random_multigraph(rng, n, m);
    int r = 2 + static_cast<int>(rng.below(2));
    int k = 1 + static_cast<int>(rng.below(3));
    PipelineResult out = edge_ep_pipeline(g, k, r);
    if (out.packed) {
      ++packed;
      CHECK(static_cast<int>(out.packing.certificates.size()) == k);
      CHECK(verify_packing(g, out.packing).ok);
    } else {
      ++covered;
      MultiGraph left = g.remove_edges(out.cover);
      for (const MultiGraph& comp : biconnected_components(left)) {
        CHECK_FALSE(has_theta_model(comp, r));
      }
      CHECK_FALSE(has_theta_model(left, r));
      CHECK(static_cast<long long>(out.cover.size()) <=
            2LL * k * r * std::max<long long>(1, vertex_tau(g, r)));
      CHECK(out.cover_path == "exact");
    }
    // the branch taken must match the exact packing number
    int nu = 0;
    for (const MultiGraph& comp : biconnected_components(g)) {
      nu += static_cast<int>(edge_packing_exact(comp, r).certificates.size());
    }
    CHECK(out.packed == (nu >= k));
  }
  CHECK(packed > 5);
  CHECK(covered > 5);
}

TEST_CASE("recursive cover path agrees with the exact path on validity") {
  SplitMix64 rng(59);
  for (int it = 0; it < 15; ++it) {
    int n = 4 + static_cast<int>(rng.below(4));
    int m = 4 + static_cast<int>(rng.below(8));
    MultiGraph g = theta_test::random_multigraph(rng, n, m);
    int r = 2;
    int k = 2 + static_cast<int>(rng.below(2));
    PipelineResult direct = edge_ep_pipeline(g, k, r);
    PipelineResult rec = edge_ep_pipeline(g, k, r, Budget{}, 14, true);
    CHECK(direct.packed == rec.packed);
    if (!rec.packed) {
      CHECK(rec.cover_path == "recursive");
      CHECK_FALSE(has_theta_model(g.remove_edges(rec.cover), r));
    }
  }
}

TEST_CASE("bound formula validates its parameters and grows with k") {
  BoundParams p;
  CHECK(vertex_bound_value(p, 1, 2) > 0.0);
  CHECK(vertex_bound_value(p, 4, 2) > vertex_bound_value(p, 2, 2));

  BoundParams quartic = p;
  quartic.variant = "quartic-in-k";
  CHECK(vertex_bound_value(quartic, 3, 2) > vertex_bound_value(p, 3, 2));

  BoundParams bad = p;
  bad.A = 0.0;
  CHECK_THROWS_AS(vertex_bound_value(bad, 1, 2), std::invalid_argument);
  bad = p;
  bad.c = 1.0;
  CHECK_THROWS_AS(vertex_bound_value(bad, 1, 2), std::invalid_argument);
  bad = p;
  bad.alpha = -0.5;
  CHECK_THROWS_AS(vertex_bound_value(bad, 1, 2), std::invalid_argument);
  bad = p;
  bad.k0 = 0;
  CHECK_THROWS_AS(vertex_bound_value(bad, 1, 2), std::invalid_argument);
  bad = p;
  bad.variant = "cubic";
  CHECK_THROWS_AS(vertex_bound_value(bad, 1, 2), std::invalid_argument);
}

TEST_CASE("gap reports match the oracles on small graphs") {
  GapReport k4 = gap_report(make_clique(4), 2);
  CHECK(k4.k_packed == 1);
  CHECK(k4.tau_exact == 3);
  CHECK(k4.cover_size >= k4.tau_exact);
  CHECK_FALSE(k4.violated);
  CHECK(k4.cover_path == "exact");

  GapReport k5 = gap_report(make_clique(5), 2);
  CHECK(k5.k_packed == 3);
  CHECK(k5.tau_exact == 6);
  CHECK(k5.bound_claimed > 0);
  CHECK_FALSE(k5.violated);

  for (int r = 2; r <= 4; ++r) {
    GapReport th = gap_report(make_theta(2 * r), r);
    CHECK(th.k_packed == 2);
    CHECK(th.tau_exact == r + 1);
    CHECK_FALSE(th.violated);
  }

  GapReport empty = gap_report(MultiGraph{}, 2);
  CHECK(empty.k_packed == 0);
  CHECK(empty.bound_claimed == 0);
  CHECK(empty.cover_size == 0);
}
