#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "test_util.hpp"
#include "theta/degree_packing.hpp"
#include "theta/errors.hpp"
#include "theta/generators.hpp"
#include "theta/graph.hpp"
#include "theta/oracles.hpp"

using namespace theta;

namespace {

// Add spokes from vertex 0 until it has at least `want` distinct neighbours,
// keeping the graph biconnected by closing each new leaf into a triangle
// with the previously added one.
MultiGraph grow_hub(MultiGraph g, int want) {
  VertexId hub = *g.vertex_list().begin();
  VertexId fresh = g.vertex_list().back() + 1;
  VertexId prev = -1;
  while (static_cast<int>(g.neighbors(hub).size()) < want) {
    g.add_edge(hub, fresh);
    if (prev >= 0) {
      g.add_edge(prev, fresh);
    } else {
      // tie the first new leaf back into the old graph
      g.add_edge(fresh, g.vertex_list()[1]);
    }
    prev = fresh;
    ++fresh;
  }
  return g;
}

bool pairwise_edge_disjoint(const PackingWitness& w) {
  std::set<EdgeId> seen;
  for (const auto& cert : w.certificates) {
    for (EdgeId e : model_edges(cert)) {
      if (!seen.insert(e).second) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("wheel packs one model around its hub") {
  for (int r = 2; r <= 4; ++r) {
    MultiGraph w = make_wheel(2 * r);
    PackingWitness pw = pack_via_high_degree(w, 1, r);
    REQUIRE(pw.certificates.size() == 1);
    const ThetaCertificate& c = pw.certificates.front();
    CHECK(c.r == r);
    CHECK(c.part1 == VertexSet{0});  // the hub has the highest degree
    CHECK(verify_model(w, c).ok);
  }
}

TEST_CASE("complete bipartite hubs pack k models") {
  for (int k = 1; k <= 3; ++k) {
    for (int r = 2; r <= 3; ++r) {
      MultiGraph g;
      // vertices 0 and 1 on one side, 2kr on the other
      for (int j = 0; j < 2 * k * r; ++j) {
        g.add_edge(0, 2 + j);
        g.add_edge(1, 2 + j);
      }
      PackingWitness pw = pack_via_high_degree(g, k, r);
      CHECK(static_cast<int>(pw.certificates.size()) == k);
      CHECK(pairwise_edge_disjoint(pw));
      CheckResult res = verify_packing(g, pw);
      CHECK_MESSAGE(res.ok, res.reason);
      // the exact oracle agrees that k disjoint models fit
      if (g.vertex_count() <= 12 && g.edge_count() <= 24) {
        CHECK(static_cast<int>(edge_packing_exact(g, r).certificates.size()) >= k);
      }
    }
  }
}

TEST_CASE("random biconnected graphs with a fat hub pack on demand") {
  SplitMix64 rng(71);
  for (int it = 0; it < 60; ++it) {
    int k = 1 + static_cast<int>(rng.below(3));
    int r = 2 + static_cast<int>(rng.below(2));
    MultiGraph g = random_biconnected(4 + static_cast<int>(rng.below(4)),
                                      static_cast<int>(rng.below(4)), rng.next());
    g = grow_hub(g, 2 * k * r);
    REQUIRE(biconnected_components(g).size() == 1);
    PackingWitness pw = pack_via_high_degree(g, k, r);
    CHECK(static_cast<int>(pw.certificates.size()) == k);
    CHECK(pairwise_edge_disjoint(pw));
    CheckResult res = verify_packing(g, pw);
    CHECK_MESSAGE(res.ok, res.reason);
    for (const auto& cert : pw.certificates) CHECK(cert.r == r);
  }
}

TEST_CASE("degree packing rejects unusable inputs") {
  MultiGraph path;
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  CHECK_THROWS_AS(pack_via_high_degree(path, 1, 2), std::invalid_argument);

  // bowtie: connected but two blocks
  MultiGraph bowtie;
  bowtie.add_edge(0, 1);
  bowtie.add_edge(1, 2);
  bowtie.add_edge(2, 0);
  bowtie.add_edge(2, 3);
  bowtie.add_edge(3, 4);
  bowtie.add_edge(4, 2);
  CHECK_THROWS_AS(pack_via_high_degree(bowtie, 1, 2), std::invalid_argument);

  // biconnected but the best hub has too few neighbours
  MultiGraph c6 = make_cycle(6);
  CHECK_THROWS_AS(pack_via_high_degree(c6, 1, 2), std::invalid_argument);

  MultiGraph w = make_wheel(6);
  CHECK_THROWS_AS(pack_via_high_degree(w, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(pack_via_high_degree(w, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(pack_via_high_degree(MultiGraph{}, 1, 2), std::invalid_argument);
}

TEST_CASE("componentwise packing stitches blocks together") {
  // two wheels sharing vertex 0: each block serves one model
  MultiGraph g = make_wheel(8);
  int shift = 20;
  MultiGraph w2 = make_wheel(8);
  for (const auto& [id, e] : w2.edges()) {
    VertexId u = e.u == 0 ? 0 : e.u + shift;
    VertexId v = e.v == 0 ? 0 : e.v + shift;
    g.add_edge(u, v);
  }
  auto pw = pack_componentwise(g, 2, 2);
  REQUIRE(pw.has_value());
  CHECK(pw->certificates.size() == 2);
  CheckResult res = verify_packing(g, *pw);
  CHECK_MESSAGE(res.ok, res.reason);

  // asking for more than the graph holds
  CHECK_FALSE(pack_componentwise(g, 9, 2).has_value());

  // forests hold nothing
  SplitMix64 rng(101);
  CHECK_FALSE(pack_componentwise(theta_test::random_tree(rng, 10), 1, 2).has_value());

  // a single parallel bundle is one block below the degree route's reach,
  // so the exact fallback has to find it
  MultiGraph bundle = make_theta(3);
  auto one = pack_componentwise(bundle, 1, 3);
  REQUIRE(one.has_value());
  CHECK(verify_packing(bundle, *one).ok);

  // the exact fallback respects the budget
  MultiGraph big = make_cycle(30);
  CHECK_THROWS_AS(pack_componentwise(big, 2, 2), BudgetError);
  auto eased = pack_componentwise(big, 1, 2, Budget{40, 80});
  REQUIRE(eased.has_value());
  CHECK(verify_packing(big, *eased).ok);
}
