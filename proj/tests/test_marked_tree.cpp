#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "theta/errors.hpp"
#include "theta/graph.hpp"
#include "theta/marked_tree.hpp"

using namespace theta;

namespace {

MarkedTree random_marked_tree(SplitMix64& rng, int n, int need_marks) {
  MarkedTree t;
  t.tree = theta_test::random_tree(rng, n);
  for (VertexId v : t.tree.vertex_list()) {
    t.marks[v] = rng.below(2) == 0 ? 1 : 0;
  }
  // top up until the instance is eligible
  while (mu(t) < need_marks) {
    auto v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    t.marks[v] = 1;
  }
  t.root = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
  return t;
}

}  // namespace

TEST_CASE("mu counts marked vertices") {
  MarkedTree t;
  t.tree = parse_graph("0 1\n1 2\n");
  t.marks = {{0, 1}, {1, 0}, {2, 1}};
  CHECK(mu(t) == 2);
  t.marks[1] = 1;
  CHECK(mu(t) == 3);
}

TEST_CASE("marked tree text round-trip") {
  const std::string text = "0 1\n1 2\n1 3\nmarks: 0 2 3\nroot: 1\n";
  MarkedTree t = parse_marked_tree(text);
  CHECK(t.tree.edge_count() == 3);
  CHECK(mu(t) == 3);
  REQUIRE(t.root.has_value());
  CHECK(*t.root == 1);
  CHECK(serialize_marked_tree(t) == text);

  MarkedTree plain = parse_marked_tree("0 1\n");
  CHECK(mu(plain) == 0);
  CHECK_FALSE(plain.root.has_value());

  CHECK_THROWS_AS(parse_marked_tree("0 1\n2 3\n"), ParseError);        // forest
  CHECK_THROWS_AS(parse_marked_tree("0 1\n1 2\n0 2\n"), ParseError);   // cycle
  CHECK_THROWS_AS(parse_marked_tree("0 1\nmarks: 5\n"), ParseError);   // foreign mark
  CHECK_THROWS_AS(parse_marked_tree("0 1\nroot: 9\n"), ParseError);    // foreign root
  CHECK_THROWS_AS(parse_marked_tree("0 0\n"), ParseError);             // self-loop
}

TEST_CASE("base split: exactly 2r marks puts the whole tree first") {
  MarkedTree star;
  star.tree = parse_graph("0 1\n0 2\n0 3\n0 4\n");
  star.marks = {{0, 0}, {1, 1}, {2, 1}, {3, 1}, {4, 1}};
  star.root = 0;
  GoodPartition gp = r_good_partition(star, 2);
  CheckResult res = check_good_partition(star, gp);
  CHECK_MESSAGE(res.ok, res.reason);
  CHECK(mu(gp.first) == 4);
  CHECK(gp.second.tree.vertex_count() == 1);
  CHECK(gp.second.tree.has_vertex(0));
}

TEST_CASE("heavy single branch recurses cleanly") {
  // root 0, stem 0-1, then a star at 1 with five marked leaves
  MarkedTree t;
  t.tree = parse_graph("0 1\n1 2\n1 3\n1 4\n1 5\n1 6\n");
  t.marks = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}};
  t.root = 0;
  GoodPartition gp = r_good_partition(t, 2);
  CheckResult res = check_good_partition(t, gp);
  CHECK_MESSAGE(res.ok, res.reason);
  CHECK(mu(gp.first) >= 2);
  CHECK(mu(gp.first) <= 4);
  CHECK(mu(gp.first) + mu(gp.second) == 5);
}

TEST_CASE("heavy branch next to a sibling keeps the sibling attached") {
  // root 0 carries a heavy star branch through 1 and a separate marked leaf 7
  MarkedTree t;
  t.tree = parse_graph("0 1\n1 2\n1 3\n1 4\n1 5\n1 6\n0 7\n");
  t.marks = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}};
  t.root = 0;
  GoodPartition gp = r_good_partition(t, 2);
  CheckResult res = check_good_partition(t, gp);
  CHECK_MESSAGE(res.ok, res.reason);
  // the sibling leaf must survive somewhere, with its mark intact
  int m7 = 0;
  if (gp.first.tree.has_vertex(7)) m7 += gp.first.marks.at(7);
  if (gp.second.tree.has_vertex(7)) m7 += gp.second.marks.at(7);
  CHECK(m7 == 1);
}

TEST_CASE("leaf root hands the split to its neighbor") {
  MarkedTree t;
  t.tree = parse_graph("0 1\n1 2\n1 3\n1 4\n");
  t.marks = {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 0}};
  t.root = 4;
  GoodPartition gp = r_good_partition(t, 2);
  CheckResult res = check_good_partition(t, gp);
  CHECK_MESSAGE(res.ok, res.reason);
}

TEST_CASE("random marked trees always split well") {
  SplitMix64 rng(101);
  int done = 0;
  while (done < 300) {
    int r = 1 + static_cast<int>(rng.below(5));
    int n = 2 + static_cast<int>(rng.below(24));
    if (n < 2 * r) continue;
    MarkedTree t = random_marked_tree(rng, n, 2 * r);
    GoodPartition gp = r_good_partition(t, r);
    CheckResult res = check_good_partition(t, gp);
    CHECK_MESSAGE(res.ok, res.reason);
    CHECK(gp.r == r);
    CHECK(mu(gp.first) >= r);
    CHECK(mu(gp.first) <= 2 * r);
    CHECK(mu(gp.first) + mu(gp.second) == mu(t));
    REQUIRE(gp.second.root.has_value());
    CHECK(*gp.second.root == *t.root);
    ++done;
  }
}

TEST_CASE("splits are deterministic") {
  SplitMix64 rng(55);
  MarkedTree t = random_marked_tree(rng, 18, 6);
  GoodPartition a = r_good_partition(t, 3);
  GoodPartition b = r_good_partition(t, 3);
  CHECK(serialize_marked_tree(a.first) == serialize_marked_tree(b.first));
  CHECK(serialize_marked_tree(a.second) == serialize_marked_tree(b.second));
}

TEST_CASE("extract_subtrees yields k edge-disjoint marked subtrees") {
  SplitMix64 rng(77);
  for (int it = 0; it < 120; ++it) {
    int r = 1 + static_cast<int>(rng.below(3));
    int k = 1 + static_cast<int>(rng.below(3));
    int n = 2 * k * r + 1 + static_cast<int>(rng.below(12));
    MarkedTree t = random_marked_tree(rng, n, 2 * k * r);
    auto parts = extract_subtrees(t, k, r);
    REQUIRE(parts.size() == static_cast<std::size_t>(k));
    std::set<EdgeId> used;
    int total_marks = 0;
    for (const MarkedTree& p : parts) {
      CHECK(p.tree.vertex_count() >= 1);
      CHECK(p.tree.edge_count() == p.tree.vertex_count() - 1);
      CHECK(p.tree.is_connected());
      CHECK(mu(p) >= r);
      total_marks += mu(p);
      for (const auto& [id, e] : p.tree.edges()) {
        CHECK(t.tree.has_edge(id));
        CHECK(t.tree.edge(id) == e);
        CHECK(used.insert(id).second);  // edge-disjoint across parts
      }
      for (VertexId v : p.tree.vertices()) CHECK(t.tree.has_vertex(v));
    }
    CHECK(total_marks == mu(t));
    REQUIRE(parts.back().root.has_value());
    CHECK(*parts.back().root == *t.root);
  }
}

TEST_CASE("precondition violations are rejected") {
  MarkedTree t;
  t.tree = parse_graph("0 1\n1 2\n");
  t.marks = {{0, 1}, {1, 1}, {2, 0}};

  CHECK_THROWS_AS(r_good_partition(t, 1), std::invalid_argument);  // no root
  t.root = 5;
  CHECK_THROWS_AS(r_good_partition(t, 1), std::invalid_argument);  // foreign root
  t.root = 0;
  CHECK_THROWS_AS(r_good_partition(t, 2), std::invalid_argument);  // mu < 2r
  CHECK_THROWS_AS(r_good_partition(t, 0), std::invalid_argument);

  MarkedTree cyc;
  cyc.tree = parse_graph("0 1\n1 2\n0 2\n");
  cyc.marks = {{0, 1}, {1, 1}, {2, 0}};
  cyc.root = 0;
  CHECK_THROWS_AS(r_good_partition(cyc, 1), std::invalid_argument);  // not a tree

  CHECK_THROWS_AS(extract_subtrees(t, 2, 1), std::invalid_argument);  // mu < 2kr
  CHECK_THROWS_AS(extract_subtrees(t, 0, 1), std::invalid_argument);
}
