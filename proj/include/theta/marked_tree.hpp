#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theta/certificate.hpp"
#include "theta/graph.hpp"

namespace theta {

/// A tree with 0/1 vertex marks and an optional root. Marks are defined on
/// exactly the tree's vertices.
struct MarkedTree {
  MultiGraph tree;
  std::map<VertexId, int> marks;
  std::optional<VertexId> root;
};

/// Split of a marked tree: the edge sets of first and second partition the
/// host tree's edges, r <= mu(first) <= 2r, the root lies in second, and
/// every mark survives in exactly one part.
struct GoodPartition {
  MarkedTree first;
  MarkedTree second;
  int r = 0;
};

/// Number of marked vertices.
int mu(const MarkedTree& t);

/// Splits t at its root into a GoodPartition. Case analysis on the root
/// degree and component weights; recursion always lands on a strictly
/// smaller tree. Requires a root and mu(t) >= 2r.
GoodPartition r_good_partition(const MarkedTree& t, int r);

/// k pairwise edge-disjoint subtrees, each carrying at least r marks, taken
/// from t by repeated splitting (the residual part keeps the root and the
/// leftover marks). Requires mu(t) >= 2kr.
std::vector<MarkedTree> extract_subtrees(const MarkedTree& t, int k, int r);

/// Checks every GoodPartition condition against the host tree: both parts
/// are subtrees, edges partition, mark budget of first, root membership,
/// and exact mark bookkeeping.
CheckResult check_good_partition(const MarkedTree& host, const GoodPartition& gp);

/// Text round-trip. Format: one "u v" edge per line, then optional
/// "marks: id id ..." and "root: id" lines; '#' starts a comment line.
MarkedTree parse_marked_tree(const std::string& text);
std::string serialize_marked_tree(const MarkedTree& t);

}  // namespace theta
