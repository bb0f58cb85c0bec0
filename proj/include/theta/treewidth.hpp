#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "theta/certificate.hpp"
#include "theta/graph.hpp"
#include "theta/oracles.hpp"

namespace theta {

/// Tree of bags over a host graph: bags cover the vertices, every edge fits
/// inside some bag, and each vertex's bags form a connected subtree.
struct TreeDecomposition {
  MultiGraph shape;                // tree over node ids
  std::map<int, VertexSet> bags;   // node id -> host vertices
};

/// Max bag size minus one; -1 when every bag is empty.
int width(const TreeDecomposition& d);

enum class NodeKind { base, introduce, forget, join };

/// Rooted decomposition with typed nodes: base leaves and the root carry
/// empty bags, introduce/forget nodes differ from their child by exactly
/// one vertex, join nodes have two children with identical bags.
struct NiceTreeDecomposition {
  TreeDecomposition tree;
  int root = 0;
  std::map<int, NodeKind> kinds;
};

/// Partition (side1, separator, side2) of the host vertices with no edge
/// between the sides and |separator| <= bound.
struct SeparationTriple {
  VertexSet side1;
  VertexSet separator;
  VertexSet side2;
  int bound = 0;
};

/// Optimal width and a witnessing decomposition, by dynamic programming
/// over elimination prefixes (the witness order is rebuilt from the DP's
/// argmin choices, smallest vertex first on ties). Throws BudgetError when
/// the graph has more than max_vertices vertices.
std::pair<int, TreeDecomposition> exact_treewidth(const MultiGraph& g, int max_vertices = 14);

/// Checks the three decomposition conditions plus shape sanity; the reason
/// names the first violation.
CheckResult verify_decomposition(const MultiGraph& g, const TreeDecomposition& d);

/// Standard nice-form conversion: binarized joins, one-vertex transition
/// chains between differing bags, leaves extended down to empty base bags,
/// the root forgotten up to an empty bag. Width is preserved.
NiceTreeDecomposition to_nice(const TreeDecomposition& d);

/// Full check of the nice-form invariants on top of verify_decomposition.
CheckResult verify_nice(const MultiGraph& g, const NiceTreeDecomposition& nd);

/// Counts the maximum number of vertex-disjoint theta_r models in a graph;
/// plugged into separation_triple so tests can observe or stub the oracle.
using PackingCounter = std::function<int(const MultiGraph&, int)>;

/// Balanced separator from the critical node of a nice decomposition: the
/// unique node where the count of disjoint models below first exceeds two
/// thirds of the total. side1 holds between one third and two thirds of
/// them, side1 and side2 together at most the total, and the separator is
/// one bag, so |separator| <= tw(g) + 1. Requires the total to be at least
/// 2: with a single model no integer fits the middle-third window.
SeparationTriple separation_triple(const MultiGraph& g, int r, const PackingCounter& nu,
                                   int tw_budget = 14);
/// Same, with the exact oracle under the given budget as the counter.
SeparationTriple separation_triple(const MultiGraph& g, int r, const Budget& b = {},
                                   int tw_budget = 14);

/// JSON shape: {"nodes":[{"id":…,"bag":[…],"kind"?:…}],"edges":[[a,b]…],
/// "root"?:…}; kind and root appear for nice decompositions.
nlohmann::json decomposition_to_json(const TreeDecomposition& d);
TreeDecomposition decomposition_from_json(const nlohmann::json& j);
nlohmann::json nice_to_json(const NiceTreeDecomposition& nd);
NiceTreeDecomposition nice_from_json(const nlohmann::json& j);

}  // namespace theta
