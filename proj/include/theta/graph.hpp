#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace theta {

using VertexId = int;
using EdgeId = int;

/// Sorted, duplicate-free id collections. Kept as plain vectors so they
/// serialize naturally; helpers below maintain the ordering invariant.
using VertexSet = std::vector<VertexId>;
using EdgeSet = std::vector<EdgeId>;

struct Edge {
  VertexId u, v;  // normalized u < v on insertion
  VertexId other(VertexId w) const { return w == u ? v : u; }
  bool incident(VertexId w) const { return w == u || w == v; }
  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

/// Labeled multigraph with stable integer edge ids. Parallel edges are
/// allowed (distinct ids, same endpoints); self-loops are not. Subgraph
/// operations keep the original ids, so edge sets taken from a subgraph
/// remain meaningful in the host graph. Every operation is pure: inputs
/// are never mutated, values can be shared freely across threads.
class MultiGraph {
public:
  MultiGraph() = default;

  void add_vertex(VertexId v);
  /// Adds an edge with the next unused id; returns that id.
  EdgeId add_edge(VertexId u, VertexId v);
  /// Adds an edge under a caller-chosen id (used by subgraph builders).
  void add_edge_with_id(EdgeId id, VertexId u, VertexId v);

  bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }
  const Edge& edge(EdgeId e) const;

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::map<EdgeId, Edge>& edges() const { return edges_; }
  VertexSet vertex_list() const;
  EdgeSet edge_ids() const;

  /// Distinct adjacent vertices, ascending.
  VertexSet neighbors(VertexId v) const;
  /// Ids of all edges touching v, ascending. Parallel edges all appear.
  EdgeSet incident_edges(VertexId v) const;

  /// Degree counting parallel edges separately (= |incident_edges(v)|).
  int degree(VertexId v) const;
  /// Number of distinct neighbors (= |neighbors(v)|).
  int neighbor_count(VertexId v) const;
  /// Max over vertices of degree(); 0 for an edgeless graph.
  int max_degree() const;
  /// Max over vertices of neighbor_count().
  int max_neighbor_degree() const;

  /// True when every vertex is reachable from every other (the empty graph
  /// counts as connected).
  bool is_connected() const;
  /// Vertex sets of connected components, each sorted, ordered by smallest
  /// member. Isolated vertices form their own components.
  std::vector<VertexSet> connected_components() const;

  /// Subgraph induced by `keep` (edges with both endpoints inside, original
  /// ids). Throws std::invalid_argument on unknown vertices.
  MultiGraph induced_subgraph(const VertexSet& keep) const;
  /// Subgraph consisting of the given edges and their endpoints.
  MultiGraph subgraph_from_edges(const EdgeSet& keep) const;
  /// Copy without the given edges (vertices stay, possibly isolated).
  MultiGraph remove_edges(const EdgeSet& drop) const;
  /// Copy without the given vertices and everything incident to them.
  MultiGraph remove_vertices(const VertexSet& drop) const;

private:
  std::set<VertexId> vertices_;
  std::map<EdgeId, Edge> edges_;
  EdgeId next_edge_id_ = 0;
};

/// Reads the plain edge-list format: one "u v" pair per line, lines starting
/// with '#' are comments, an optional "p <n> <m>" header is tolerated and
/// ignored. Duplicate pairs become parallel edges. Edge ids are assigned
/// 0,1,2,... in line order. Throws ParseError with a line number on bad
/// input (self-loops included).
MultiGraph parse_graph(const std::string& text);

/// Inverse of parse_graph up to id relabeling: one "u v" line per edge,
/// sorted by edge id, endpoints in ascending order. Isolated vertices have
/// no representation in this format and are dropped.
std::string serialize_graph(const MultiGraph& g);

/// Edge partition of g into maximal biconnected subgraphs. Bridges form
/// their own 2-vertex components; isolated vertices appear nowhere.
/// Components are ordered by their smallest edge id.
std::vector<MultiGraph> biconnected_components(const MultiGraph& g);

/// Contracts edge e: its endpoints merge into the smaller-id endpoint,
/// parallel copies of e turn into self-loops and are dropped, all other
/// edges keep their ids. Fresh graph; input untouched.
MultiGraph contract_edge(const MultiGraph& g, EdgeId e);

/// Inclusion-minimal subtree of a connected graph containing all given
/// terminal vertices: every leaf of the result is a terminal. Built from a
/// lowest-edge-id-first search tree, then pruned, so the result is
/// deterministic. A single terminal yields a one-vertex tree. Throws
/// std::invalid_argument when g is disconnected or terminals are empty or
/// unknown.
MultiGraph minimal_spanning_subtree(const MultiGraph& g, const VertexSet& terminals);

// --- small sorted-vector set helpers used across modules ---

bool set_contains(const std::vector<int>& sorted, int x);
std::vector<int> set_union_of(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_intersection_of(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_difference_of(const std::vector<int>& a, const std::vector<int>& b);
bool sets_disjoint(const std::vector<int>& a, const std::vector<int>& b);
/// Sorts and deduplicates in place.
void set_normalize(std::vector<int>& v);
bool is_sorted_unique(const std::vector<int>& v);

}  // namespace theta
