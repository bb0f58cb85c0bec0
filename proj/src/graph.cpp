#include "theta/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "theta/errors.hpp"

namespace theta {

void MultiGraph::add_vertex(VertexId v) {
  if (v < 0) throw std::invalid_argument("vertex ids must be non-negative");
  vertices_.insert(v);
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
  EdgeId id = next_edge_id_;
  add_edge_with_id(id, u, v);
  return id;
}

void MultiGraph::add_edge_with_id(EdgeId id, VertexId u, VertexId v) {
  if (u == v) throw std::invalid_argument("self-loops are not representable");
  if (u < 0 || v < 0) throw std::invalid_argument("vertex ids must be non-negative");
  if (edges_.count(id)) throw std::invalid_argument("edge id already in use: " + std::to_string(id));
  if (u > v) std::swap(u, v);
  vertices_.insert(u);
  vertices_.insert(v);
  edges_.emplace(id, Edge{u, v});
  if (id >= next_edge_id_) next_edge_id_ = id + 1;
}

const Edge& MultiGraph::edge(EdgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw std::invalid_argument("unknown edge id: " + std::to_string(e));
  return it->second;
}

VertexSet MultiGraph::vertex_list() const { return VertexSet(vertices_.begin(), vertices_.end()); }

EdgeSet MultiGraph::edge_ids() const {
  EdgeSet out;
  out.reserve(edges_.size());
  for (const auto& [id, e] : edges_) out.push_back(id);
  return out;
}

VertexSet MultiGraph::neighbors(VertexId v) const {
  std::set<VertexId> n;
  for (const auto& [id, e] : edges_)
    if (e.incident(v)) n.insert(e.other(v));
  return VertexSet(n.begin(), n.end());
}

EdgeSet MultiGraph::incident_edges(VertexId v) const {
  EdgeSet out;
  for (const auto& [id, e] : edges_)
    if (e.incident(v)) out.push_back(id);
  return out;
}

int MultiGraph::degree(VertexId v) const {
  int d = 0;
  for (const auto& [id, e] : edges_)
    if (e.incident(v)) ++d;
  return d;
}

int MultiGraph::neighbor_count(VertexId v) const {
  return static_cast<int>(neighbors(v).size());
}

int MultiGraph::max_degree() const {
  std::map<VertexId, int> d;
  for (const auto& [id, e] : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  int best = 0;
  for (const auto& [v, k] : d) best = std::max(best, k);
  return best;
}

int MultiGraph::max_neighbor_degree() const {
  std::map<VertexId, std::set<VertexId>> n;
  for (const auto& [id, e] : edges_) {
    n[e.u].insert(e.v);
    n[e.v].insert(e.u);
  }
  std::size_t best = 0;
  for (const auto& [v, s] : n) best = std::max(best, s.size());
  return static_cast<int>(best);
}

namespace {

// Adjacency with compact indices, shared by the traversal algorithms.
struct Adjacency {
  std::vector<VertexId> by_index;             // index -> vertex id
  std::map<VertexId, int> index_of;           // vertex id -> index
  std::vector<std::vector<std::pair<int, EdgeId>>> adj;  // index -> (neighbor index, edge id)

  explicit Adjacency(const MultiGraph& g) {
    by_index.assign(g.vertices().begin(), g.vertices().end());
    for (int i = 0; i < static_cast<int>(by_index.size()); ++i) index_of[by_index[i]] = i;
    adj.resize(by_index.size());
    for (const auto& [id, e] : g.edges()) {
      int iu = index_of.at(e.u), iv = index_of.at(e.v);
      adj[iu].emplace_back(iv, id);
      adj[iv].emplace_back(iu, id);
    }
    // Deterministic traversal order: neighbors ascending, ties by edge id.
    for (auto& row : adj)
      std::sort(row.begin(), row.end(), [&](const auto& a, const auto& b) {
        if (by_index[a.first] != by_index[b.first]) return by_index[a.first] < by_index[b.first];
        return a.second < b.second;
      });
  }

  int size() const { return static_cast<int>(by_index.size()); }
};

}  // namespace

bool MultiGraph::is_connected() const {
  if (vertices_.size() <= 1) return true;
  Adjacency a(*this);
  std::vector<char> seen(a.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, id] : a.adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  return reached == a.size();
}

std::vector<VertexSet> MultiGraph::connected_components() const {
  Adjacency a(*this);
  std::vector<char> seen(a.size(), 0);
  std::vector<VertexSet> out;
  for (int s = 0; s < a.size(); ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(a.by_index[x]);
      for (auto [y, id] : a.adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;  // seeds scanned in ascending order, so components are ordered by smallest member
}

MultiGraph MultiGraph::induced_subgraph(const VertexSet& keep) const {
  MultiGraph out;
  for (VertexId v : keep) {
    if (!has_vertex(v)) throw std::invalid_argument("induced_subgraph: unknown vertex " + std::to_string(v));
    out.add_vertex(v);
  }
  for (const auto& [id, e] : edges_)
    if (out.has_vertex(e.u) && out.has_vertex(e.v)) out.add_edge_with_id(id, e.u, e.v);
  return out;
}

MultiGraph MultiGraph::subgraph_from_edges(const EdgeSet& keep) const {
  MultiGraph out;
  for (EdgeId id : keep) {
    const Edge& e = edge(id);  // validates
    out.add_edge_with_id(id, e.u, e.v);
  }
  return out;
}

MultiGraph MultiGraph::remove_edges(const EdgeSet& drop) const {
  for (EdgeId id : drop)
    if (!has_edge(id)) throw std::invalid_argument("remove_edges: unknown edge " + std::to_string(id));
  MultiGraph out;
  for (VertexId v : vertices_) out.add_vertex(v);
  for (const auto& [id, e] : edges_)
    if (!set_contains(drop, id)) out.add_edge_with_id(id, e.u, e.v);
  return out;
}

MultiGraph MultiGraph::remove_vertices(const VertexSet& drop) const {
  for (VertexId v : drop)
    if (!has_vertex(v)) throw std::invalid_argument("remove_vertices: unknown vertex " + std::to_string(v));
  MultiGraph out;
  for (VertexId v : vertices_)
    if (!set_contains(drop, v)) out.add_vertex(v);
  for (const auto& [id, e] : edges_)
    if (out.has_vertex(e.u) && out.has_vertex(e.v)) out.add_edge_with_id(id, e.u, e.v);
  return out;
}

MultiGraph parse_graph(const std::string& text) {
  MultiGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string::size_type start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line.substr(start));
    std::string first;
    ls >> first;
    if (first == "p") {  // tolerated header, contents ignored
      continue;
    }
    long long u, v;
    std::istringstream pair(line.substr(start));
    std::string extra;
    if (!(pair >> u >> v)) throw ParseError("expected two vertex ids", lineno);
    if (pair >> extra) throw ParseError("trailing tokens after edge", lineno);
    if (u < 0 || v < 0) throw ParseError("vertex ids must be non-negative", lineno);
    if (u == v) throw ParseError("self-loop is not a valid edge", lineno);
    g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  return g;
}

std::string serialize_graph(const MultiGraph& g) {
  std::ostringstream out;
  for (const auto& [id, e] : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::vector<MultiGraph> biconnected_components(const MultiGraph& g) {
  Adjacency a(g);
  const int n = a.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> edge_stack;
  std::vector<EdgeSet> comps;

  // Iterative DFS. Parallel edges matter: only the specific tree edge used
  // to enter a vertex is skipped, so a second copy of the same pair counts
  // as a back edge and glues its endpoints into one component.
  struct Frame {
    int v;
    int parent_edge;  // edge id used to reach v, -1 at roots
    std::size_t next; // cursor into a.adj[v]
  };
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < a.adj[f.v].size()) {
        auto [w, id] = a.adj[f.v][f.next++];
        if (id == f.parent_edge) continue;
        if (disc[w] == -1) {
          edge_stack.push_back(id);
          disc[w] = low[w] = timer++;
          stack.push_back({w, id, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(id);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v;
        int pe = f.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] >= disc[p]) {
            // p is an articulation point (or root) for the subtree at v:
            // pop one component off the edge stack.
            EdgeSet comp;
            while (!edge_stack.empty()) {
              EdgeId top = edge_stack.back();
              edge_stack.pop_back();
              comp.push_back(top);
              if (top == pe) break;
            }
            set_normalize(comp);
            comps.push_back(std::move(comp));
          }
        }
      }
    }
  }

  std::sort(comps.begin(), comps.end(),
            [](const EdgeSet& x, const EdgeSet& y) { return x.front() < y.front(); });
  std::vector<MultiGraph> out;
  out.reserve(comps.size());
  for (const EdgeSet& c : comps) out.push_back(g.subgraph_from_edges(c));
  return out;
}

MultiGraph contract_edge(const MultiGraph& g, EdgeId e) {
  const Edge& ce = g.edge(e);
  VertexId keep = std::min(ce.u, ce.v);
  VertexId gone = std::max(ce.u, ce.v);
  MultiGraph out;
  for (VertexId v : g.vertices())
    if (v != gone) out.add_vertex(v);
  for (const auto& [id, ed] : g.edges()) {
    if (id == e) continue;
    VertexId u = ed.u == gone ? keep : ed.u;
    VertexId v = ed.v == gone ? keep : ed.v;
    if (u == v) continue;  // became a self-loop, drop it
    out.add_edge_with_id(id, u, v);
  }
  return out;
}

MultiGraph minimal_spanning_subtree(const MultiGraph& g, const VertexSet& terminals) {
  if (terminals.empty()) throw std::invalid_argument("minimal_spanning_subtree: no terminals");
  for (VertexId t : terminals)
    if (!g.has_vertex(t))
      throw std::invalid_argument("minimal_spanning_subtree: unknown terminal " + std::to_string(t));
  if (!g.is_connected()) throw std::invalid_argument("minimal_spanning_subtree: graph is disconnected");

  // Search tree from the smallest terminal, lowest edge id first, then prune
  // non-terminal leaves until every leaf is a terminal.
  Adjacency a(g);
  int start = a.index_of.at(*std::min_element(terminals.begin(), terminals.end()));
  std::vector<int> parent(a.size(), -1);
  std::vector<EdgeId> parent_edge(a.size(), -1);
  std::vector<char> seen(a.size(), 0);
  std::vector<int> queue{start};
  seen[start] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    for (auto [y, id] : a.adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = x;
        parent_edge[y] = id;
        queue.push_back(y);
      }
  }

  std::set<VertexId> term(terminals.begin(), terminals.end());
  std::set<int> tree_vertices;
  std::set<EdgeId> tree_edges;
  tree_vertices.insert(start);
  for (VertexId t : terminals) {
    int x = a.index_of.at(t);
    while (x != -1 && !tree_vertices.count(x)) {
      tree_vertices.insert(x);
      if (parent_edge[x] != -1) tree_edges.insert(parent_edge[x]);
      x = parent[x];
    }
  }
  // Walking root paths only adds vertices on terminal-to-start paths, which
  // already prunes most non-terminal branches; finish with leaf pruning for
  // the start side.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = tree_vertices.begin(); it != tree_vertices.end();) {
      VertexId v = a.by_index[*it];
      if (term.count(v)) {
        ++it;
        continue;
      }
      int deg = 0;
      EdgeId last = -1;
      for (auto [y, id] : a.adj[*it])
        if (tree_edges.count(id)) {
          ++deg;
          last = id;
        }
      if (deg <= 1) {
        if (last != -1) tree_edges.erase(last);
        it = tree_vertices.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }

  MultiGraph out;
  for (int i : tree_vertices) out.add_vertex(a.by_index[i]);
  for (EdgeId id : tree_edges) {
    const Edge& e = g.edge(id);
    out.add_edge_with_id(id, e.u, e.v);
  }
  return out;
}

bool set_contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<int> set_union_of(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersection_of(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_difference_of(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sets_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return false;
  }
  return true;
}

void set_normalize(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool is_sorted_unique(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) return false;
  return true;
}

}  // namespace theta
