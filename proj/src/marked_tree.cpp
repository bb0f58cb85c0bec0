#include "theta/marked_tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "theta/errors.hpp"

namespace theta {

namespace {

bool is_tree(const MultiGraph& g) {
  return g.vertex_count() >= 1 && g.is_connected() && g.edge_count() == g.vertex_count() - 1;
}

int mark_of(const MarkedTree& t, VertexId v) {
  auto it = t.marks.find(v);
  return it != t.marks.end() && it->second != 0 ? 1 : 0;
}

// Marks for every vertex of `tree`, copied from `source` (absent = 0).
std::map<VertexId, int> marks_for(const MultiGraph& tree, const std::map<VertexId, int>& source) {
  std::map<VertexId, int> out;
  for (VertexId v : tree.vertices()) {
    auto it = source.find(v);
    out[v] = it != source.end() && it->second != 0 ? 1 : 0;
  }
  return out;
}

MarkedTree single_vertex(VertexId v) {
  MarkedTree t;
  t.tree.add_vertex(v);
  t.marks[v] = 0;
  t.root = v;
  return t;
}

// One branch hanging off the root: the component's vertices and inner
// edges, the neighbor it attaches through, and the attaching edge.
struct Branch {
  VertexId attach = 0;
  EdgeId spoke = 0;
  VertexSet verts;
  EdgeSet inner;
  int weight = 0;
};

std::vector<Branch> branches_at(const MarkedTree& t, VertexId v) {
  auto comps = t.tree.remove_vertices({v}).connected_components();
  std::vector<Branch> out(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out[i].verts = comps[i];
    for (VertexId u : comps[i]) out[i].weight += mark_of(t, u);
  }
  auto home = [&](VertexId u) -> Branch& {
    for (auto& br : out)
      if (set_contains(br.verts, u)) return br;
    throw std::logic_error("vertex outside every branch");
  };
  for (const auto& [id, e] : t.tree.edges()) {
    if (e.incident(v)) {
      Branch& br = home(e.other(v));
      br.attach = e.other(v);
      br.spoke = id;
    } else {
      home(e.u).inner.push_back(id);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Branch& a, const Branch& b) { return a.attach < b.attach; });
  return out;
}

GoodPartition split(const MarkedTree& t, int r);

// Case 1: the root is a leaf. Split the rest at its neighbor, then hand the
// root and its edge back to the second part.
GoodPartition split_leaf_root(const MarkedTree& t, int r, VertexId v) {
  VertexId u = t.tree.neighbors(v)[0];
  EdgeId spoke = t.tree.incident_edges(v)[0];
  MarkedTree inner;
  inner.tree = t.tree.remove_vertices({v});
  inner.marks = marks_for(inner.tree, t.marks);
  inner.root = u;
  GoodPartition sub = split(inner, r);
  GoodPartition gp;
  gp.r = r;
  gp.first = std::move(sub.first);
  gp.second.tree = std::move(sub.second.tree);
  gp.second.tree.add_vertex(v);
  gp.second.tree.add_edge_with_id(spoke, v, u);
  gp.second.marks = std::move(sub.second.marks);
  gp.second.marks[v] = mark_of(t, v);
  gp.second.root = v;
  return gp;
}

// Case 2a: one branch alone holds more than 2r marks. Split that branch at
// its attachment vertex; everything else (the root included, keeping its
// mark) joins the second part.
GoodPartition split_heavy_branch(const MarkedTree& t, int r, VertexId v,
                                 const std::vector<Branch>& brs, std::size_t heavy) {
  MarkedTree inner;
  inner.tree = t.tree.induced_subgraph(brs[heavy].verts);
  inner.marks = marks_for(inner.tree, t.marks);
  inner.root = brs[heavy].attach;
  GoodPartition sub = split(inner, r);
  EdgeSet rest = sub.second.tree.edge_ids();
  rest.push_back(brs[heavy].spoke);
  for (std::size_t j = 0; j < brs.size(); ++j) {
    if (j == heavy) continue;
    rest.push_back(brs[j].spoke);
    rest.insert(rest.end(), brs[j].inner.begin(), brs[j].inner.end());
  }
  set_normalize(rest);
  GoodPartition gp;
  gp.r = r;
  gp.first = std::move(sub.first);
  gp.second.tree = t.tree.subgraph_from_edges(rest);
  gp.second.marks = marks_for(gp.second.tree, t.marks);
  for (const auto& [u, m] : sub.second.marks) gp.second.marks[u] = m;
  gp.second.root = v;
  return gp;
}

// Case 2b: some branch carries between r and 2r marks. It becomes the first
// part on its own; its attachment vertex stays in the second part too but
// counts only once, on the first side.
GoodPartition split_medium_branch(const MarkedTree& t, int r, VertexId v, const Branch& br) {
  GoodPartition gp;
  gp.r = r;
  gp.first.tree = t.tree.induced_subgraph(br.verts);
  gp.first.marks = marks_for(gp.first.tree, t.marks);
  gp.first.root = br.attach;
  EdgeSet rest = set_difference_of(t.tree.edge_ids(), br.inner);
  gp.second.tree = t.tree.subgraph_from_edges(rest);
  gp.second.marks = marks_for(gp.second.tree, t.marks);
  gp.second.marks[br.attach] = 0;
  gp.second.root = v;
  return gp;
}

// Case 2c: every branch is light. Take branches in attachment order until
// their marks reach r; that bundle plus the (unmarked there) root is the
// first part. The proof's counting shows at least one branch is left over,
// so the second part keeps the root with an edge.
GoodPartition split_light_branches(const MarkedTree& t, int r, VertexId v,
                                   const std::vector<Branch>& brs) {
  int prefix = 0;
  std::size_t take = brs.size();
  for (std::size_t i = 0; i < brs.size(); ++i) {
    prefix += brs[i].weight;
    if (prefix >= r) {
      take = i + 1;
      break;
    }
  }
  if (take >= brs.size()) throw std::logic_error("light-branch prefix never reached r");
  EdgeSet head, rest;
  for (std::size_t i = 0; i < brs.size(); ++i) {
    EdgeSet& side = i < take ? head : rest;
    side.push_back(brs[i].spoke);
    side.insert(side.end(), brs[i].inner.begin(), brs[i].inner.end());
  }
  set_normalize(head);
  set_normalize(rest);
  GoodPartition gp;
  gp.r = r;
  gp.first.tree = t.tree.subgraph_from_edges(head);
  gp.first.marks = marks_for(gp.first.tree, t.marks);
  gp.first.marks[v] = 0;
  gp.first.root = v;
  gp.second.tree = t.tree.subgraph_from_edges(rest);
  gp.second.marks = marks_for(gp.second.tree, t.marks);
  gp.second.root = v;
  return gp;
}

GoodPartition split(const MarkedTree& t, int r) {
  VertexId v = *t.root;
  if (mu(t) == 2 * r) {
    GoodPartition gp;
    gp.r = r;
    gp.first = t;
    gp.second = single_vertex(v);
    return gp;
  }
  if (t.tree.neighbor_count(v) == 1) return split_leaf_root(t, r, v);
  auto brs = branches_at(t, v);
  for (std::size_t i = 0; i < brs.size(); ++i)
    if (brs[i].weight > 2 * r) return split_heavy_branch(t, r, v, brs, i);
  for (const auto& br : brs)
    if (br.weight >= r) return split_medium_branch(t, r, v, br);
  return split_light_branches(t, r, v, brs);
}

}  // namespace

int mu(const MarkedTree& t) {
  int count = 0;
  for (const auto& [v, m] : t.marks)
    if (m != 0 && t.tree.has_vertex(v)) ++count;
  return count;
}

GoodPartition r_good_partition(const MarkedTree& t, int r) {
  if (r < 1) throw std::invalid_argument("r_good_partition: r must be positive");
  if (!t.root) throw std::invalid_argument("r_good_partition: tree has no root");
  if (!t.tree.has_vertex(*t.root))
    throw std::invalid_argument("r_good_partition: root is not a tree vertex");
  if (!is_tree(t.tree)) throw std::invalid_argument("r_good_partition: graph is not a tree");
  if (mu(t) < 2 * r)
    throw std::invalid_argument("r_good_partition: fewer than 2r marked vertices");
  return split(t, r);
}

std::vector<MarkedTree> extract_subtrees(const MarkedTree& t, int k, int r) {
  if (k < 1) throw std::invalid_argument("extract_subtrees: k must be positive");
  if (r < 1) throw std::invalid_argument("extract_subtrees: r must be positive");
  if (mu(t) < 2 * k * r)
    throw std::invalid_argument("extract_subtrees: fewer than 2kr marked vertices");
  MarkedTree current = t;
  if (!current.root) {
    if (current.tree.vertex_count() == 0)
      throw std::invalid_argument("extract_subtrees: empty tree");
    current.root = *current.tree.vertices().begin();
  }
  std::vector<MarkedTree> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i < k; ++i) {
    GoodPartition gp = r_good_partition(current, r);
    out.push_back(std::move(gp.first));
    current = std::move(gp.second);
  }
  out.push_back(std::move(current));
  return out;
}

CheckResult check_good_partition(const MarkedTree& host, const GoodPartition& gp) {
  if (gp.r < 1) return CheckResult::fail("r must be positive");
  if (!host.root) return CheckResult::fail("host tree has no root");
  const MarkedTree* parts[2] = {&gp.first, &gp.second};
  const char* names[2] = {"first", "second"};
  for (int i = 0; i < 2; ++i) {
    const MarkedTree& p = *parts[i];
    if (!is_tree(p.tree)) return CheckResult::fail(std::string(names[i]) + " part is not a tree");
    for (VertexId v : p.tree.vertices())
      if (!host.tree.has_vertex(v))
        return CheckResult::fail(std::string(names[i]) + " part has a foreign vertex");
    for (const auto& [id, e] : p.tree.edges()) {
      if (!host.tree.has_edge(id))
        return CheckResult::fail(std::string(names[i]) + " part has a foreign edge");
      if (!(host.tree.edge(id) == e))
        return CheckResult::fail(std::string(names[i]) + " part relabeled an edge");
    }
  }
  EdgeSet e1 = gp.first.tree.edge_ids();
  EdgeSet e2 = gp.second.tree.edge_ids();
  if (!sets_disjoint(e1, e2)) return CheckResult::fail("parts share an edge");
  if (set_union_of(e1, e2) != host.tree.edge_ids())
    return CheckResult::fail("parts do not cover the host edges");
  for (VertexId v : host.tree.vertices())
    if (!gp.first.tree.has_vertex(v) && !gp.second.tree.has_vertex(v))
      return CheckResult::fail("a host vertex is in neither part");
  int first_mu = mu(gp.first);
  if (first_mu < gp.r || first_mu > 2 * gp.r)
    return CheckResult::fail("first part mark count outside [r, 2r]");
  if (!gp.second.tree.has_vertex(*host.root))
    return CheckResult::fail("root missing from second part");
  for (VertexId v : host.tree.vertices()) {
    int m1 = mark_of(gp.first, v);
    int m2 = mark_of(gp.second, v);
    if (m1 + m2 != mark_of(host, v)) return CheckResult::fail("mark bookkeeping broken");
  }
  return CheckResult::pass();
}

MarkedTree parse_marked_tree(const std::string& text) {
  MarkedTree t;
  std::vector<std::pair<VertexId, int>> marked;  // id, line
  std::optional<std::pair<VertexId, int>> root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "marks:") {
      VertexId v;
      while (ls >> v) marked.emplace_back(v, lineno);
      if (!ls.eof()) throw ParseError("bad marks line", lineno);
    } else if (head == "root:") {
      VertexId v;
      if (!(ls >> v)) throw ParseError("bad root line", lineno);
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens after root", lineno);
      root = {v, lineno};
    } else {
      VertexId u, v;
      std::istringstream es(line);
      std::string extra;
      if (!(es >> u >> v)) throw ParseError("expected an edge line", lineno);
      if (es >> extra) throw ParseError("trailing tokens after edge", lineno);
      if (u == v) throw ParseError("self-loop", lineno);
      t.tree.add_vertex(u);
      t.tree.add_vertex(v);
      t.tree.add_edge(u, v);
    }
  }
  if (!is_tree(t.tree)) throw ParseError("edges do not form a tree");
  t.marks = marks_for(t.tree, {});
  for (const auto& [v, ln] : marked) {
    if (!t.tree.has_vertex(v)) throw ParseError("marked vertex is not in the tree", ln);
    t.marks[v] = 1;
  }
  if (root) {
    if (!t.tree.has_vertex(root->first)) throw ParseError("root is not in the tree", root->second);
    t.root = root->first;
  }
  return t;
}

std::string serialize_marked_tree(const MarkedTree& t) {
  std::ostringstream out;
  out << serialize_graph(t.tree);
  VertexSet marked;
  for (const auto& [v, m] : t.marks)
    if (m != 0 && t.tree.has_vertex(v)) marked.push_back(v);
  if (!marked.empty()) {
    out << "marks:";
    for (VertexId v : marked) out << ' ' << v;
    out << '\n';
  }
  if (t.root) out << "root: " << *t.root << '\n';
  return out.str();
}

}  // namespace theta
