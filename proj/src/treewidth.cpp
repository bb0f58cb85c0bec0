#include "theta/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "theta/errors.hpp"

namespace theta {

namespace {

// The subset DP keeps two bytes per vertex subset; past this the table no
// longer fits in sane memory.
constexpr int kHardTwLimit = 24;

bool shape_is_tree(const MultiGraph& g) {
  return g.vertex_count() >= 1 && g.is_connected() && g.edge_count() == g.vertex_count() - 1;
}

// Vertices adjacent to v via paths whose interior lies in `inside`,
// excluding inside itself and v. This is v's neighborhood after the inside
// set has been eliminated.
std::uint32_t fill_neighbors(const std::vector<std::uint32_t>& adj, std::uint32_t inside, int v) {
  std::uint32_t reach = std::uint32_t{1} << v;
  std::uint32_t border = 0;
  for (;;) {
    border = 0;
    std::uint32_t scan = reach;
    while (scan) {
      int u = std::countr_zero(scan);
      scan &= scan - 1;
      border |= adj[static_cast<std::size_t>(u)];
    }
    std::uint32_t grow = border & inside & ~reach;
    if (grow == 0) break;
    reach |= grow;
  }
  return border & ~inside & ~(std::uint32_t{1} << v);
}

std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::base: return "base";
    case NodeKind::introduce: return "introduce";
    case NodeKind::forget: return "forget";
    case NodeKind::join: return "join";
  }
  return "?";
}

NodeKind kind_from_name(const std::string& s) {
  if (s == "base") return NodeKind::base;
  if (s == "introduce") return NodeKind::introduce;
  if (s == "forget") return NodeKind::forget;
  if (s == "join") return NodeKind::join;
  throw ParseError("unknown node kind: " + s);
}

}  // namespace

int width(const TreeDecomposition& d) {
  int w = -1;
  for (const auto& [id, bag] : d.bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

std::pair<int, TreeDecomposition> exact_treewidth(const MultiGraph& g, int max_vertices) {
  int n = g.vertex_count();
  int cap = std::min(max_vertices, kHardTwLimit);
  if (n > cap) {
    std::ostringstream msg;
    msg << "treewidth search limited to " << cap << " vertices, graph has " << n;
    throw BudgetError(msg.str());
  }
  TreeDecomposition dec;
  if (n == 0) {
    dec.shape.add_vertex(0);
    dec.bags[0] = {};
    return {-1, dec};
  }
  VertexSet verts = g.vertex_list();
  std::map<VertexId, int> idx;
  for (int i = 0; i < n; ++i) idx[verts[static_cast<std::size_t>(i)]] = i;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [id, e] : g.edges()) {
    adj[static_cast<std::size_t>(idx[e.u])] |= std::uint32_t{1} << idx[e.v];
    adj[static_cast<std::size_t>(idx[e.v])] |= std::uint32_t{1} << idx[e.u];
  }

  // f[S] = least possible maximum fill-degree when the vertices of S are
  // eliminated first (in the best order); pick[S] remembers the argmin, the
  // vertex of S eliminated last.
  std::uint32_t full = (n == 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  std::vector<std::int8_t> f(std::size_t{1} << n, 0);
  std::vector<std::int8_t> pick(std::size_t{1} << n, 0);
  f[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n + 1;
    int bestv = -1;
    std::uint32_t scan = s;
    while (scan) {
      int v = std::countr_zero(scan);
      scan &= scan - 1;
      std::uint32_t rest = s & ~(std::uint32_t{1} << v);
      int q = std::popcount(fill_neighbors(adj, rest, v));
      int val = std::max(static_cast<int>(f[rest]), q);
      if (val < best) {
        best = val;
        bestv = v;
      }
    }
    f[s] = static_cast<std::int8_t>(best);
    pick[s] = static_cast<std::int8_t>(bestv);
  }

  std::vector<int> elim(static_cast<std::size_t>(n));
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    int v = pick[s];
    elim[static_cast<std::size_t>(i)] = v;
    s &= ~(std::uint32_t{1} << v);
  }

  // Gavril's construction: bag i holds elim[i] plus its fill neighborhood
  // at elimination time, attached to the bag of the earliest-eliminated
  // member of that neighborhood.
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(elim[static_cast<std::size_t>(i)])] = i;
  std::uint32_t before = 0;
  for (int i = 0; i < n; ++i) {
    int v = elim[static_cast<std::size_t>(i)];
    std::uint32_t nb = fill_neighbors(adj, before, v);
    VertexSet bag = {verts[static_cast<std::size_t>(v)]};
    int attach = -1;
    std::uint32_t scan = nb;
    while (scan) {
      int u = std::countr_zero(scan);
      scan &= scan - 1;
      bag.push_back(verts[static_cast<std::size_t>(u)]);
      if (attach < 0 || pos[static_cast<std::size_t>(u)] < attach)
        attach = pos[static_cast<std::size_t>(u)];
    }
    set_normalize(bag);
    dec.shape.add_vertex(i);
    dec.bags[i] = bag;
    if (attach < 0 && i + 1 < n) attach = i + 1;
    if (attach >= 0) {
      dec.shape.add_vertex(attach);
      dec.shape.add_edge(i, attach);
    }
    before |= std::uint32_t{1} << v;
  }
  if (width(dec) != f[full]) throw std::logic_error("treewidth witness disagrees with the DP");
  return {static_cast<int>(f[full]), dec};
}

CheckResult verify_decomposition(const MultiGraph& g, const TreeDecomposition& d) {
  if (!shape_is_tree(d.shape)) return CheckResult::fail("shape is not a tree");
  for (int t : d.shape.vertices())
    if (d.bags.find(t) == d.bags.end()) return CheckResult::fail("node without a bag");
  if (d.bags.size() != static_cast<std::size_t>(d.shape.vertex_count()))
    return CheckResult::fail("bag for a nonexistent node");
  VertexSet covered;
  for (const auto& [t, bag] : d.bags) {
    if (!is_sorted_unique(bag)) return CheckResult::fail("bag not sorted and duplicate-free");
    for (VertexId v : bag) {
      if (!g.has_vertex(v)) return CheckResult::fail("bag holds a foreign vertex");
      covered.push_back(v);
    }
  }
  set_normalize(covered);
  if (covered != g.vertex_list()) return CheckResult::fail("bags do not cover the vertices");
  for (const auto& [id, e] : g.edges()) {
    bool housed = false;
    for (const auto& [t, bag] : d.bags) {
      if (set_contains(bag, e.u) && set_contains(bag, e.v)) {
        housed = true;
        break;
      }
    }
    if (!housed) return CheckResult::fail("an edge fits in no bag");
  }
  for (VertexId v : g.vertices()) {
    VertexSet trace;
    for (const auto& [t, bag] : d.bags)
      if (set_contains(bag, v)) trace.push_back(t);
    if (trace.empty()) return CheckResult::fail("bags do not cover the vertices");
    if (!d.shape.induced_subgraph(trace).is_connected())
      return CheckResult::fail("a vertex trace is disconnected");
  }
  return CheckResult::pass();
}

NiceTreeDecomposition to_nice(const TreeDecomposition& d) {
  NiceTreeDecomposition out;
  int next = 0;
  auto new_node = [&](const VertexSet& bag, NodeKind kind) {
    int id = next++;
    out.tree.shape.add_vertex(id);
    out.tree.bags[id] = bag;
    out.kinds[id] = kind;
    return id;
  };
  auto link = [&](int child, int parent) { out.tree.shape.add_edge(child, parent); };

  // Introduce chain from an empty base leaf up to `target`.
  auto base_chain = [&](const VertexSet& target) {
    int cur = new_node({}, NodeKind::base);
    VertexSet have;
    for (VertexId v : target) {
      have.push_back(v);
      int up = new_node(have, NodeKind::introduce);
      link(cur, up);
      cur = up;
    }
    return cur;
  };

  // One-vertex steps from bag `from` up to bag `to`: forgets first, then
  // introduces, so intermediate bags never exceed the larger endpoint.
  auto bridge = [&](int node, const VertexSet& from, const VertexSet& to) {
    int cur = node;
    VertexSet bag = from;
    for (VertexId v : set_difference_of(from, to)) {
      bag.erase(std::find(bag.begin(), bag.end(), v));
      int up = new_node(bag, NodeKind::forget);
      link(cur, up);
      cur = up;
    }
    for (VertexId v : set_difference_of(to, from)) {
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      int up = new_node(bag, NodeKind::introduce);
      link(cur, up);
      cur = up;
    }
    return cur;
  };

  if (d.shape.vertex_count() == 0) {
    out.root = new_node({}, NodeKind::base);
    return out;
  }

  int droot = *d.shape.vertices().begin();
  // Returns the id of a node whose bag equals d's bag at `node`.
  auto build = [&](auto&& self, int node, int parent) -> int {
    const VertexSet& bag = d.bags.at(node);
    std::vector<int> kids;
    for (int u : d.shape.neighbors(node))
      if (u != parent) kids.push_back(u);
    if (kids.empty()) return base_chain(bag);
    int cur = -1;
    for (int c : kids) {
      int top = bridge(self(self, c, node), d.bags.at(c), bag);
      if (cur < 0) {
        cur = top;
      } else {
        int j = new_node(bag, NodeKind::join);
        link(cur, j);
        link(top, j);
        cur = j;
      }
    }
    return cur;
  };

  int top = build(build, droot, -1);
  out.root = bridge(top, d.bags.at(droot), {});
  return out;
}

CheckResult verify_nice(const MultiGraph& g, const NiceTreeDecomposition& nd) {
  CheckResult base = verify_decomposition(g, nd.tree);
  if (!base) return base;
  if (!nd.tree.shape.has_vertex(nd.root)) return CheckResult::fail("root is not a node");
  if (!nd.tree.bags.at(nd.root).empty()) return CheckResult::fail("root bag not empty");
  for (int t : nd.tree.shape.vertices())
    if (nd.kinds.find(t) == nd.kinds.end()) return CheckResult::fail("node without a kind");
  // Orient away from the root and check each node against its declared kind.
  std::vector<std::pair<int, int>> stack = {{nd.root, -1}};
  while (!stack.empty()) {
    auto [t, parent] = stack.back();
    stack.pop_back();
    std::vector<int> kids;
    for (int u : nd.tree.shape.neighbors(t))
      if (u != parent) kids.push_back(u);
    for (int c : kids) stack.push_back({c, t});
    const VertexSet& bag = nd.tree.bags.at(t);
    switch (nd.kinds.at(t)) {
      case NodeKind::base:
        if (!kids.empty()) return CheckResult::fail("base node with children");
        if (!bag.empty()) return CheckResult::fail("base node with a nonempty bag");
        break;
      case NodeKind::introduce: {
        if (kids.size() != 1) return CheckResult::fail("introduce node without exactly one child");
        const VertexSet& cb = nd.tree.bags.at(kids[0]);
        if (set_difference_of(bag, cb).size() != 1 || !set_difference_of(cb, bag).empty())
          return CheckResult::fail("introduce node does not add exactly one vertex");
        break;
      }
      case NodeKind::forget: {
        if (kids.size() != 1) return CheckResult::fail("forget node without exactly one child");
        const VertexSet& cb = nd.tree.bags.at(kids[0]);
        if (set_difference_of(cb, bag).size() != 1 || !set_difference_of(bag, cb).empty())
          return CheckResult::fail("forget node does not drop exactly one vertex");
        break;
      }
      case NodeKind::join:
        if (kids.size() != 2) return CheckResult::fail("join node without exactly two children");
        if (nd.tree.bags.at(kids[0]) != bag || nd.tree.bags.at(kids[1]) != bag)
          return CheckResult::fail("join children bags differ from the join bag");
        break;
    }
  }
  return CheckResult::pass();
}

SeparationTriple separation_triple(const MultiGraph& g, int r, const PackingCounter& nu,
                                   int tw_budget) {
  if (r < 2) throw std::invalid_argument("separation_triple: r must be at least 2");
  int k = nu(g, r);
  if (k < 2)
    throw std::invalid_argument(
        "separation_triple: needs at least two disjoint models to balance");
  auto [tw, dec] = exact_treewidth(g, tw_budget);
  NiceTreeDecomposition nd = to_nice(dec);

  // Orient the nice tree, then compute per node the vertices appearing in
  // bags at or below it; H(t) is that set minus the bag itself.
  std::map<int, std::vector<int>> kids;
  std::vector<int> order;  // root first
  std::vector<std::pair<int, int>> stack = {{nd.root, -1}};
  while (!stack.empty()) {
    auto [t, parent] = stack.back();
    stack.pop_back();
    order.push_back(t);
    for (int u : nd.tree.shape.neighbors(t))
      if (u != parent) {
        kids[t].push_back(u);
        stack.push_back({u, t});
      }
  }
  std::map<int, VertexSet> below, h;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int t = *it;
    VertexSet u = nd.tree.bags.at(t);
    for (int c : kids[t]) u = set_union_of(u, below[c]);
    below[t] = u;
    h[t] = set_difference_of(u, nd.tree.bags.at(t));
  }

  std::map<VertexSet, int> memo;
  auto p = [&](int t) {
    const VertexSet& hs = h.at(t);
    auto it = memo.find(hs);
    if (it != memo.end()) return it->second;
    int value = nu(g.induced_subgraph(hs), r);
    memo.emplace(hs, value);
    return value;
  };

  // The node-kind algebra is a soundness invariant of the whole scheme, so
  // a violation is a bug, not bad input.
  for (int t : order) {
    int pt = p(t);
    const auto& ch = kids[t];
    switch (nd.kinds.at(t)) {
      case NodeKind::base:
        if (pt != 0) throw std::logic_error("base node with models below");
        break;
      case NodeKind::introduce:
        if (pt != p(ch[0])) throw std::logic_error("introduce node changed the count");
        break;
      case NodeKind::forget:
        if (pt < p(ch[0]) || pt > p(ch[0]) + 1)
          throw std::logic_error("forget node changed the count by more than one");
        break;
      case NodeKind::join:
        if (pt != p(ch[0]) + p(ch[1])) throw std::logic_error("join node count not additive");
        break;
    }
  }
  if (p(nd.root) != k) throw std::logic_error("root count differs from the total");

  int critical = -1;
  for (int t : order) {
    if (3 * p(t) <= 2 * k) continue;
    bool children_low = true;
    for (int c : kids[t])
      if (3 * p(c) > 2 * k) children_low = false;
    if (!children_low) continue;
    if (critical >= 0) throw std::logic_error("critical node not unique");
    critical = t;
  }
  if (critical < 0) throw std::logic_error("no critical node found");

  VertexSet side1, separator;
  if (nd.kinds.at(critical) == NodeKind::forget) {
    int c = kids[critical][0];
    separator = nd.tree.bags.at(c);
    side1 = h.at(c);
  } else if (nd.kinds.at(critical) == NodeKind::join) {
    int chosen = -1;
    for (int c : kids[critical])
      if (3 * p(c) >= k) {
        chosen = c;
        break;
      }
    if (chosen < 0) throw std::logic_error("no join child holds a third of the models");
    separator = nd.tree.bags.at(critical);
    side1 = h.at(chosen);
  } else {
    throw std::logic_error("critical node is neither forget nor join");
  }

  SeparationTriple out;
  out.side1 = side1;
  out.separator = separator;
  out.side2 = set_difference_of(g.vertex_list(), set_union_of(side1, separator));
  out.bound = tw + 1;
  if (static_cast<int>(out.separator.size()) > out.bound)
    throw std::logic_error("separator exceeds the width bound");
  for (const auto& [id, e] : g.edges()) {
    bool u1 = set_contains(out.side1, e.u), u2 = set_contains(out.side2, e.u);
    bool v1 = set_contains(out.side1, e.v), v2 = set_contains(out.side2, e.v);
    if ((u1 && v2) || (u2 && v1)) throw std::logic_error("edge crosses the separation");
  }
  int nu1 = nu(g.induced_subgraph(out.side1), r);
  int nu2 = nu(g.induced_subgraph(out.side2), r);
  if (3 * nu1 < k || 3 * nu1 > 2 * k) throw std::logic_error("side1 count outside [k/3, 2k/3]");
  if (nu1 + nu2 > k) throw std::logic_error("side counts exceed the total");
  return out;
}

SeparationTriple separation_triple(const MultiGraph& g, int r, const Budget& b, int tw_budget) {
  PackingCounter nu = [b](const MultiGraph& sub, int rr) {
    return static_cast<int>(vertex_packing_exact(sub, rr, b).certificates.size());
  };
  return separation_triple(g, r, nu, tw_budget);
}

nlohmann::json decomposition_to_json(const TreeDecomposition& d) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [id, bag] : d.bags) nodes.push_back({{"id", id}, {"bag", bag}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [id, e] : d.shape.edges()) edges.push_back({e.u, e.v});
  return {{"nodes", nodes}, {"edges", edges}};
}

namespace {

TreeDecomposition decomposition_from_json_impl(const nlohmann::json& j,
                                               std::map<int, NodeKind>* kinds) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array() || !j.contains("edges") ||
      !j["edges"].is_array())
    throw ParseError("decomposition JSON needs nodes and edges arrays");
  TreeDecomposition d;
  for (const auto& node : j["nodes"]) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_number_integer() ||
        !node.contains("bag") || !node["bag"].is_array())
      throw ParseError("decomposition node needs an id and a bag");
    int id = node["id"].get<int>();
    if (d.bags.count(id)) throw ParseError("duplicate node id in decomposition");
    VertexSet bag;
    for (const auto& v : node["bag"]) {
      if (!v.is_number_integer()) throw ParseError("bag entries must be integers");
      bag.push_back(v.get<int>());
    }
    set_normalize(bag);
    d.shape.add_vertex(id);
    d.bags[id] = bag;
    if (kinds) {
      if (!node.contains("kind") || !node["kind"].is_string())
        throw ParseError("nice decomposition node needs a kind");
      (*kinds)[id] = kind_from_name(node["kind"].get<std::string>());
    }
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("decomposition edges must be integer pairs");
    int a = e[0].get<int>(), b = e[1].get<int>();
    if (!d.shape.has_vertex(a) || !d.shape.has_vertex(b))
      throw ParseError("decomposition edge touches an unknown node");
    d.shape.add_edge(a, b);
  }
  return d;
}

}  // namespace

TreeDecomposition decomposition_from_json(const nlohmann::json& j) {
  return decomposition_from_json_impl(j, nullptr);
}

nlohmann::json nice_to_json(const NiceTreeDecomposition& nd) {
  nlohmann::json j = decomposition_to_json(nd.tree);
  for (auto& node : j["nodes"]) node["kind"] = kind_name(nd.kinds.at(node["id"].get<int>()));
  j["root"] = nd.root;
  return j;
}

NiceTreeDecomposition nice_from_json(const nlohmann::json& j) {
  NiceTreeDecomposition nd;
  nd.tree = decomposition_from_json_impl(j, &nd.kinds);
  if (!j.contains("root") || !j["root"].is_number_integer())
    throw ParseError("nice decomposition needs a root");
  nd.root = j["root"].get<int>();
  if (!nd.tree.shape.has_vertex(nd.root)) throw ParseError("root is not a node");
  return nd;
}

}  // namespace theta
