#include "theta/certificate.hpp"

#include <algorithm>
#include <map>

#include "theta/errors.hpp"

namespace theta {

namespace {

// Is (verts, edge_ids) a connected subgraph of g covering every vertex of
// verts? Singleton vertex sets with no edges count as connected.
bool spans_connectedly(const MultiGraph& g, const VertexSet& verts, const EdgeSet& edge_ids) {
  if (verts.empty()) return false;
  std::map<VertexId, int> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> adj(verts.size());
  for (EdgeId id : edge_ids) {
    const Edge& e = g.edge(id);
    adj[index.at(e.u)].push_back(index.at(e.v));
    adj[index.at(e.v)].push_back(index.at(e.u));
  }
  std::vector<char> seen(verts.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  return reached == verts.size();
}

CheckResult check_part(const MultiGraph& g, const char* label, const VertexSet& part,
                       const EdgeSet& inner) {
  if (part.empty()) return CheckResult::fail(std::string(label) + " is empty");
  if (!is_sorted_unique(part)) return CheckResult::fail(std::string(label) + " is not sorted-unique");
  for (VertexId v : part)
    if (!g.has_vertex(v))
      return CheckResult::fail(std::string(label) + " contains unknown vertex " + std::to_string(v));
  for (EdgeId id : inner) {
    if (!g.has_edge(id))
      return CheckResult::fail(std::string("inner edge set of ") + label + " contains unknown edge " +
                               std::to_string(id));
    const Edge& e = g.edge(id);
    if (!set_contains(part, e.u) || !set_contains(part, e.v))
      return CheckResult::fail(std::string("inner edge ") + std::to_string(id) + " leaves " + label);
  }
  if (!spans_connectedly(g, part, inner))
    return CheckResult::fail(std::string(label) + " is not connected by its inner edges");
  return CheckResult::pass();
}

}  // namespace

CheckResult verify_model(const MultiGraph& g, const ThetaCertificate& c) {
  if (c.r < 1) return CheckResult::fail("r must be positive");
  if (!is_sorted_unique(c.inner1) || !is_sorted_unique(c.inner2) || !is_sorted_unique(c.cross))
    return CheckResult::fail("edge sets must be sorted and duplicate-free");
  if (auto res = check_part(g, "part1", c.part1, c.inner1); !res) return res;
  if (auto res = check_part(g, "part2", c.part2, c.inner2); !res) return res;
  if (!sets_disjoint(c.part1, c.part2)) return CheckResult::fail("parts share a vertex");
  if (static_cast<int>(c.cross.size()) != c.r)
    return CheckResult::fail("cross edge count is " + std::to_string(c.cross.size()) + ", expected " +
                             std::to_string(c.r));
  for (EdgeId id : c.cross) {
    if (!g.has_edge(id)) return CheckResult::fail("cross edge " + std::to_string(id) + " is unknown");
    const Edge& e = g.edge(id);
    bool u1 = set_contains(c.part1, e.u), v1 = set_contains(c.part1, e.v);
    bool u2 = set_contains(c.part2, e.u), v2 = set_contains(c.part2, e.v);
    bool spans = (u1 && v2) || (u2 && v1);
    if (!spans)
      return CheckResult::fail("cross edge " + std::to_string(id) + " does not join the two parts");
  }
  if (!sets_disjoint(c.inner1, c.inner2) || !sets_disjoint(c.inner1, c.cross) ||
      !sets_disjoint(c.inner2, c.cross))
    return CheckResult::fail("inner and cross edge sets overlap");
  return CheckResult::pass();
}

EdgeSet model_edges(const ThetaCertificate& c) {
  return set_union_of(set_union_of(c.inner1, c.inner2), c.cross);
}

VertexSet model_vertices(const ThetaCertificate& c) { return set_union_of(c.part1, c.part2); }

CheckResult verify_packing(const MultiGraph& g, const PackingWitness& w) {
  for (std::size_t i = 0; i < w.certificates.size(); ++i) {
    if (auto res = verify_model(g, w.certificates[i]); !res)
      return CheckResult::fail("certificate " + std::to_string(i) + ": " + res.reason);
  }
  for (std::size_t i = 0; i < w.certificates.size(); ++i)
    for (std::size_t j = i + 1; j < w.certificates.size(); ++j) {
      bool clash = w.disjointness == Disjointness::edge
                       ? !sets_disjoint(model_edges(w.certificates[i]), model_edges(w.certificates[j]))
                       : !sets_disjoint(model_vertices(w.certificates[i]),
                                        model_vertices(w.certificates[j]));
      if (clash)
        return CheckResult::fail("certificates " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are not disjoint");
    }
  return CheckResult::pass();
}

nlohmann::json certificate_to_json(const ThetaCertificate& c) {
  return nlohmann::json{{"r", c.r},         {"part1", c.part1},   {"part2", c.part2},
                        {"inner1", c.inner1}, {"inner2", c.inner2}, {"cross", c.cross}};
}

namespace {

std::vector<int> int_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("certificate missing field '") + key + "'");
  const auto& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("certificate field '") + key + "' must be an array");
  std::vector<int> out;
  for (const auto& x : a) {
    if (!x.is_number_integer()) throw ParseError(std::string("non-integer entry in '") + key + "'");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

ThetaCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  if (!j.contains("r") || !j.at("r").is_number_integer())
    throw ParseError("certificate missing integer field 'r'");
  ThetaCertificate c;
  c.r = j.at("r").get<int>();
  c.part1 = int_array(j, "part1");
  c.part2 = int_array(j, "part2");
  c.inner1 = int_array(j, "inner1");
  c.inner2 = int_array(j, "inner2");
  c.cross = int_array(j, "cross");
  return c;
}

nlohmann::json packing_to_json(const PackingWitness& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : w.certificates) arr.push_back(certificate_to_json(c));
  return arr;
}

PackingWitness packing_from_json(const nlohmann::json& j, Disjointness d) {
  if (!j.is_array()) throw ParseError("packing witness must be a JSON array of certificates");
  PackingWitness w;
  w.disjointness = d;
  for (const auto& item : j) w.certificates.push_back(certificate_from_json(item));
  return w;
}

}  // namespace theta
