#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "theta/graph.hpp"

namespace theta {

/// Witness that a graph contains a subgraph contractible to two vertices
/// joined by r parallel edges: two disjoint connected vertex sets, the edges
/// realizing their connectivity, and exactly r edges between them. Inner
/// edge sets are stored explicitly so verification never has to guess which
/// edges realize connectivity (parallel edges would make that ambiguous).
struct ThetaCertificate {
  int r = 0;
  VertexSet part1, part2;
  EdgeSet inner1, inner2, cross;
};

/// Outcome of a structural check; `reason` names the first violated
/// condition when ok is false.
struct CheckResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
  static CheckResult pass() { return {true, ""}; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

/// Checks every certificate invariant against g: parts nonempty, disjoint
/// and present; inner edges inside their part and spanning it connectedly;
/// exactly r cross edges, each with one endpoint per part; the three edge
/// sets pairwise disjoint. Accepts any connected inner edge sets, trees or
/// not. Never throws on a malformed certificate; the reason says what broke.
CheckResult verify_model(const MultiGraph& g, const ThetaCertificate& c);

/// All certificate edges (inner1 + inner2 + cross), sorted.
EdgeSet model_edges(const ThetaCertificate& c);
/// All certificate vertices (part1 + part2), sorted.
VertexSet model_vertices(const ThetaCertificate& c);

enum class Disjointness { edge, vertex };

/// A family of certificates claimed pairwise disjoint in the given sense.
struct PackingWitness {
  std::vector<ThetaCertificate> certificates;
  Disjointness disjointness = Disjointness::edge;
};

/// Each certificate must verify and the family must be pairwise disjoint
/// (edge sets or vertex sets, per the witness flag).
CheckResult verify_packing(const MultiGraph& g, const PackingWitness& w);

/// JSON shape: {"r":…, "part1":[…], "part2":[…], "inner1":[…], "inner2":[…],
/// "cross":[…]}. A packing witness is a plain JSON array of certificates.
nlohmann::json certificate_to_json(const ThetaCertificate& c);
ThetaCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json packing_to_json(const PackingWitness& w);
PackingWitness packing_from_json(const nlohmann::json& j, Disjointness d = Disjointness::edge);

}  // namespace theta
