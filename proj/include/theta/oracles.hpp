#pragma once

#include <optional>
#include <vector>

#include "theta/certificate.hpp"
#include "theta/graph.hpp"

namespace theta {

/// Size limits for the exact searches. Both caps must hold; a graph beyond
/// either gets a BudgetError ("scale"), never a silently wrong answer.
/// Masks bound the absolute ceiling at 62 vertices/edges regardless of the
/// configured values.
struct Budget {
  int max_vertices = 12;
  int max_edges = 24;
};

/// Reads THETA_EPSA_BUDGET ("<vertices>,<edges>", e.g. "12,24") if set and
/// well-formed, otherwise returns the defaults.
Budget budget_from_env();

/// Throws BudgetError when g exceeds the budget (or the hard mask limit).
void check_budget(const MultiGraph& g, const Budget& b);

/// Existence only: does g contain two disjoint connected vertex sets joined
/// by at least r edges? Scans connected bipartitions per component, which is
/// exhaustive: any such pair extends to a full bipartition of its component
/// without losing boundary edges.
bool has_theta_model(const MultiGraph& g, int r, const Budget& b = {});

/// Every inclusion-minimal model edge set, one certificate each, in
/// canonical order: ascending edge count, then lexicographic edge ids.
/// part1 is always the side holding the smaller minimum vertex id.
std::vector<ThetaCertificate> enumerate_minimal_models(const MultiGraph& g, int r,
                                                       const Budget& b = {});

/// Complete search for a model of theta_r (two vertices, r parallel edges)
/// as a contraction. Returns the certificate minimizing (edge count, then
/// lexicographic edge ids), or nothing when no model exists. Requires r >= 2.
std::optional<ThetaCertificate> find_model(const MultiGraph& g, int r, const Budget& b = {});

/// Maximum family of pairwise edge-disjoint models, with certificates.
/// Branch and bound over the minimal models in canonical order; the witness
/// is the first optimal family in that order.
PackingWitness edge_packing_exact(const MultiGraph& g, int r, const Budget& b = {});

/// Maximum family of pairwise vertex-disjoint models.
PackingWitness vertex_packing_exact(const MultiGraph& g, int r, const Budget& b = {});

/// Minimum edge set meeting every model: subsets searched in increasing
/// size (iterative deepening), so the first hit is optimal. The result
/// leaves g model-free by construction and is re-checked before returning.
EdgeSet edge_cover_exact(const MultiGraph& g, int r, const Budget& b = {});

/// Minimum vertex set meeting every model.
VertexSet vertex_cover_exact(const MultiGraph& g, int r, const Budget& b = {});

}  // namespace theta
