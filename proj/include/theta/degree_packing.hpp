#pragma once

#include <optional>

#include "theta/certificate.hpp"
#include "theta/graph.hpp"
#include "theta/oracles.hpp"

namespace theta {

/// Constructive packing around one high-degree vertex of a biconnected
/// graph: k edge-disjoint certificates, each pairing that vertex against a
/// subtree of a Steiner tree spanning its neighbourhood. Requires k >= 1,
/// r >= 2, g biconnected, and a vertex with at least 2kr distinct
/// neighbours; throws std::invalid_argument when a precondition fails. The
/// finished family is re-verified and a CertificateError signals an
/// internal inconsistency.
PackingWitness pack_via_high_degree(const MultiGraph& g, int k, int r);

/// Packing assembled per biconnected component: the degree construction
/// where its hypothesis holds (good for floor(max neighbour count / 2r)
/// certificates), the exact oracle otherwise (the budget applies only
/// there). Components are visited by descending edge count. Returns a
/// combined witness of exactly k certificates once the running total
/// reaches k, or nothing when every component together falls short.
std::optional<PackingWitness> pack_componentwise(const MultiGraph& g, int k, int r,
                                                 const Budget& b = {});

}  // namespace theta
