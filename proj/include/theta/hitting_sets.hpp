#pragma once

#include <string>

#include "theta/certificate.hpp"
#include "theta/graph.hpp"
#include "theta/oracles.hpp"

namespace theta {

/// Vertex set meeting every model, built by recursive separation: an
/// instance with at most one model is solved exactly, anything larger is
/// split by a separation triple and the two sides are handled recursively
/// (the separator joins the result). Recursion depth is checked against the
/// geometric decay of the packing number. The result is re-verified; all
/// oracle work must fit the budget.
VertexSet vertex_hitting_recursive(const MultiGraph& g, int r, const Budget& b = {},
                                   int tw_budget = 14);

/// Translates a vertex hitting set into an edge hitting set: Y = every edge
/// incident to x. Requires the max neighbour count to stay below 2kr (a
/// graph at or above it should be packed instead; std::invalid_argument) and
/// x to really hit every model (checked by removal, CertificateError
/// otherwise). The budget covers only that validity check.
EdgeSet edge_hitting_from_vertex(const MultiGraph& g, const VertexSet& x, int k, int r,
                                 const Budget& b = {});

/// Outcome of the packing-or-cover run. Exactly one side is meaningful:
/// `packing` holds k edge-disjoint certificates when `packed` is true,
/// otherwise `cover` is an edge set whose removal leaves the graph
/// model-free and `cover_path` names the construction that produced it
/// ("exact" or "recursive").
struct PipelineResult {
  bool packed = false;
  PackingWitness packing;
  EdgeSet cover;
  std::string cover_path;
};

/// Either k edge-disjoint model certificates or an edge hitting set.
/// Biconnected components are processed by descending edge count: each one
/// is packed constructively when its max neighbour count supports the whole
/// remaining demand, topped up with the exact oracle when it fits the
/// budget, and skipped (contributing only what the degree construction
/// guarantees) otherwise. If the total reaches k the packing is returned;
/// otherwise every component still holding a model gets a vertex hitting
/// set (exact by default, the recursive construction on request) translated
/// to edges. Both branches re-verify their result before returning. A
/// component that the cover branch cannot handle within budget raises
/// BudgetError with the progress so far.
PipelineResult edge_ep_pipeline(const MultiGraph& g, int k, int r, const Budget& b = {},
                                int tw_budget = 14, bool use_recursive_cover = false);

/// Reporting constants for the claimed cover bound. None of them affects
/// correctness anywhere; they only parameterize the formula printed by
/// gap_report. `c` must lie in (0,1), `A` positive, `alpha` nonnegative,
/// `k0` at least 1 (the formula is evaluated at max(k, k0)). `variant`
/// selects the exponent pair: "quadratic-in-k" uses k^2 r^2, "quartic-in-k"
/// uses k^4 r.
struct BoundParams {
  double A = 1.0;
  double alpha = 1.0;
  double c = 0.9;
  int k0 = 1;
  std::string variant = "quadratic-in-k";
};

/// Measured packing/cover data for one graph next to the configured bound.
/// k_packed and tau_exact are the exact optima; cover_size is what the
/// pipeline's cover branch actually achieves when forced (k = k_packed + 1);
/// bound_claimed = ceil(2 * k_packed * r * f(k_packed)) with f the
/// configured vertex-bound formula; violated flags cover_size above the
/// claim.
struct GapReport {
  int k_packed = 0;
  int cover_size = 0;
  int tau_exact = 0;
  long long bound_claimed = 0;
  bool violated = false;
  std::string cover_path;
  BoundParams params;
};

/// The configured vertex-bound formula:
/// (1/(1-c)) * 4 * A * k^d * r^e * max(1, log2(2 k^2 r^2))^alpha
/// with (d,e) = (2,2) or (4,1) per the variant, evaluated at max(k, k0).
/// Throws std::invalid_argument on out-of-range parameters.
double vertex_bound_value(const BoundParams& p, int k, int r);

/// Exact oracle run plus a forced cover-branch pipeline run, folded into a
/// GapReport. Reporting only; each field is computed independently of the
/// formula being reported.
GapReport gap_report(const MultiGraph& g, int r, const BoundParams& p = {},
                     const Budget& b = {}, int tw_budget = 14,
                     bool use_recursive_cover = false);

}  // namespace theta
