#include "theta/degree_packing.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "theta/errors.hpp"
#include "theta/marked_tree.hpp"

namespace theta {

namespace {

// Maximum neighbour count wins; ties go to the smaller id because vertex
// iteration is ascending.
VertexId best_hub(const MultiGraph& g) {
  VertexId best = -1;
  int best_count = -1;
  for (VertexId v : g.vertices()) {
    int c = g.neighbor_count(v);
    if (c > best_count) {
      best_count = c;
      best = v;
    }
  }
  return best;
}

EdgeId smallest_edge_between(const MultiGraph& g, VertexId a, VertexId b) {
  for (EdgeId e : g.incident_edges(a)) {
    if (g.edge(e).other(a) == b) return e;
  }
  throw CertificateError("no edge joins the hub to a marked vertex");
}

}  // namespace

PackingWitness pack_via_high_degree(const MultiGraph& g, int k, int r) {
  if (k < 1) throw std::invalid_argument("pack_via_high_degree: k must be at least 1");
  if (r < 2) throw std::invalid_argument("pack_via_high_degree: r must be at least 2");
  if (!g.is_connected() || biconnected_components(g).size() != 1) {
    throw std::invalid_argument("pack_via_high_degree: graph must be biconnected");
  }

  const VertexId hub = best_hub(g);
  const VertexSet nbrs = g.neighbors(hub);
  if (static_cast<long long>(nbrs.size()) < 2LL * k * r) {
    throw std::invalid_argument("pack_via_high_degree: no vertex has 2kr distinct neighbours");
  }

  // Removing the hub keeps the rest connected (biconnectivity), so the
  // neighbourhood has a Steiner tree there. Marks flag the neighbours.
  MarkedTree host;
  host.tree = minimal_spanning_subtree(g.remove_vertices({hub}), nbrs);
  for (VertexId v : host.tree.vertices()) {
    host.marks[v] = set_contains(nbrs, v) ? 1 : 0;
  }
  host.root = *host.tree.vertices().begin();

  PackingWitness out;
  for (const MarkedTree& part : extract_subtrees(host, k, r)) {
    VertexSet marked;
    for (const auto& [v, m] : part.marks) {
      if (m > 0) marked.push_back(v);
    }
    if (static_cast<int>(marked.size()) < r) {
      throw CertificateError("extracted subtree carries fewer than r marks");
    }
    ThetaCertificate cert;
    cert.r = r;
    cert.part1 = {hub};
    cert.part2 = part.tree.vertex_list();
    cert.inner2 = part.tree.edge_ids();
    for (int i = 0; i < r; ++i) {
      cert.cross.push_back(smallest_edge_between(g, hub, marked[i]));
    }
    set_normalize(cert.cross);
    out.certificates.push_back(std::move(cert));
  }

  CheckResult chk = verify_packing(g, out);
  if (!chk) throw CertificateError("degree construction failed its own check: " + chk.reason);
  return out;
}

std::optional<PackingWitness> pack_componentwise(const MultiGraph& g, int k, int r,
                                                 const Budget& b) {
  if (k < 1) throw std::invalid_argument("pack_componentwise: k must be at least 1");
  if (r < 2) throw std::invalid_argument("pack_componentwise: r must be at least 2");

  std::vector<MultiGraph> comps = biconnected_components(g);
  std::stable_sort(comps.begin(), comps.end(), [](const MultiGraph& x, const MultiGraph& y) {
    return x.edge_count() > y.edge_count();
  });

  PackingWitness out;
  for (const MultiGraph& comp : comps) {
    int need = k - static_cast<int>(out.certificates.size());
    if (need <= 0) break;
    int cap = comp.max_neighbor_degree() / (2 * r);
    if (cap >= 1) {
      PackingWitness part = pack_via_high_degree(comp, std::min(cap, need), r);
      for (auto& cert : part.certificates) out.certificates.push_back(std::move(cert));
    } else {
      PackingWitness part = edge_packing_exact(comp, r, b);
      int take = std::min(static_cast<int>(part.certificates.size()), need);
      for (int i = 0; i < take; ++i) out.certificates.push_back(std::move(part.certificates[i]));
    }
  }

  if (static_cast<int>(out.certificates.size()) < k) return std::nullopt;
  CheckResult chk = verify_packing(g, out);
  if (!chk) throw CertificateError("componentwise packing failed its own check: " + chk.reason);
  return out;
}

}  // namespace theta
