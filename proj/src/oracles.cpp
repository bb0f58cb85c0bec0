#include "theta/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "theta/errors.hpp"

namespace theta {

namespace {

// Mask arithmetic caps out at 62 slots no matter what the budget says.
constexpr int kMaskLimit = 62;

int lowest_bit(std::uint64_t mask) { return std::countr_zero(mask); }

// Index-compressed view of a multigraph: vertices and edges renumbered to
// 0..n-1 / 0..m-1 so sets become 64-bit masks. Slot order follows id order,
// which keeps every mask-level tie-break aligned with the public ids.
struct Compact {
  std::vector<VertexId> vert_ids;              // index -> original id
  std::vector<EdgeId> edge_ids;                // slot -> original id
  std::vector<std::pair<int, int>> ends;       // slot -> endpoint indices
  std::vector<std::uint64_t> adj;              // index -> neighbor mask
  int n = 0;
  int m = 0;

  explicit Compact(const MultiGraph& g) {
    vert_ids = g.vertex_list();
    n = static_cast<int>(vert_ids.size());
    std::map<VertexId, int> vidx;
    for (int i = 0; i < n; ++i) vidx[vert_ids[i]] = i;
    adj.assign(static_cast<std::size_t>(n), 0);
    for (const auto& [id, e] : g.edges()) {
      int ui = vidx.at(e.u);
      int vi = vidx.at(e.v);
      edge_ids.push_back(id);
      ends.emplace_back(ui, vi);
      adj[static_cast<std::size_t>(ui)] |= std::uint64_t{1} << vi;
      adj[static_cast<std::size_t>(vi)] |= std::uint64_t{1} << ui;
    }
    m = static_cast<int>(edge_ids.size());
  }

  VertexSet vertex_ids_of(std::uint64_t mask) const {
    VertexSet out;
    while (mask) {
      int i = lowest_bit(mask);
      mask &= mask - 1;
      out.push_back(vert_ids[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  EdgeSet edge_ids_of(std::uint64_t mask) const {
    EdgeSet out;
    while (mask) {
      int s = lowest_bit(mask);
      mask &= mask - 1;
      out.push_back(edge_ids[static_cast<std::size_t>(s)]);
    }
    return out;
  }
};

bool mask_connected(const Compact& c, std::uint64_t mask) {
  if (mask == 0) return false;
  std::uint64_t reach = mask & (~mask + 1);
  for (;;) {
    std::uint64_t grown = reach;
    std::uint64_t frontier = reach;
    while (frontier) {
      int v = lowest_bit(frontier);
      frontier &= frontier - 1;
      grown |= c.adj[static_cast<std::size_t>(v)] & mask;
    }
    if (grown == reach) break;
    reach = grown;
  }
  return reach == mask;
}

// Enumerates subtrees that contain every terminal, avoid the forbidden
// vertices, and have all leaves among the terminals. Branches on the lowest
// eligible edge slot (take it or ban it), so each such tree is produced
// exactly once. No produced tree strictly contains another: extra edges of a
// bigger tree would hang off the smaller one and end in non-terminal leaves.
template <typename Fn>
class SteinerTrees {
 public:
  SteinerTrees(const Compact& c, std::uint64_t terminals, std::uint64_t forbidden, Fn emit)
      : c_(c), terminals_(terminals), forbidden_(forbidden), emit_(emit) {}

  void run() {
    if (terminals_ == 0) return;
    if ((terminals_ & (terminals_ - 1)) == 0) {
      emit_(terminals_, 0);
      return;
    }
    std::uint64_t start = terminals_ & (~terminals_ + 1);
    grow(start, 0, 0);
  }

 private:
  void grow(std::uint64_t verts, std::uint64_t tree, std::uint64_t banned) {
    if ((terminals_ & ~verts) == 0) {
      if (leaves_ok(verts, tree)) emit_(verts, tree);
      // Any extension adds vertices outside the terminal set, hence a
      // non-terminal leaf, so stop regardless.
      return;
    }
    if (!still_reachable(verts, banned)) return;
    int slot = next_edge(verts, banned);
    if (slot < 0) return;
    auto [ui, vi] = c_.ends[static_cast<std::size_t>(slot)];
    int fresh = (verts >> ui) & 1 ? vi : ui;
    grow(verts | (std::uint64_t{1} << fresh), tree | (std::uint64_t{1} << slot), banned);
    grow(verts, tree, banned | (std::uint64_t{1} << slot));
  }

  // Smallest usable slot: not banned, exactly one endpoint inside, the other
  // endpoint not forbidden.
  int next_edge(std::uint64_t verts, std::uint64_t banned) const {
    for (int s = 0; s < c_.m; ++s) {
      if ((banned >> s) & 1) continue;
      auto [ui, vi] = c_.ends[static_cast<std::size_t>(s)];
      bool in_u = (verts >> ui) & 1;
      bool in_v = (verts >> vi) & 1;
      if (in_u == in_v) continue;
      int outside = in_u ? vi : ui;
      if ((forbidden_ >> outside) & 1) continue;
      return s;
    }
    return -1;
  }

  // Prune: every missing terminal must still be reachable through edges
  // that are neither banned nor blocked by a forbidden endpoint.
  bool still_reachable(std::uint64_t verts, std::uint64_t banned) const {
    std::uint64_t reach = verts;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < c_.m; ++s) {
        if ((banned >> s) & 1) continue;
        auto [ui, vi] = c_.ends[static_cast<std::size_t>(s)];
        if ((forbidden_ >> ui) & 1 || (forbidden_ >> vi) & 1) continue;
        bool in_u = (reach >> ui) & 1;
        bool in_v = (reach >> vi) & 1;
        if (in_u == in_v) continue;
        reach |= (std::uint64_t{1} << ui) | (std::uint64_t{1} << vi);
        changed = true;
      }
    }
    return (terminals_ & ~reach) == 0;
  }

  bool leaves_ok(std::uint64_t verts, std::uint64_t tree) const {
    int deg[64] = {0};
    std::uint64_t t = tree;
    while (t) {
      int s = lowest_bit(t);
      t &= t - 1;
      ++deg[c_.ends[static_cast<std::size_t>(s)].first];
      ++deg[c_.ends[static_cast<std::size_t>(s)].second];
    }
    std::uint64_t v = verts;
    while (v) {
      int i = lowest_bit(v);
      v &= v - 1;
      if (deg[i] == 1 && !((terminals_ >> i) & 1)) return false;
    }
    return true;
  }

  const Compact& c_;
  std::uint64_t terminals_;
  std::uint64_t forbidden_;
  Fn emit_;
};

struct ModelEntry {
  std::uint64_t edge_mask = 0;
  std::uint64_t vertex_mask = 0;
  EdgeSet edges;  // ascending ids, mirrors edge_mask
  ThetaCertificate cert;
};

ThetaCertificate build_cert(const Compact& c, int r, std::uint64_t wa, std::uint64_t ta,
                            std::uint64_t wb, std::uint64_t tb, std::uint64_t cross) {
  ThetaCertificate cert;
  cert.r = r;
  cert.part1 = c.vertex_ids_of(wa);
  cert.inner1 = c.edge_ids_of(ta);
  cert.part2 = c.vertex_ids_of(wb);
  cert.inner2 = c.edge_ids_of(tb);
  cert.cross = c.edge_ids_of(cross);
  if (cert.part2.front() < cert.part1.front()) {
    std::swap(cert.part1, cert.part2);
    std::swap(cert.inner1, cert.inner2);
  }
  return cert;
}

// Every minimal model decomposes uniquely as: a set of r cross edges, an
// assignment of their endpoints to the two sides, and one spanning tree per
// side whose leaves are all cross endpoints. Enumerating those pieces and
// filtering to inclusion-minimal edge sets therefore yields exactly the
// minimal models.
std::vector<ModelEntry> enumerate_entries(const MultiGraph& g, int r, const Budget& b) {
  if (r < 1) throw std::invalid_argument("enumerate_minimal_models: r must be at least 1");
  check_budget(g, b);
  Compact c(g);
  std::map<std::uint64_t, ModelEntry> by_mask;
  if (c.m < r) return {};

  std::vector<int> comb(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) comb[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::uint64_t cross = 0;
    for (int s : comb) cross |= std::uint64_t{1} << s;
    for (std::uint64_t orient = 0; orient < (std::uint64_t{1} << r); ++orient) {
      std::uint64_t amask = 0;
      std::uint64_t bmask = 0;
      for (int i = 0; i < r; ++i) {
        auto [ui, vi] = c.ends[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
        int a = ((orient >> i) & 1) ? vi : ui;
        int bb = ((orient >> i) & 1) ? ui : vi;
        amask |= std::uint64_t{1} << a;
        bmask |= std::uint64_t{1} << bb;
      }
      if (amask & bmask) continue;
      // Each unordered orientation pair shows up twice; keep the one whose
      // A side owns the smaller endpoint.
      if (lowest_bit(amask) > lowest_bit(bmask)) continue;
      SteinerTrees ta(c, amask, bmask, [&](std::uint64_t wa, std::uint64_t ea) {
        SteinerTrees tb(c, bmask, wa, [&](std::uint64_t wb, std::uint64_t eb) {
          std::uint64_t full = cross | ea | eb;
          if (by_mask.count(full)) return;
          ModelEntry entry;
          entry.edge_mask = full;
          entry.vertex_mask = wa | wb;
          entry.edges = c.edge_ids_of(full);
          entry.cert = build_cert(c, r, wa, ea, wb, eb, cross);
          by_mask.emplace(full, std::move(entry));
        });
        tb.run();
      });
      ta.run();
    }
    // Next r-combination of edge slots in lexicographic order.
    int i = r - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == c.m - r + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }

  std::vector<ModelEntry> all;
  all.reserve(by_mask.size());
  for (auto& [mask, entry] : by_mask) all.push_back(std::move(entry));
  std::sort(all.begin(), all.end(), [](const ModelEntry& x, const ModelEntry& y) {
    int px = std::popcount(x.edge_mask);
    int py = std::popcount(y.edge_mask);
    if (px != py) return px < py;
    return x.edges < y.edges;
  });

  std::vector<ModelEntry> minimal;
  for (auto& entry : all) {
    bool dominated = false;
    for (const auto& kept : minimal) {
      if ((kept.edge_mask & ~entry.edge_mask) == 0) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(std::move(entry));
  }
  return minimal;
}

// Maximum pairwise-disjoint subfamily under the given masks. Two passes:
// first the optimum value, then the lexicographically earliest (include
// preferred) family of that size.
struct PackSearch {
  const std::vector<ModelEntry>& entries;
  bool by_vertex = false;
  int best = 0;
  int target = -1;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> witness;
  std::vector<std::uint64_t> suffix_union;  // union of masks from slot i on
  std::vector<int> suffix_min;              // smallest mask popcount from slot i on

  std::uint64_t mask_of(std::size_t i) const {
    return by_vertex ? entries[i].vertex_mask : entries[i].edge_mask;
  }

  void prepare() {
    std::size_t n = entries.size();
    suffix_union.assign(n + 1, 0);
    suffix_min.assign(n + 1, kMaskLimit + 1);
    for (std::size_t i = n; i-- > 0;) {
      suffix_union[i] = suffix_union[i + 1] | mask_of(i);
      suffix_min[i] = std::min(suffix_min[i + 1], std::popcount(mask_of(i)));
    }
  }

  // How many more members could possibly fit: capped both by the entries
  // left and by the free bits they could still draw on. Each member costs
  // at least the smallest mask in the suffix, which tames families of many
  // near-identical masks (parallel bundles in particular).
  int headroom(std::size_t i, std::uint64_t used) const {
    int slots = static_cast<int>(entries.size() - i);
    int pool = std::popcount(suffix_union[i] & ~used);
    return std::min(slots, pool / suffix_min[i]);
  }

  void search(std::size_t i, std::uint64_t used, int count) {
    if (count > best) best = count;
    if (i == entries.size()) return;
    for (std::size_t j = i; j < entries.size(); ++j) {
      if (count + headroom(j, used) <= best) return;
      if (mask_of(j) & used) continue;
      search(j + 1, used | mask_of(j), count + 1);
    }
  }

  bool pick(std::size_t i, std::uint64_t used, int count) {
    if (count == target) {
      witness = chosen;
      return true;
    }
    if (i == entries.size()) return false;
    if (count + headroom(i, used) < target) return false;
    if (!(mask_of(i) & used)) {
      chosen.push_back(i);
      if (pick(i + 1, used | mask_of(i), count + 1)) return true;
      chosen.pop_back();
    }
    return pick(i + 1, used, count);
  }
};

PackingWitness pack_exact(const MultiGraph& g, int r, const Budget& b, bool by_vertex) {
  if (r < 2) throw std::invalid_argument("packing oracle: r must be at least 2");
  auto entries = enumerate_entries(g, r, b);
  PackSearch s{entries};
  s.by_vertex = by_vertex;
  s.prepare();
  s.search(0, 0, 0);
  s.target = s.best;
  s.pick(0, 0, 0);
  PackingWitness w;
  w.disjointness = by_vertex ? Disjointness::vertex : Disjointness::edge;
  for (std::size_t i : s.witness) w.certificates.push_back(entries[i].cert);
  return w;
}

// Minimum hitting set over the minimal-model family, by iterative deepening.
// Hitting every minimal model hits every model, since each model contains a
// minimal one.
struct CoverSearch {
  const std::vector<ModelEntry>& entries;
  bool by_vertex = false;
  std::vector<int> chosen;  // slot or vertex indices along the current path
  // Largest budget already proven hopeless for a given hit mask. Different
  // branch orders reach the same mask over and over; remembering the failures
  // collapses that tree into a DAG without ever cutting off a feasible line.
  std::unordered_map<std::uint64_t, int> failed;

  std::uint64_t mask_of(std::size_t i) const {
    return by_vertex ? entries[i].vertex_mask : entries[i].edge_mask;
  }

  int disjoint_lower_bound(std::uint64_t hit) const {
    std::uint64_t used = 0;
    int lb = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::uint64_t m = mask_of(i);
      if (m & hit) continue;
      if (m & used) continue;
      used |= m;
      ++lb;
    }
    return lb;
  }

  bool give_up(std::uint64_t hit, int budget) {
    auto [it, fresh] = failed.try_emplace(hit, budget);
    if (!fresh && it->second < budget) it->second = budget;
    return false;
  }

  bool dfs(std::uint64_t hit, int budget) {
    std::size_t open = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!(mask_of(i) & hit)) {
        open = i;
        break;
      }
    }
    if (open == entries.size()) return true;
    if (budget == 0) return give_up(hit, budget);
    auto seen = failed.find(hit);
    if (seen != failed.end() && seen->second >= budget) return false;
    if (disjoint_lower_bound(hit) > budget) return give_up(hit, budget);
    std::uint64_t m = mask_of(open);
    while (m) {
      int bit = lowest_bit(m);
      m &= m - 1;
      chosen.push_back(bit);
      if (dfs(hit | (std::uint64_t{1} << bit), budget - 1)) return true;
      chosen.pop_back();
    }
    return give_up(hit, budget);
  }

  std::vector<int> solve() {
    for (int k = 0; k <= kMaskLimit; ++k) {
      chosen.clear();
      if (dfs(0, k)) {
        std::sort(chosen.begin(), chosen.end());
        return chosen;
      }
    }
    throw std::logic_error("cover search exceeded the mask limit");
  }
};

}  // namespace

Budget budget_from_env() {
  Budget b;
  const char* raw = std::getenv("THETA_EPSA_BUDGET");
  if (raw == nullptr) return b;
  std::string s(raw);
  auto comma = s.find(',');
  if (comma == std::string::npos) return b;
  try {
    int v = std::stoi(s.substr(0, comma));
    int e = std::stoi(s.substr(comma + 1));
    if (v > 0 && e > 0) {
      b.max_vertices = v;
      b.max_edges = e;
    }
  } catch (const std::exception&) {
    // Malformed setting: fall back to the defaults.
  }
  return b;
}

void check_budget(const MultiGraph& g, const Budget& b) {
  int vcap = std::min(b.max_vertices, kMaskLimit);
  int ecap = std::min(b.max_edges, kMaskLimit);
  if (g.vertex_count() > vcap || g.edge_count() > ecap) {
    std::ostringstream msg;
    msg << "graph with " << g.vertex_count() << " vertices and " << g.edge_count()
        << " edges exceeds the exact-search budget (" << vcap << " vertices, " << ecap
        << " edges)";
    throw BudgetError(msg.str());
  }
}

bool has_theta_model(const MultiGraph& g, int r, const Budget& b) {
  if (r < 1) throw std::invalid_argument("has_theta_model: r must be at least 1");
  check_budget(g, b);
  for (const auto& comp : g.connected_components()) {
    if (comp.size() < 2) continue;
    MultiGraph sub = g.induced_subgraph(comp);
    Compact c(sub);
    if (c.m < r) continue;
    std::uint64_t full = (c.n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << c.n) - 1;
    std::uint64_t rest = full & ~std::uint64_t{1};
    // Vertex 0 stays on side A; iterate over subsets of the others joining it.
    for (std::uint64_t sub_a = 0;; sub_a = (sub_a - rest) & rest) {
      std::uint64_t a = sub_a | 1;
      std::uint64_t bb = full & ~a;
      if (bb != 0) {
        int crossing = 0;
        for (int s = 0; s < c.m && crossing < r; ++s) {
          auto [ui, vi] = c.ends[static_cast<std::size_t>(s)];
          if (((a >> ui) ^ (a >> vi)) & 1) ++crossing;
        }
        if (crossing >= r && mask_connected(c, a) && mask_connected(c, bb)) return true;
      }
      if (sub_a == rest) break;
    }
  }
  return false;
}

std::vector<ThetaCertificate> enumerate_minimal_models(const MultiGraph& g, int r,
                                                       const Budget& b) {
  std::vector<ThetaCertificate> out;
  for (auto& entry : enumerate_entries(g, r, b)) out.push_back(std::move(entry.cert));
  return out;
}

std::optional<ThetaCertificate> find_model(const MultiGraph& g, int r, const Budget& b) {
  if (r < 2) throw std::invalid_argument("find_model: r must be at least 2");
  auto entries = enumerate_entries(g, r, b);
  if (entries.empty()) return std::nullopt;
  return entries.front().cert;
}

PackingWitness edge_packing_exact(const MultiGraph& g, int r, const Budget& b) {
  return pack_exact(g, r, b, false);
}

PackingWitness vertex_packing_exact(const MultiGraph& g, int r, const Budget& b) {
  return pack_exact(g, r, b, true);
}

EdgeSet edge_cover_exact(const MultiGraph& g, int r, const Budget& b) {
  if (r < 2) throw std::invalid_argument("cover oracle: r must be at least 2");
  auto entries = enumerate_entries(g, r, b);
  Compact c(g);
  CoverSearch s{entries};
  EdgeSet cover;
  for (int slot : s.solve()) cover.push_back(c.edge_ids[static_cast<std::size_t>(slot)]);
  set_normalize(cover);
  if (has_theta_model(g.remove_edges(cover), r, b))
    throw CertificateError("edge cover oracle produced a non-cover");
  return cover;
}

VertexSet vertex_cover_exact(const MultiGraph& g, int r, const Budget& b) {
  if (r < 2) throw std::invalid_argument("cover oracle: r must be at least 2");
  auto entries = enumerate_entries(g, r, b);
  Compact c(g);
  CoverSearch s{entries};
  s.by_vertex = true;
  VertexSet cover;
  for (int idx : s.solve()) cover.push_back(c.vert_ids[static_cast<std::size_t>(idx)]);
  set_normalize(cover);
  if (has_theta_model(g.remove_vertices(cover), r, b))
    throw CertificateError("vertex cover oracle produced a non-cover");
  return cover;
}

}  // namespace theta
