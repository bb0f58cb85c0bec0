#include "theta/generators.hpp"

#include <stdexcept>

#include "theta/errors.hpp"

namespace theta {

MultiGraph make_theta(int r) {
  if (r < 1) throw std::invalid_argument("make_theta: r must be at least 1");
  MultiGraph g;
  for (int i = 0; i < r; ++i) g.add_edge(0, 1);
  return g;
}

MultiGraph make_cycle(int n) {
  if (n < 2) throw std::invalid_argument("make_cycle: n must be at least 2");
  MultiGraph g;
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

MultiGraph make_clique(int n) {
  if (n < 1) throw std::invalid_argument("make_clique: n must be at least 1");
  MultiGraph g;
  g.add_vertex(0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

MultiGraph make_wheel(int n) {
  if (n < 3) throw std::invalid_argument("make_wheel: rim needs at least 3 vertices");
  MultiGraph g;
  for (int i = 1; i <= n; ++i) g.add_edge(0, i);
  for (int i = 1; i <= n; ++i) g.add_edge(i, i % n + 1);
  return g;
}

MultiGraph make_wall(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("make_wall: width and height must be at least 1");
  }
  const int cols = 2 * width + 2;
  auto id = [cols](int row, int col) { return row * cols + col; };

  MultiGraph g;
  for (int row = 0; row <= height; ++row) {
    for (int col = 0; col + 1 < cols; ++col) g.add_edge(id(row, col), id(row, col + 1));
  }
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < cols; ++col) {
      if ((row + col) % 2 == 0) g.add_edge(id(row, col), id(row + 1, col));
    }
  }

  // Trim the loose corner studs the alternation leaves behind.
  while (true) {
    VertexSet drop;
    for (VertexId v : g.vertex_list()) {
      if (g.degree(v) <= 1) drop.push_back(v);
    }
    if (drop.empty()) break;
    g = g.remove_vertices(drop);
  }
  return g;
}

MultiGraph random_biconnected(int n, int extra, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_biconnected: n must be at least 3");
  if (extra < 0) throw std::invalid_argument("random_biconnected: extra must be nonnegative");
  MultiGraph g = make_cycle(n);
  SplitMix64 rng(seed);
  for (int i = 0; i < extra; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    while (v == u) v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    g.add_edge(u, v);
  }
  if (!g.is_connected() || biconnected_components(g).size() != 1) {
    throw std::logic_error("random_biconnected produced a non-biconnected graph");
  }
  return g;
}

}  // namespace theta
