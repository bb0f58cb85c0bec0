#pragma once

#include <cstdint>

#include "theta/graph.hpp"

namespace theta {

/// Splitmix-style 64-bit generator. Fixed constants, so a seed produces the
/// same stream on every platform; good enough for test-case shuffling, not
/// for anything cryptographic.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

/// Two vertices joined by r parallel edges, r >= 1.
MultiGraph make_theta(int r);

/// Cycle on n vertices, n >= 2 (n = 2 gives a pair of parallel edges).
MultiGraph make_cycle(int n);

/// Complete graph on n vertices, n >= 1.
MultiGraph make_clique(int n);

/// Hub vertex 0 plus a rim cycle 1..n with all spokes, n >= 3.
MultiGraph make_wheel(int n);

/// Planar brick wall, `width` bricks per row and `height` rows, built from a
/// grid with alternating vertical edges and pruned of degree-one corners.
/// Max degree 3; width, height >= 1.
MultiGraph make_wall(int width, int height);

/// Cycle on n vertices (n >= 3) plus `extra` random chords (parallel chords
/// can occur; that is fine in a multigraph). Biconnected by construction and
/// re-checked. Deterministic in (n, extra, seed).
MultiGraph random_biconnected(int n, int extra, std::uint64_t seed);

}  // namespace theta
