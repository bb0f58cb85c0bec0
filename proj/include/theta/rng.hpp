#pragma once

#include <cstdint>

namespace theta {

/// Deterministic 64-bit generator (splitmix64). The constants below are the
/// standard ones: golden-ratio increment 0x9E3779B97F4A7C15 and the two
/// finalizer multipliers 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB. Same seed,
/// same stream, on every platform; all randomized output in this project
/// (generators, test instances) flows through this type so runs are
/// byte-reproducible.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, bound). Plain modulo: the tiny bias is
  /// irrelevant here, determinism is what matters.
  std::uint64_t next_below(std::uint64_t bound) { return bound ? next() % bound : 0; }

  /// Value in [lo, hi] inclusive.
  long long next_in(long long lo, long long hi) {
    return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool next_bool() { return (next() & 1u) != 0; }

private:
  std::uint64_t state_;
};

}  // namespace theta
