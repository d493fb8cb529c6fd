#pragma once

#include <cstdint>
#include <string_view>

namespace prefpipe {

/// 64-bit FNV-1a. Used for content hashes and seed derivation; stable across
/// platforms and runs.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// splitmix64; small, fast, and reproducible everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be > 0.
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

  /// Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

/// Named substream derivation: all randomness in the pipeline flows from one
/// root seed through (stage, key, index) labels, so stages are reproducible
/// independently of execution order.
inline std::uint64_t substream(std::uint64_t root, std::string_view stage,
                               std::string_view key = {},
                               std::uint64_t index = 0) {
  std::uint64_t h = fnv1a64(stage, 0xcbf29ce484222325ull ^ root);
  h = fnv1a64(key, h);
  return mix64(h ^ mix64(index));
}

}  // namespace prefpipe
