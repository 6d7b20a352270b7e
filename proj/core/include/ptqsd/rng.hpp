// SPDX-License-Identifier: Apache-2.0
//
// Seeded, implementation-independent randomness. std::mt19937_64 provides the
// engine (its output sequence is fixed by the standard); uniform and
// categorical draws are hand-rolled because std::*_distribution is free to
// differ between standard libraries.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ptqsd {

/// SplitMix64 finalizer; the backbone of substream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Substream k of a master seed. Tasks own disjoint substreams, so parallel
/// and serial execution draw identical numbers:
///   seed_k = splitmix64(master ^ splitmix64(k + 1)).
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t k) {
  return splitmix64(master ^ splitmix64(k + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Index drawn from unnormalized weights summing to <= 1; any leftover
  /// mass maps to index weights.size() (the "lost" outcome).
  std::size_t categorical(std::span<const double> weights) {
    const double u = uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cum += weights[i];
      if (u < cum) return i;
    }
    return weights.size();
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ptqsd
