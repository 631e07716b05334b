#pragma once

// Random streams used by the Monte Carlo routines.
//
// Each work chunk k of a run with seed s draws from
// std::mt19937_64(chunk_seed(s, k)), where chunk_seed applies the SplitMix64
// finalizer to s + (k + 1) * 0x9E3779B97F4A7C15. Doubles are built from the
// top 53 bits, so results do not depend on the standard library's
// distribution implementations.

#include <cstdint>
#include <random>

namespace hetcache {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed + chunk * 0x9E3779B97F4A7C15ULL);
}

using Engine = std::mt19937_64;

/// Uniform double in [0, 1).
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hetcache
