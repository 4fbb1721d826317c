#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mergecoord {

// Deterministic sampling helpers. The uniform mapping and the inverse-CDF
// draw below are spelled out (instead of <random> distributions) because
// distribution sequences are implementation-defined and every seeded output
// in this project must be reproducible.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Decorrelated child seed for substream `stream` of `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  return splitmix64(s);
}

/// Uniform double in [0, 1) with 53-bit resolution.
inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Draw from the displaced exponential law: density
/// f(h) = exp(-(h - tau) / (h_bar - tau)) / (h_bar - tau) for h >= tau.
inline double sample_displaced_exponential(std::mt19937_64& rng, double h_bar, double tau) {
  double u = canonical(rng);
  return tau - (h_bar - tau) * std::log1p(-u);
}

}  // namespace mergecoord
