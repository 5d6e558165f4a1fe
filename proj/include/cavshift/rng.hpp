#pragma once

#include <cstdint>

// Counter-based random stream: every draw is a pure function of
// (seed, stream, counter), so parallel and serial sweeps produce identical
// samples for a fixed seed.

namespace cavshift::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_key(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

/// Uniform in (0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t bits = hash_key(seed, stream, counter);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two counter draws.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

}  // namespace cavshift::rng
