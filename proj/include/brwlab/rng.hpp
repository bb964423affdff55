#pragma once

#include <cstdint>
#include <random>

namespace brw {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Derives an independent stream for (master seed, replica index, salt).
// Replica streams are independent of worker scheduling, so any worker count
// reproduces the same per-replica randomness.
inline Rng make_rng(std::uint64_t master_seed, std::uint64_t replica = 0,
                    std::uint64_t salt = 0) {
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s ^= 0x6a09e667f3bcc909ULL + replica * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(s);
  s ^= 0xbb67ae8584caa73bULL + salt * 0xc2b2ae3d27d4eb4fULL;
  std::uint64_t c = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) {
  // 53-bit mantissa uniform in [0,1)
  return (rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), n >= 1. Unbiased (rejection on the top range).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

inline double normal(Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(rng);
}

}  // namespace brw
