#pragma once

#include <cstdint>
#include <random>

namespace rolemine {

// std::uniform_int_distribution is implementation-defined, so anything that
// must reproduce across standard libraries draws through these instead.

inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
  if (bound <= 1) return 0;
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline bool bernoulli(std::mt19937_64& rng, double p) { return uniform_unit(rng) < p; }

}  // namespace rolemine
