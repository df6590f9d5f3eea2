#pragma once

#include <cstdint>

namespace ohmnet {

// Counter-based randomness: every draw is a pure function of its key tuple,
// so results do not depend on iteration order or thread schedule.

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t counter_hash(uint64_t seed, uint64_t a, uint64_t b,
                             uint64_t c) {
  uint64_t h = mix64(seed);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

// Uniform in [0, 1) with 53-bit resolution.
inline double to_unit(uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

inline double unit_draw(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return to_unit(counter_hash(seed, a, b, c));
}

}  // namespace ohmnet
