#pragma once

#include <cstdint>

// Seedable, splittable PRNG used everywhere randomness is consumed.
// xoshiro256** seeded through splitmix64, so any 64-bit value is a
// full-entropy seed.  Every experiment record stores the seed it ran
// under; rerunning with the same seed replays the run bit for bit.

namespace zm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 splitmix64(u64& state) {
  u64 z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives an independent child seed from a parent seed and an index.
// Used to fan out per-attempt and per-kernel generators.
inline u64 derive_seed(u64 parent, u64 index) {
  u64 s = parent ^ (0xA0761D6478BD642Full * (index + 1));
  u64 a = splitmix64(s);
  u64 b = splitmix64(s);
  return a ^ (b << 1);
}

class Rng {
 public:
  explicit Rng(u64 seed = 1) {
    u64 s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  u64 next() {
    u64 result = rotl(state_[1] * 5, 7) * 9;
    u64 t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased value in [0, bound) via masked rejection.
  u64 below(u64 bound) {
    u64 mask = ~0ull >> (bound <= 1 ? 63 : __builtin_clzll(bound - 1));
    u64 v;
    do {
      v = next() & mask;
    } while (v >= bound);
    return v;
  }

  // Value in [lo, hi] inclusive.
  u64 range(u64 lo, u64 hi) { return lo + below(hi - lo + 1); }

  bool coin() { return next() >> 63; }

 private:
  static u64 rotl(u64 x, int k) { return (x << k) | (x >> (64 - k)); }
  u64 state_[4];
};

}  // namespace zm
