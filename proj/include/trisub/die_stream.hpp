#pragma once

#include <cstdint>

namespace trisub {

/// Seeded fair-die stream backed by splitmix64 (Steele, Lea, Flood 2014).
/// The generator is fixed so that traces reproduce bit for bit across
/// platforms: state advances by the golden-gamma increment and the output
/// is the standard three-stage mix. Die rolls use rejection below
/// 2^64 - (2^64 mod 6), so they are exactly uniform on 1..6.
class DieStream {
 public:
  explicit DieStream(std::uint64_t seed) : state_(seed), seed_(seed) {}

  std::uint64_t seed_used() const { return seed_; }
  std::uint64_t position() const { return position_; }

  /// Next raw 64-bit word.
  std::uint64_t next_u64() {
    ++position_;
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Fair die roll in 1..6, free of modulo bias.
  int roll() {
    constexpr std::uint64_t bound = ~std::uint64_t{0} - 3;  // 2^64 - 4 = 6 * (2^64 div 6)
    for (;;) {
      const std::uint64_t v = next_u64();
      if (v < bound) return 1 + static_cast<int>(v % 6);
    }
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
};

/// Deterministic seed for worker k of a fan-out rooted at `seed`: the
/// (k+1)-th output of a splitmix64 stream seeded with `seed`. Distinct
/// workers get decorrelated streams and reruns are reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  DieStream s(seed);
  std::uint64_t v = 0;
  for (std::uint64_t i = 0; i <= k; ++i) v = s.next_u64();
  return v;
}

}  // namespace trisub
