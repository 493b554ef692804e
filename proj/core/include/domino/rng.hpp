#pragma once

#include <cstdint>
#include <random>

namespace domino {

/// splitmix64 step (Vigna). Used to derive per-replica seed streams from a
/// single base seed so ensemble members are decorrelated but replayable.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of stream `k` derived from `base`: the (k+1)-th splitmix64 output.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t k) {
  std::uint64_t s = base;
  std::uint64_t v = 0;
  for (std::uint64_t j = 0; j <= k; ++j) v = splitmix64_next(s);
  return v;
}

/// Seeded mt19937_64 with draw helpers whose outputs do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by 128-bit multiply-shift. The modulo
  /// bias is bound/2^64, far below anything observable here.
  std::int64_t uniform_below(std::int64_t bound) {
    const auto b = static_cast<unsigned __int128>(static_cast<std::uint64_t>(bound));
    return static_cast<std::int64_t>(
        static_cast<std::uint64_t>((b * next_u64()) >> 64));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace domino
