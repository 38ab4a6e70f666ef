#pragma once

// Seeded, platform-independent randomness. The standard distributions are
// implementation-defined, so bounded draws are done here directly on the
// engine output to keep every run byte-reproducible across toolchains.

#include <cstdint>
#include <random>

namespace rzk {

/// Independent sub-streams derived from a single session seed.
enum class Stream : std::uint64_t {
  kGraph = 1,
  kNodeSequence = 2,
  kProverRounds = 3,
  kVerifier = 4,
  kTiming = 5,
  kAttack = 6,
};

/// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(stream)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t uniform(std::uint64_t bound) {
    // Lemire's multiply-and-reject.
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::uint8_t trit() { return static_cast<std::uint8_t>(uniform(3)); }
  bool bit() { return (engine_() >> 63) != 0; }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rzk
