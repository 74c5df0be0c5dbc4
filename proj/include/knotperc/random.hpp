#pragma once

#include <cstdint>
#include <random>

namespace knotperc {

/// SplitMix64 finalizer. Used to derive independent stream seeds and to hash
/// face keys into perturbation weights.
constexpr std::uint64_t avalanche(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream seed of sample `index` under `base_seed`.
constexpr std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return avalanche(avalanche(base_seed) ^ avalanche(index + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0,1) from the top 53 bits of a word.
constexpr double unit_interval(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Exactly uniform draws on {0,1,2}: 2-bit chunks of a 64-bit word, chunk 3 rejected.
class TernarySource {
public:
  explicit TernarySource(std::uint64_t seed) : engine_(seed) {}

  std::uint8_t next() {
    for (;;) {
      if (chunks_left_ == 0) {
        word_ = engine_();
        chunks_left_ = 32;
      }
      const auto chunk = static_cast<std::uint8_t>(word_ & 3U);
      word_ >>= 2;
      --chunks_left_;
      if (chunk != 3) return chunk;
    }
  }

private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  int chunks_left_ = 0;
};

}  // namespace knotperc
