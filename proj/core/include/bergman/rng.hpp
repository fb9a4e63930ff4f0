#ifndef BERGMAN_RNG_HPP
#define BERGMAN_RNG_HPP

#include <cstdint>

namespace bergman {

/// Counter-based generator: every variate is a pure function of
/// (seed, stream, index, slot), so draws are reproducible bit-for-bit,
/// independent across streams, and order-free. The mixer is the SplitMix64
/// finalizer applied to the combined key.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index,
                     std::uint64_t slot = 0) const {
    std::uint64_t h = mix(seed_ + 0x9E3779B97F4A7C15ULL);
    h = mix(h ^ (0xBF58476D1CE4E5B9ULL * (stream + 1)));
    h = mix(h ^ (0x94D049BB133111EBULL * (index + 1)));
    h = mix(h ^ (0x9E3779B97F4A7C15ULL * (slot + 1)));
    return h;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t index,
                 std::uint64_t slot = 0) const {
    return static_cast<double>(bits(stream, index, slot) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace bergman

#endif  // BERGMAN_RNG_HPP
