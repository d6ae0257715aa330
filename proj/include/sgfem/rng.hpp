#pragma once

#include <cstdint>

namespace sgfem {

// splitmix64 stream. Cheap to seed, so every sample index gets its own
// stream derived from (seed, index); results do not depend on how samples
// are distributed over worker threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 uniform bits
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // [-1, 1)
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    mixer.next();
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace sgfem
