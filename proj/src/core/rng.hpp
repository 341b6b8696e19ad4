#pragma once

#include <cstdint>
#include <random>

namespace urank {

// Deterministic draw stream. std::mt19937_64 is fully pinned by the C++
// standard and the seed is used verbatim, so a (seed, draw order) pair
// reproduces the same stream on any conforming toolchain. Uniform doubles
// take the top 53 bits of one 64-bit draw, giving values in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace urank
