#pragma once

#include <cstdint>

namespace hopflax {

/// 64-bit linear congruential generator (Knuth's MMIX constants).
///
///   state_{k+1} = 6364136223846793005 * state_k + 1442695040888963407  (mod 2^64)
///
/// state_0 is the seed. Each draw advances the state once and returns the
/// top 53 bits scaled into [0, 1). The recurrence is fixed so generated
/// meshes are reproducible across platforms and languages.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace hopflax
