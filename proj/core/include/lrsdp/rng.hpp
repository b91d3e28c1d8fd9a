#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lrsdp {

/// Counter-based 64-bit random stream: output i is splitmix64(seed + i*phi),
/// the standard splitmix64 finalizer over an additive Weyl sequence. Draws
/// depend only on (seed, counter), so a stream can be replayed or split.
/// Normal variates come from Box-Muller over pairs of uniform draws.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t next_u64() {
    uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0,1]; never returns 0 so log() below is safe.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_normal() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    haveSpare_ = true;
    return radius * std::cos(angle);
  }

  // Uniform integer in [0, bound) via modulo; bias is irrelevant at the
  // bounds used here (index shuffles).
  uint64_t next_below(uint64_t bound) { return next_u64() % bound; }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace lrsdp
