#ifndef SOCKP_DETAIL_RNG_HPP
#define SOCKP_DETAIL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sockp::detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: draw i of stream (seed, a, b) is
/// mix64(key + i * golden) with key = mix64(mix64(seed ^ mix64(a)) ^ b).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
      : key_(mix64(mix64(seed ^ mix64(a)) ^ b)) {}

  std::uint64_t at(std::uint64_t i) const { return mix64(key_ + i * 0x9e3779b97f4a7c15ULL); }
  std::uint64_t next() { return at(counter_++); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] (rejection sampling, unbiased).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % range);
  }

  // Standard normal by Box-Muller (one of the pair).
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sockp::detail

#endif  // SOCKP_DETAIL_RNG_HPP
