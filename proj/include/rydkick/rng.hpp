#pragma once

#include <cmath>
#include <cstdint>

namespace rydkick {

// splitmix64 finalizer: cheap, well-mixed 64-bit hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based random stream. Streams are derived from (seed, a, b) so that
// every (delay, shot) pair draws from an independent, scheduling-order-free
// sequence; reruns with the same seed reproduce draws bit-exactly.
// Gaussians use an explicit Box-Muller transform rather than
// std::normal_distribution, whose draw sequence is implementation-defined.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
      : base_(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b)) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(splitmix64(base_ ^ counter_++) >> 11) *
           0x1.0p-53;
  }

  // Standard normal via Box-Muller; second draw of each pair is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // u1 in (0,1]: avoids log(0).
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

} // namespace rydkick
