#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lrmp {

// Seedable generator used by all instance generators. Gaussian and integer
// draws are implemented on top of the raw mt19937_64 stream (Box-Muller,
// rejection sampling) instead of std::*_distribution, whose output is not
// pinned by the standard and differs between library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Independent substream for array `stream_id`, derived by splitmix64 so
  // that changing the number of draws in one array does not shift another.
  Rng stream(std::uint64_t stream_id) const {
    std::uint64_t x = seed_ + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return Rng(x ^ (x >> 31));
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform on (0, 1]: strictly positive so log() below is always finite.
  double uniform01() {
    const std::uint64_t u = engine_() >> 11;  // 53 random bits
    return (static_cast<double>(u) + 1.0) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform integer in [lo, hi], unbiased via rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t range = hi - lo + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + x % range;
  }

  bool bernoulli(double p) { return uniform01() <= p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lrmp
