#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rsim {

// Deterministic per-stream RNG. Two streams with distinct (seed, stream_index)
// are statistically independent; identical pairs reproduce the same sequence
// bit-exactly on every platform (mt19937_64 stepping is fully specified and
// all variate transforms below are hand-rolled rather than delegated to the
// implementation-defined std distributions).
class RandomStream {
 public:
  RandomStream(uint64_t seed, uint64_t stream_index)
      : seed_(seed), stream_index_(stream_index) {
    uint64_t s = splitmix64(seed);
    s ^= splitmix64(stream_index + 0x9E3779B97F4A7C15ULL);
    engine_.seed(splitmix64(s));
  }

  uint64_t seed() const { return seed_; }
  uint64_t stream_index() const { return stream_index_; }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Exponential waiting time for the given rate; +inf for rate <= 0.
  double exponential(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-uniform()) / rate;
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms per pair.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    // avoid log(0)
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Index in [0, n) from weights[0..n); total must be positive.
  int pick(const double* weights, int n) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += weights[i];
    double x = uniform() * total;
    for (int i = 0; i < n - 1; ++i) {
      x -= weights[i];
      if (x < 0.0) return i;
    }
    return n - 1;
  }

 private:
  static uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  uint64_t seed_;
  uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rsim
