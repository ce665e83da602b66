#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace conelab {

// Deterministic random source. mt19937_64 has a standardized output
// sequence, and the uniform/normal transforms below avoid the
// implementation-defined std::*_distribution classes, so a seed produces
// the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; pairs are cached so draws stay in lock-step with the
  // underlying integer stream.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0x1.0p-60) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, n). Modulo bias is irrelevant at the sizes
  // used here (n is a block index or a small grid length).
  int uniform_int(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Independent stream for one trial of a batch; trials can then run in
  // any order (or in parallel) without changing their draws.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
    return Rng(splitmix(seed + 0x9e3779b97f4a7c15ULL * (trial + 1)));
  }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace conelab
