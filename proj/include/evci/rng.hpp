#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "evci/support.hpp"

namespace evci {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded random stream. Streams are derived from (seed, stream_id) with a
/// SplitMix64 mix, so replication k of a Monte Carlo run gets the same draws
/// no matter which thread executes it or in which order. The distribution
/// transforms are written out here (rather than using std::*_distribution)
/// so the draw sequences are pinned by this code alone.
class Rng {
 public:
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream_id + 1);
    return Rng(splitmix64(s));
  }

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal, Marsaglia polar method with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

  /// Gamma(shape, 1), Marsaglia–Tsang squeeze/rejection; shapes below 1 use
  /// the boost Gamma(shape+1)·U^{1/shape}.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw parameter_error("gamma shape must be positive");
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Beta(a, b) from two Gamma draws.
  double beta(double a, double b) {
    const double ga = gamma(a);
    const double gb = gamma(b);
    const double sum = ga + gb;
    if (sum <= 0.0) return 0.5;  // both draws underflowed; ratio undefined
    return ga / sum;
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace evci
