#pragma once

#include <cmath>
#include <cstdint>

namespace geocut {

/// SplitMix64 counter generator with explicit stream splitting. Each stream
/// is a fixed function of (seed, stream), so parallel consumers draw from
/// disjoint, reproducible substreams.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed + kGolden) ^ mix(stream + kStreamSalt)) {}

  std::uint64_t nextU64() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double nextDouble() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  double nextUniform(double lo, double hi) { return lo + (hi - lo) * nextDouble(); }

  /// Exact Poisson draw. Large means are split into chunks of at most 20
  /// (sums of independent Poisson draws are Poisson), keeping Knuth's
  /// product method clear of double underflow.
  std::uint64_t nextPoisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::uint64_t total = 0;
    while (mean > 0.0) {
      const double chunk = mean > 20.0 ? 20.0 : mean;
      const double limit = std::exp(-chunk);
      std::uint64_t k = 0;
      double prod = 1.0;
      do {
        ++k;
        prod *= nextDouble();
      } while (prod > limit);
      total += k - 1;
      mean -= chunk;
    }
    return total;
  }

  /// Derives the seed for one sample index of a parallel ensemble.
  static std::uint64_t substreamSeed(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed + kGolden) ^ (index * kStreamSalt + kGolden));
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace geocut
