#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aaso {

/// Seeded random source used by every stochastic component.
///
/// The engine is SplitMix64-seeded xoshiro256**, and all distribution
/// transforms are written out here rather than taken from <random>, so a
/// seed produces the same stream on every standard library.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  /// Uniform in (0, 1].
  double uniform_open_closed();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller, two uniforms per draw, no caching).
  double gaussian();
  /// Standard Cauchy via inverse CDF.
  double cauchy();
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  /// Roulette-wheel draw over unnormalized non-negative weights.
  std::size_t roulette(std::span<const double> weights);
  /// k distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> distinct_indices(std::size_t n, std::size_t k);

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

} // namespace aaso
