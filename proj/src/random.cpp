#include "aaso/random.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace aaso {

namespace {

std::uint64_t splitmix64(std::uint64_t &x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

constexpr double kInv53 = 1.0 / 9007199254740992.0; // 2^-53

} // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto &s : s_)
    s = splitmix64(x);
}

std::uint64_t RandomSource::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomSource::uniform_open_closed() {
  return static_cast<double>((next_u64() >> 11) + 1) * kInv53;
}

double RandomSource::uniform() {
  return static_cast<double>(next_u64() >> 11) * kInv53;
}

double RandomSource::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomSource::gaussian() {
  const double u1 = uniform_open_closed();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RandomSource::cauchy() {
  // u in (0,1) strictly so tan stays finite.
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return std::tan(std::numbers::pi * (u - 0.5));
}

std::size_t RandomSource::index(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("RandomSource::index: empty range");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return static_cast<std::size_t>(v % bound);
}

std::size_t RandomSource::roulette(std::span<const double> weights) {
  if (weights.empty())
    throw std::invalid_argument("RandomSource::roulette: no weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0))
    throw std::invalid_argument("RandomSource::roulette: zero total weight");
  const double pick = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (pick < acc)
      return i;
  }
  // Rounding can leave pick == total; fall back to the last positive bucket.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0)
      return i;
  return weights.size() - 1;
}

std::vector<std::size_t> RandomSource::distinct_indices(std::size_t n,
                                                        std::size_t k) {
  if (k > n)
    throw std::invalid_argument("RandomSource::distinct_indices: k > n");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

} // namespace aaso
