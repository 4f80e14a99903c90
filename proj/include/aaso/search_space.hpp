#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aaso/random.hpp"

namespace aaso {

enum class BoundaryPolicy { Clamp, Wrap };

/// Box-bounded continuous domain. Clamp projects onto [lower, upper];
/// Wrap reduces each coordinate modulo the interval width into
/// [lower, upper).
class SearchSpace {
public:
  SearchSpace(std::vector<double> lower, std::vector<double> upper,
              BoundaryPolicy policy = BoundaryPolicy::Clamp);

  static SearchSpace cube(std::size_t dim, double lower, double upper,
                          BoundaryPolicy policy = BoundaryPolicy::Clamp);

  std::size_t dim() const { return lower_.size(); }
  const std::vector<double> &lower() const { return lower_; }
  const std::vector<double> &upper() const { return upper_; }
  BoundaryPolicy policy() const { return policy_; }

  /// Signed step from `from` to `to` in dimension j: the plain difference
  /// under Clamp, the shortest arc in (-w/2, w/2] under Wrap.
  double displacement(std::size_t j, double from, double to) const;

  void correct(std::span<double> x) const;
  double correct(std::size_t j, double v) const;
  bool contains(std::span<const double> x) const;
  std::vector<double> sample(RandomSource &rng) const;

private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  BoundaryPolicy policy_;
};

} // namespace aaso
