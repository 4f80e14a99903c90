#include "aaso/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aaso {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper,
                         BoundaryPolicy policy)
    : lower_(std::move(lower)), upper_(std::move(upper)), policy_(policy) {
  if (lower_.empty())
    throw std::invalid_argument("SearchSpace: dimension must be positive");
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("SearchSpace: bound vectors differ in length");
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j]) ||
        !(lower_[j] < upper_[j]))
      throw std::invalid_argument("SearchSpace: require lower < upper in every "
                                  "dimension");
  }
}

SearchSpace SearchSpace::cube(std::size_t dim, double lower, double upper,
                              BoundaryPolicy policy) {
  return SearchSpace(std::vector<double>(dim, lower),
                     std::vector<double>(dim, upper), policy);
}

double SearchSpace::correct(std::size_t j, double v) const {
  const double lo = lower_[j];
  const double hi = upper_[j];
  if (policy_ == BoundaryPolicy::Clamp)
    return std::clamp(v, lo, hi);
  if (v >= lo && v < hi)
    return v;
  const double width = hi - lo;
  double r = std::fmod(v - lo, width);
  if (r < 0.0)
    r += width;
  double w = lo + r;
  // fmod + add can round up onto the excluded endpoint.
  if (w >= hi)
    w = lo;
  return w;
}

double SearchSpace::displacement(std::size_t j, double from,
                                 double to) const {
  const double d = to - from;
  if (policy_ == BoundaryPolicy::Clamp)
    return d;
  const double width = upper_[j] - lower_[j];
  double r = std::remainder(d, width);
  if (r == -width / 2.0)
    r = width / 2.0;
  return r;
}

void SearchSpace::correct(std::span<double> x) const {
  if (x.size() != dim())
    throw std::invalid_argument("SearchSpace::correct: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = correct(j, x[j]);
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dim())
    return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= lower_[j]))
      return false;
    if (policy_ == BoundaryPolicy::Clamp ? !(x[j] <= upper_[j])
                                         : !(x[j] < upper_[j]))
      return false;
  }
  return true;
}

std::vector<double> SearchSpace::sample(RandomSource &rng) const {
  std::vector<double> x(dim());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = correct(j, rng.uniform(lower_[j], upper_[j]));
  return x;
}

} // namespace aaso
