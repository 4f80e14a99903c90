#include "aaso/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aaso::coverage {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t cells_along(double extent, double interval) {
  const double n = std::ceil(extent / interval - 1e-9);
  return static_cast<std::size_t>(std::max(n, 1.0));
}

// Shared by the pruned and naive paths so both produce the same bits.
struct Offset {
  double dx;
  double dy;
  double dist;
};

Offset offset(const Sensor &s, Point p) {
  const double dx = p.x - s.x;
  const double dy = p.y - s.y;
  return {dx, dy, std::sqrt(dx * dx + dy * dy)};
}

// Points on the sector edge are sensed; the slack absorbs the rounding of
// cos/sin so that exact boundary points are not lost.
constexpr double kEdgeSlack = 1e-12;

bool in_sector(const Offset &o, double cos_dev, double sin_dev,
               double half_cos) {
  return o.dx * cos_dev + o.dy * sin_dev >=
         o.dist * (half_cos - kEdgeSlack);
}

} // namespace

double canonical_angle(double radians) {
  if (!std::isfinite(radians))
    throw DomainError("angle must be finite");
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  if (r >= kTwoPi)
    r = 0.0;
  return r;
}

Sensor Sensor::make(double x, double y, double radius, double view_angle,
                    double deviation) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw DomainError("sensor position must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw DomainError("sensor radius must be positive");
  if (!(view_angle > 0.0) || view_angle > kTwoPi)
    throw DomainError("view angle must lie in (0, 2*pi]");
  return Sensor{x, y, radius, view_angle, canonical_angle(deviation)};
}

Sensor Sensor::with_deviation(double radians) const {
  Sensor s = *this;
  s.deviation = canonical_angle(radians);
  return s;
}

bool is_sensed(const Sensor &sensor, Point point) {
  const Offset o = offset(sensor, point);
  if (!(o.dist <= sensor.radius))
    return false;
  return in_sector(o, std::cos(sensor.deviation), std::sin(sensor.deviation),
                   std::cos(sensor.view_angle / 2.0));
}

// ---------------------------------------------------------------------------

CoverageField::CoverageField(double length, double width, double interval)
    : length_(length), width_(width), interval_(interval) {
  if (!(length > 0.0) || !(width > 0.0) || !std::isfinite(length) ||
      !std::isfinite(width))
    throw DomainError("field dimensions must be positive");
  if (!(interval > 0.0) || !std::isfinite(interval))
    throw DomainError("grid interval must be positive");
  columns_ = cells_along(length, interval);
  rows_ = cells_along(width, interval);
  centroids_.reserve(columns_ * rows_);
  for (std::size_t q = 0; q < rows_; ++q) {
    const double y0 = static_cast<double>(q) * interval;
    const double y1 = std::min(static_cast<double>(q + 1) * interval, width);
    for (std::size_t p = 0; p < columns_; ++p) {
      const double x0 = static_cast<double>(p) * interval;
      const double x1 = std::min(static_cast<double>(p + 1) * interval, length);
      centroids_.push_back({(x0 + x1) / 2.0, (y0 + y1) / 2.0});
    }
  }
}

Point CoverageField::centroid(std::size_t g) const { return centroids_.at(g); }

// ---------------------------------------------------------------------------

std::vector<std::size_t> candidate_grids(const Sensor &sensor,
                                         const CoverageField &field) {
  const double step = field.interval();
  auto index_range = [&](double centre, std::size_t count) {
    const double lo = std::floor((centre - sensor.radius) / step) - 1.0;
    const double hi = std::ceil((centre + sensor.radius) / step) + 1.0;
    const double last = static_cast<double>(count) - 1.0;
    return std::pair<std::size_t, std::size_t>{
        static_cast<std::size_t>(std::clamp(lo, 0.0, last)),
        static_cast<std::size_t>(std::clamp(hi, 0.0, last))};
  };
  const auto [p0, p1] = index_range(sensor.x, field.columns());
  const auto [q0, q1] = index_range(sensor.y, field.rows());
  std::vector<std::size_t> out;
  for (std::size_t q = q0; q <= q1; ++q) {
    for (std::size_t p = p0; p <= p1; ++p) {
      const std::size_t g = q * field.columns() + p;
      if (offset(sensor, field.centroids()[g]).dist <= sensor.radius)
        out.push_back(g);
    }
  }
  return out;
}

namespace {

CoverageResult finish(std::vector<std::uint8_t> covered) {
  CoverageResult r;
  r.covered_count = static_cast<std::size_t>(
      std::count(covered.begin(), covered.end(), std::uint8_t{1}));
  r.rate = covered.empty() ? 0.0
                           : static_cast<double>(r.covered_count) /
                                 static_cast<double>(covered.size());
  r.covered = std::move(covered);
  return r;
}

} // namespace

CoverageResult coverage(std::span<const Sensor> sensors,
                        const CoverageField &field) {
  std::vector<std::uint8_t> covered(field.grid_count(), 0);
  for (const auto &s : sensors) {
    const double c = std::cos(s.deviation);
    const double sn = std::sin(s.deviation);
    const double h = std::cos(s.view_angle / 2.0);
    for (std::size_t g : candidate_grids(s, field)) {
      if (covered[g])
        continue;
      if (in_sector(offset(s, field.centroids()[g]), c, sn, h))
        covered[g] = 1;
    }
  }
  return finish(std::move(covered));
}

CoverageResult coverage_naive(std::span<const Sensor> sensors,
                              const CoverageField &field) {
  std::vector<std::uint8_t> covered(field.grid_count(), 0);
  for (std::size_t g = 0; g < covered.size(); ++g)
    for (const auto &s : sensors)
      if (is_sensed(s, field.centroids()[g])) {
        covered[g] = 1;
        break;
      }
  return finish(std::move(covered));
}

// ---------------------------------------------------------------------------

double expected_initial_coverage(std::size_t nodes, double radius,
                                 double view_angle, double area) {
  if (!(area > 0.0) || !(radius > 0.0) || !(view_angle > 0.0))
    throw DomainError("radius, view angle and area must be positive");
  const double single = view_angle * radius * radius / (2.0 * area);
  if (single > 1.0)
    throw DomainError("one sensor's sector exceeds the monitored area");
  return 1.0 - std::pow(1.0 - single, static_cast<double>(nodes));
}

std::size_t required_nodes(double target, double radius, double view_angle,
                           double area) {
  if (!(target > 0.0) || !(target < 1.0))
    throw DomainError("target coverage must lie in (0, 1)");
  if (!(area > 0.0) || !(radius > 0.0) || !(view_angle > 0.0))
    throw DomainError("radius, view angle and area must be positive");
  const double sector = view_angle * radius * radius;
  if (sector > 2.0 * area)
    throw DomainError("one sensor's sector exceeds the monitored area");
  if (sector == 2.0 * area)
    return 1;
  const double ratio = std::log1p(-target) /
                       (std::log(2.0 * area - sector) - std::log(2.0 * area));
  // Absorb rounding when the ratio is an integer in exact arithmetic.
  const double nodes = std::ceil(ratio - 1e-9);
  return static_cast<std::size_t>(std::max(nodes, 1.0));
}

std::vector<Sensor> random_deployment(const CoverageField &field,
                                      std::size_t count, double radius,
                                      double view_angle, RandomSource &rng) {
  std::vector<Sensor> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = rng.uniform(0.0, field.length());
    const double y = rng.uniform(0.0, field.width());
    const double dev = rng.uniform(0.0, kTwoPi);
    out.push_back(Sensor::make(x, y, radius, view_angle, dev));
  }
  return out;
}

// ---------------------------------------------------------------------------

CoverageEvaluator::CoverageEvaluator(std::vector<Sensor> sensors,
                                     const CoverageField &field)
    : sensors_(std::move(sensors)), grid_count_(field.grid_count()) {
  offsets_.reserve(sensors_.size() + 1);
  offsets_.push_back(0);
  for (const auto &s : sensors_) {
    half_cos_.push_back(std::cos(s.view_angle / 2.0));
    for (std::size_t g : candidate_grids(s, field)) {
      const Offset o = offset(s, field.centroids()[g]);
      cells_.push_back({static_cast<std::uint32_t>(g), o.dx, o.dy, o.dist});
    }
    offsets_.push_back(cells_.size());
  }
}

std::vector<std::size_t>
CoverageEvaluator::candidates(std::size_t sensor) const {
  std::vector<std::size_t> out;
  for (std::size_t c = offsets_.at(sensor); c < offsets_.at(sensor + 1); ++c)
    out.push_back(cells_[c].grid);
  return out;
}

bool CoverageEvaluator::candidate_sensed(std::size_t sensor, std::size_t c,
                                         double cos_dev, double sin_dev) const {
  const Cell &cell = cells_[offsets_[sensor] + c];
  return in_sector({cell.dx, cell.dy, cell.dist}, cos_dev, sin_dev,
                   half_cos_[sensor]);
}

std::size_t
CoverageEvaluator::covered_count(std::span<const double> angles) const {
  if (angles.size() != sensors_.size())
    throw std::invalid_argument("covered_count: one angle per sensor required");
  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t epoch = 0;
  if (stamp.size() < grid_count_) {
    stamp.assign(grid_count_, 0);
    epoch = 0;
  }
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }
  std::size_t covered = 0;
  for (std::size_t s = 0; s < sensors_.size(); ++s) {
    const double dev = canonical_angle(angles[s]);
    const double c = std::cos(dev);
    const double sn = std::sin(dev);
    const double h = half_cos_[s];
    for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) {
      const Cell &cell = cells_[k];
      if (stamp[cell.grid] == epoch)
        continue;
      if (in_sector({cell.dx, cell.dy, cell.dist}, c, sn, h)) {
        stamp[cell.grid] = epoch;
        ++covered;
      }
    }
  }
  return covered;
}

CoverageResult CoverageEvaluator::evaluate(std::span<const double> angles) const {
  if (angles.size() != sensors_.size())
    throw std::invalid_argument("evaluate: one angle per sensor required");
  std::vector<std::uint8_t> covered(grid_count_, 0);
  for (std::size_t s = 0; s < sensors_.size(); ++s) {
    const double dev = canonical_angle(angles[s]);
    const double c = std::cos(dev);
    const double sn = std::sin(dev);
    for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) {
      const Cell &cell = cells_[k];
      if (!covered[cell.grid] &&
          in_sector({cell.dx, cell.dy, cell.dist}, c, sn, half_cos_[s]))
        covered[cell.grid] = 1;
    }
  }
  return finish(std::move(covered));
}

double CoverageEvaluator::fitness(std::span<const double> angles) const {
  const std::size_t covered = covered_count(angles);
  const double m = static_cast<double>(grid_count_);
  if (covered == 0)
    return m * m;
  return m / static_cast<double>(covered);
}

// ---------------------------------------------------------------------------

IncrementalCoverage::IncrementalCoverage(const CoverageEvaluator &evaluator,
                                         std::span<const double> angles)
    : evaluator_(&evaluator), angles_(angles.begin(), angles.end()),
      counts_(evaluator.grid_count(), 0) {
  if (angles_.size() != evaluator.sensor_count())
    throw std::invalid_argument("IncrementalCoverage: one angle per sensor");
  for (std::size_t s = 0; s < angles_.size(); ++s)
    apply(s, +1);
}

double IncrementalCoverage::rate() const {
  return static_cast<double>(covered_) /
         static_cast<double>(evaluator_->grid_count());
}

void IncrementalCoverage::apply(std::size_t sensor, int delta) {
  const double dev = canonical_angle(angles_[sensor]);
  const double c = std::cos(dev);
  const double sn = std::sin(dev);
  const std::size_t count = evaluator_->candidate_count(sensor);
  for (std::size_t k = 0; k < count; ++k) {
    if (!evaluator_->candidate_sensed(sensor, k, c, sn))
      continue;
    auto &n = counts_[evaluator_->candidate_grid(sensor, k)];
    if (delta > 0) {
      if (n++ == 0)
        ++covered_;
    } else {
      if (--n == 0)
        --covered_;
    }
  }
}

void IncrementalCoverage::set_angle(std::size_t sensor, double radians) {
  apply(sensor, -1);
  angles_.at(sensor) = radians;
  apply(sensor, +1);
}

// ---------------------------------------------------------------------------

double cepw_fitness(std::span<const double> angles,
                    std::span<const Sensor> sensors,
                    const CoverageField &field) {
  if (angles.size() != sensors.size())
    throw std::invalid_argument("cepw_fitness: one angle per sensor required");
  std::vector<Sensor> placed(sensors.begin(), sensors.end());
  for (std::size_t i = 0; i < placed.size(); ++i)
    placed[i] = placed[i].with_deviation(angles[i]);
  const auto r = coverage(placed, field);
  const double m = static_cast<double>(field.grid_count());
  if (r.covered_count == 0)
    return m * m;
  return m / static_cast<double>(r.covered_count);
}

} // namespace aaso::coverage
