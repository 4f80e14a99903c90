#pragma once

// Directional sensing and grid-based area coverage.
//
// A sensor senses a point when the point is within its radius and inside the
// sector of full apex angle `view_angle` centred on its deviation direction.
// The monitoring rectangle [0,L] x [0,W] is cut into square cells of side
// `interval`; a cell counts as covered when its centroid is sensed by any
// sensor.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aaso/random.hpp"

namespace aaso::coverage {

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Reduces an angle to [0, 2*pi).
double canonical_angle(double radians);

struct Sensor {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  double view_angle = 0.0;
  double deviation = 0.0;

  /// Validates and canonicalizes the deviation. view_angle may equal 2*pi
  /// (omnidirectional).
  static Sensor make(double x, double y, double radius, double view_angle,
                     double deviation);

  Sensor with_deviation(double radians) const;
};

bool is_sensed(const Sensor &sensor, Point point);

class CoverageField {
public:
  CoverageField(double length, double width, double interval);

  double length() const { return length_; }
  double width() const { return width_; }
  double interval() const { return interval_; }
  double area() const { return length_ * width_; }
  std::size_t columns() const { return columns_; }
  std::size_t rows() const { return rows_; }
  std::size_t grid_count() const { return columns_ * rows_; }

  /// Grid g = row * columns + column.
  Point centroid(std::size_t g) const;
  const std::vector<Point> &centroids() const { return centroids_; }

private:
  double length_;
  double width_;
  double interval_;
  std::size_t columns_;
  std::size_t rows_;
  std::vector<Point> centroids_;
};

struct CoverageResult {
  std::vector<std::uint8_t> covered;
  std::size_t covered_count = 0;
  double rate = 0.0;
};

/// Cells whose centroid lies within the sensor radius, ascending.
std::vector<std::size_t> candidate_grids(const Sensor &sensor,
                                         const CoverageField &field);

/// Candidate-pruned coverage.
CoverageResult coverage(std::span<const Sensor> sensors,
                        const CoverageField &field);
/// Every sensor against every cell. Reference for the pruned path.
CoverageResult coverage_naive(std::span<const Sensor> sensors,
                              const CoverageField &field);

/// 1 - (1 - alpha R^2 / 2H)^D.
double expected_initial_coverage(std::size_t nodes, double radius,
                                 double view_angle, double area);
/// Smallest D whose expected initial coverage reaches `target`.
std::size_t required_nodes(double target, double radius, double view_angle,
                           double area);

/// Uniform positions over the field, uniform deviations over [0, 2*pi).
std::vector<Sensor> random_deployment(const CoverageField &field,
                                      std::size_t count, double radius,
                                      double view_angle, RandomSource &rng);

/// Precomputed candidate cells for a fixed set of sensor positions. Only the
/// deviations vary between evaluations.
class CoverageEvaluator {
public:
  CoverageEvaluator(std::vector<Sensor> sensors, const CoverageField &field);

  std::size_t sensor_count() const { return sensors_.size(); }
  std::size_t grid_count() const { return grid_count_; }
  const std::vector<Sensor> &sensors() const { return sensors_; }
  std::vector<std::size_t> candidates(std::size_t sensor) const;
  std::size_t candidate_count(std::size_t sensor) const {
    return offsets_[sensor + 1] - offsets_[sensor];
  }
  std::size_t candidate_grid(std::size_t sensor, std::size_t k) const {
    return cells_[offsets_[sensor] + k].grid;
  }

  /// Covered-cell count with the given deviations. Safe to call from several
  /// threads at once.
  std::size_t covered_count(std::span<const double> angles) const;
  CoverageResult evaluate(std::span<const double> angles) const;
  /// Number of grids over covered grids; grid_count^2 when nothing is covered.
  double fitness(std::span<const double> angles) const;

  /// Whether candidate `c` of `sensor` is inside its sector.
  bool candidate_sensed(std::size_t sensor, std::size_t c, double cos_dev,
                        double sin_dev) const;

private:
  struct Cell {
    std::uint32_t grid;
    double dx;
    double dy;
    double dist;
  };

  std::vector<Sensor> sensors_;
  std::size_t grid_count_;
  std::vector<double> half_cos_;
  std::vector<std::size_t> offsets_;
  std::vector<Cell> cells_;
};

/// Per-cell sensing counters for single-sensor updates.
class IncrementalCoverage {
public:
  IncrementalCoverage(const CoverageEvaluator &evaluator,
                      std::span<const double> angles);

  std::size_t covered_count() const { return covered_; }
  double rate() const;
  const std::vector<double> &angles() const { return angles_; }
  bool is_covered(std::size_t grid) const { return counts_[grid] > 0; }
  std::uint32_t count(std::size_t grid) const { return counts_[grid]; }

  void set_angle(std::size_t sensor, double radians);

private:
  void apply(std::size_t sensor, int delta);

  const CoverageEvaluator *evaluator_;
  std::vector<double> angles_;
  std::vector<std::uint32_t> counts_;
  std::size_t covered_ = 0;
};

/// CEPW fitness: M / covered, or M*M at zero coverage.
double cepw_fitness(std::span<const double> angles,
                    std::span<const Sensor> sensors,
                    const CoverageField &field);

} // namespace aaso::coverage
