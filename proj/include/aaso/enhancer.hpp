#pragma once

// Coverage enhancement: re-aim fixed directional sensors to maximize the
// covered fraction of the field. Positions never change, only deviations.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "aaso/benchmark.hpp"
#include "aaso/coverage.hpp"
#include "aaso/optimizer.hpp"

namespace aaso::enhance {

using coverage::CoverageField;
using coverage::Sensor;

struct EnhancementRun {
  std::string algorithm;
  double initial_rate = 0.0;
  double final_rate = 0.0;
  /// Radians, one per sensor, in [0, 2*pi).
  std::vector<double> best_angles;
  /// curve[0] is the best rate before the first iteration, curve[t] the best
  /// rate after iteration t. Non-decreasing.
  std::vector<double> curve;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  double elapsed_seconds = 0.0;
};

/// The wrapped [0, 2*pi)^D space in which deviations are searched.
SearchSpace angle_space(std::size_t sensors);

std::vector<double> deployed_angles(std::span<const Sensor> sensors);

/// AASO over the deviation angles with the CEPW fitness. The as-deployed
/// angles are the first individual of the initial population.
EnhancementRun enhance_aaso(std::span<const Sensor> sensors,
                            const CoverageField &field,
                            const OptimizerConfig &config, RandomSource &rng);

/// Table defaults for the coverage baseline: c1 = c2 = 2, inertia 1 -> 0,
/// speed limit 2*pi.
bench::PsoParams coverage_pso_defaults();

EnhancementRun enhance_pso(std::span<const Sensor> sensors,
                           const CoverageField &field,
                           const bench::PsoParams &params, RandomSource &rng);

struct VfaParams {
  double rotation_step = std::numbers::pi / 90.0;
  std::size_t max_iters = 100;
  double attraction_weight = 1.0;
  double repulsion_weight = 0.5;
  /// Neighbours interact within this multiple of the sensing radius.
  double neighbor_factor = 2.0;

  void validate() const;
};

/// Signed angle in (-pi, pi] from the sensor's direction to the mean bearing
/// of the uncovered candidate cells; 0 when there are none.
double attraction_torque(const coverage::CoverageEvaluator &evaluator,
                         const coverage::IncrementalCoverage &state,
                         const CoverageField &field, std::size_t sensor);

/// Signed angle pointing away from the mean sensing direction of the
/// neighbours; 0 without neighbours.
double repulsion_torque(std::span<const double> angles,
                        std::span<const std::size_t> neighbors,
                        std::size_t sensor);

EnhancementRun enhance_vfa(std::span<const Sensor> sensors,
                           const CoverageField &field, const VfaParams &params,
                           RandomSource &rng);

} // namespace aaso::enhance
