#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aaso/enhancer.hpp"

using namespace aaso;
using namespace aaso::enhance;
using coverage::CoverageEvaluator;
using coverage::IncrementalCoverage;

constexpr double pi = std::numbers::pi;

namespace {

std::size_t sweep_best(const Sensor &s, const CoverageField &f) {
  std::size_t best = 0;
  for (int k = 0; k < 720; ++k) {
    const auto r = s.with_deviation(k * pi / 360.0);
    best = std::max(best, coverage::coverage(std::vector{r}, f).covered_count);
  }
  return best;
}

void check_run(const EnhancementRun &run, std::span<const Sensor> sensors,
               const CoverageField &f) {
  REQUIRE(run.best_angles.size() == sensors.size());
  for (std::size_t t = 1; t < run.curve.size(); ++t)
    CHECK(run.curve[t] >= run.curve[t - 1]);
  CHECK(run.final_rate == run.curve.back());
  CHECK(run.final_rate >= run.initial_rate);
  std::vector<Sensor> moved;
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    moved.push_back(sensors[i].with_deviation(run.best_angles[i]));
    CHECK(moved[i].x == sensors[i].x);
    CHECK(moved[i].y == sensors[i].y);
  }
  CHECK(coverage::coverage(moved, f).rate == run.final_rate);
}

} // namespace

TEST_CASE("single sensor matches an exhaustive angle sweep") {
  for (int trial = 0; trial < 5; ++trial) {
    RandomSource place(100 + trial);
    const CoverageField f(100 + 25 * trial, 200 - 20 * trial, 5);
    const auto sensors =
        coverage::random_deployment(f, 1, 30 + 10 * trial, pi / 2, place);
    const auto target = sweep_best(sensors[0], f);
    const auto grids = static_cast<double>(f.grid_count());

    OptimizerConfig cfg;
    cfg.population = 20;
    cfg.max_iters = 50;
    RandomSource r1(trial);
    const auto a = enhance_aaso(sensors, f, cfg, r1);
    check_run(a, sensors, f);
    CHECK(std::llround(a.final_rate * grids) + 1 >=
          static_cast<long long>(target));

    auto params = coverage_pso_defaults();
    params.swarm = 20;
    params.iters = 50;
    RandomSource r2(trial);
    const auto p = enhance_pso(sensors, f, params, r2);
    check_run(p, sensors, f);
    CHECK(std::llround(p.final_rate * grids) + 1 >=
          static_cast<long long>(target));
  }
}

TEST_CASE("two co-located sensors spread their cones") {
  const CoverageField f(200, 200, 2);
  const std::vector sensors{coverage::Sensor::make(100, 100, 50, pi / 2, 0),
                            coverage::Sensor::make(100, 100, 50, pi / 2, 0)};
  const double one = coverage::coverage(std::vector{sensors[0]}, f).rate;
  OptimizerConfig cfg;
  cfg.population = 20;
  cfg.max_iters = 60;
  RandomSource rng(1);
  const auto run = enhance_aaso(sensors, f, cfg, rng);
  check_run(run, sensors, f);
  CHECK(run.final_rate >= 1.5 * one);
}

TEST_CASE("aaso enhancement budget, curve and determinism") {
  RandomSource place(9);
  const CoverageField f(200, 200, 5);
  const auto sensors = coverage::random_deployment(f, 12, 40, pi / 2, place);
  OptimizerConfig cfg;
  cfg.population = 10;
  cfg.max_iters = 30;
  RandomSource a(3), b(3);
  const auto r1 = enhance_aaso(sensors, f, cfg, a);
  const auto r2 = enhance_aaso(sensors, f, cfg, b);
  check_run(r1, sensors, f);
  CHECK(r1.curve.size() == cfg.max_iters + 1);
  CHECK(r1.curve[0] >= r1.initial_rate);
  CHECK(r1.best_angles == r2.best_angles);
  CHECK(r1.curve == r2.curve);
  CHECK(r1.evaluations >= cfg.population * (cfg.max_iters + 1));
  CHECK((r1.evaluations - cfg.population * (cfg.max_iters + 1)) %
            ((cfg.population + 1) / 2) ==
        0);
}

TEST_CASE("pso enhancement is deterministic") {
  RandomSource place(10);
  const CoverageField f(150, 150, 5);
  const auto sensors = coverage::random_deployment(f, 8, 40, pi / 2, place);
  auto params = coverage_pso_defaults();
  params.swarm = 10;
  params.iters = 20;
  RandomSource a(5), b(5);
  const auto r1 = enhance_pso(sensors, f, params, a);
  const auto r2 = enhance_pso(sensors, f, params, b);
  check_run(r1, sensors, f);
  CHECK(r1.best_angles == r2.best_angles);
  CHECK(r1.evaluations == params.swarm * (params.iters + 1));
}

TEST_CASE("vfa: attraction turns toward uncovered mass") {
  // Sensor in the lower-left corner facing +x; the field lies to its left
  // (counter-clockwise) side, so it must turn left by one step.
  const CoverageField f(40, 40, 2);
  const std::vector sensors{coverage::Sensor::make(0.5, 0.5, 30, pi / 6, 0)};
  const CoverageEvaluator ev(sensors, f);
  const std::vector<double> angles{0.0};
  IncrementalCoverage state(ev, angles);
  CHECK(attraction_torque(ev, state, f, 0) > 0.0);

  VfaParams params;
  params.max_iters = 1;
  RandomSource rng(0);
  const auto run = enhance_vfa(sensors, f, params, rng);
  CHECK(run.best_angles[0] == doctest::Approx(params.rotation_step));
  check_run(run, sensors, f);
}

TEST_CASE("vfa: covered field produces no attraction") {
  const CoverageField f(10, 10, 5);
  const std::vector sensors{coverage::Sensor::make(5, 5, 30, 2 * pi, 0)};
  const CoverageEvaluator ev(sensors, f);
  const std::vector<double> angles{1.0};
  IncrementalCoverage state(ev, angles);
  CHECK(state.rate() == 1.0);
  CHECK(attraction_torque(ev, state, f, 0) == 0.0);
}

TEST_CASE("vfa: repulsion points away from neighbours") {
  const std::vector<double> angles{0.2, 0.0, 0.0};
  const std::vector<std::size_t> neighbors{1, 2};
  CHECK(repulsion_torque(angles, neighbors, 0) > 0.0);
  CHECK(repulsion_torque(angles, {}, 0) == 0.0);
}

TEST_CASE("vfa run properties") {
  RandomSource place(4);
  const CoverageField f(200, 200, 5);
  const auto sensors = coverage::random_deployment(f, 15, 40, pi / 2, place);
  VfaParams params;
  params.max_iters = 25;
  RandomSource rng(0);
  const auto run = enhance_vfa(sensors, f, params, rng);
  check_run(run, sensors, f);
  CHECK(run.curve.size() == params.max_iters + 1);
  VfaParams bad;
  bad.rotation_step = 0.0;
  CHECK_THROWS(bad.validate());
}
