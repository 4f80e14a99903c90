#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aaso/coverage.hpp"

using namespace aaso::coverage;
using aaso::RandomSource;

constexpr double pi = std::numbers::pi;

TEST_CASE("sensing predicate") {
  const auto s = Sensor::make(0, 0, 60, pi / 2, 0);
  CHECK(is_sensed(s, {30, 0}));
  CHECK_FALSE(is_sensed(s, {0, 30}));
  CHECK(is_sensed(s, {30, 30}));
  CHECK_FALSE(is_sensed(s, {61, 0}));
  CHECK(is_sensed(s, {0, 0}));
}

TEST_CASE("sensor validation and canonical angles") {
  CHECK_THROWS_AS(Sensor::make(0, 0, 0, 1, 0), DomainError);
  CHECK_THROWS_AS(Sensor::make(0, 0, 1, 0, 0), DomainError);
  CHECK_THROWS_AS(Sensor::make(0, 0, 1, 7, 0), DomainError);
  const auto s = Sensor::make(0, 0, 1, 1, -pi / 2);
  CHECK(s.deviation == doctest::Approx(1.5 * pi));
  CHECK(canonical_angle(2 * pi) == 0.0);
  CHECK(canonical_angle(-1e-18) < 2 * pi);
}

TEST_CASE("field geometry") {
  const CoverageField f(500, 500, 5);
  CHECK(f.columns() == 100);
  CHECK(f.grid_count() == 10000);
  CHECK(f.centroid(0).x == 2.5);
  CHECK(f.centroid(101).y == 7.5);
  const CoverageField clipped(12, 7, 5);
  CHECK(clipped.columns() == 3);
  CHECK(clipped.rows() == 2);
  CHECK(clipped.centroid(2).x == doctest::Approx(11.0));
  CHECK(clipped.centroid(3).y == doctest::Approx(6.0));
  for (const auto &c : clipped.centroids()) {
    CHECK(c.x <= 12.0);
    CHECK(c.y <= 7.0);
  }
  CHECK_THROWS(CoverageField(10, 10, 0));
}

TEST_CASE("candidate grids") {
  const CoverageField f(100, 100, 5);
  const auto tiny = Sensor::make(52.5, 52.5, 2.0, pi / 2, 0);
  const auto one = candidate_grids(tiny, f);
  REQUIRE(one.size() == 1);
  CHECK(f.centroid(one[0]).x == 52.5);

  const auto s = Sensor::make(40, 60, 25, 2 * pi / 3, 1.0);
  const auto cand = candidate_grids(s, f);
  std::size_t brute = 0;
  for (std::size_t g = 0; g < f.grid_count(); ++g) {
    const auto c = f.centroid(g);
    if (std::hypot(c.x - s.x, c.y - s.y) <= s.radius) {
      ++brute;
      CHECK(std::binary_search(cand.begin(), cand.end(), g));
    }
  }
  CHECK(cand.size() == brute);
  for (double th = 0; th < 2 * pi; th += 0.3) {
    const auto r = s.with_deviation(th);
    for (std::size_t g = 0; g < f.grid_count(); ++g)
      if (is_sensed(r, f.centroid(g)))
        CHECK(std::binary_search(cand.begin(), cand.end(), g));
  }
}

TEST_CASE("coverage against analytic areas") {
  const CoverageField f(400, 400, 1);
  CHECK(coverage({}, f).rate == 0.0);
  const double R = 60;
  const double cell = 1.0 / f.grid_count();
  const auto sector = Sensor::make(200, 200, R, pi / 2, 0.3);
  const double sector_area = (pi / 4) * R * R / f.area();
  // Boundary cells along two radii and the arc.
  const double slack = (2 * R + R * pi / 2) * cell;
  CHECK(std::abs(coverage(std::vector{sector}, f).rate - sector_area) <= slack);
  const auto disc = Sensor::make(200, 200, R, 2 * pi, 0);
  CHECK(std::abs(coverage(std::vector{disc}, f).rate - pi * R * R / f.area()) <=
        2 * pi * R * cell);
}

TEST_CASE("rotating a centered sensor keeps its count") {
  // Edges lying exactly on a row of centroids pick up that whole row, so the
  // check starts just off the lattice directions.
  const CoverageField f(295, 295, 5);
  const auto a = Sensor::make(147.5, 147.5, 60, pi / 2, 0.01);
  const auto base = coverage(std::vector{a}, f).covered_count;
  for (int k = 1; k < 64; ++k) {
    const auto r = a.with_deviation(0.01 + k * pi / 32);
    const auto c = coverage(std::vector{r}, f).covered_count;
    CHECK(std::max(c, base) - std::min(c, base) <= 2);
  }
}

TEST_CASE("pruned coverage equals naive coverage") {
  RandomSource rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const double interval = 1 + rng.index(5);
    const double L = interval * (1 + rng.index(50));
    const double W = interval * (1 + rng.index(50));
    const CoverageField f(L, W, interval);
    const auto n = rng.index(11);
    std::vector<Sensor> sensors;
    for (std::size_t i = 0; i < n; ++i)
      sensors.push_back(Sensor::make(rng.uniform(0, L), rng.uniform(0, W),
                                     rng.uniform(1, 0.6 * std::max(L, W)),
                                     rng.uniform(0.05, 2 * pi),
                                     rng.uniform(0, 2 * pi)));
    const auto a = coverage(sensors, f);
    const auto b = coverage_naive(sensors, f);
    CHECK(a.covered == b.covered);
    CHECK(a.covered_count == b.covered_count);
    CHECK(a.rate == b.rate);
  }
}

TEST_CASE("coverage ignores sensor order") {
  RandomSource rng(2);
  const CoverageField f(200, 200, 5);
  auto sensors = random_deployment(f, 20, 40, pi / 2, rng);
  const auto a = coverage(sensors, f);
  std::reverse(sensors.begin(), sensors.end());
  CHECK(coverage(sensors, f).covered == a.covered);
}

TEST_CASE("expected initial coverage") {
  const double H = 250000;
  CHECK(expected_initial_coverage(0, 60, pi / 2, H) == 0.0);
  CHECK(expected_initial_coverage(110, 60, pi / 2, H) ==
        doctest::Approx(0.7139).epsilon(0.0005 / 0.7139));
  // alpha R^2 = 2H saturates with one node.
  CHECK(expected_initial_coverage(1, 100, 2.0, 10000) == doctest::Approx(1.0));
  CHECK_THROWS_AS(expected_initial_coverage(1, 200, 2.0, 10000), DomainError);
}

TEST_CASE("required nodes") {
  const double H = 250000;
  CHECK(required_nodes(0.8752, 60, pi / 2, H) == 183);
  CHECK(required_nodes(1e-12, 60, pi / 2, H) == 1);
  CHECK_THROWS_AS(required_nodes(1.0, 60, pi / 2, H), DomainError);
  CHECK_THROWS_AS(required_nodes(0.0, 60, pi / 2, H), DomainError);
  const auto big = required_nodes(0.9999999, 60, pi / 2, H);
  CHECK(big > 183);
  CHECK(big < 100000);
  for (std::size_t d = 1; d <= 300; ++d)
    CHECK(required_nodes(expected_initial_coverage(d, 60, pi / 2, H), 60,
                         pi / 2, H) <= d);
}

TEST_CASE("cepw fitness") {
  const CoverageField f(10, 10, 5);
  const std::vector sensors{Sensor::make(5, 5, 20, 2 * pi, 0)};
  CHECK(cepw_fitness(std::vector{0.0}, sensors, f) == 1.0);
  const std::vector half{Sensor::make(0, 5, 3, pi, 0),
                         Sensor::make(0, 5, 0.1, pi, 0)};
  CHECK(coverage(half, f).covered_count == 0);
  CHECK(cepw_fitness(std::vector{0.0, 0.0}, half, f) == 16.0);
  const std::vector right{Sensor::make(0, 2.5, 20, 0.2, 1.0)};
  // Facing along +x it sees the bottom row only.
  CHECK(cepw_fitness(std::vector{0.0}, right, f) == 2.0);
  CHECK_THROWS(cepw_fitness(std::vector{0.0, 1.0}, right, f));
}

TEST_CASE("random deployment") {
  const CoverageField f(500, 300, 5);
  RandomSource a(4), b(4);
  const auto s1 = random_deployment(f, 10000, 30, pi / 3, a);
  const auto s2 = random_deployment(f, 10000, 30, pi / 3, b);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].x == s2[i].x);
    CHECK(s1[i].deviation == s2[i].deviation);
    CHECK(s1[i].deviation >= 0.0);
    CHECK(s1[i].deviation < 2 * pi);
    mx += s1[i].x;
    my += s1[i].y;
  }
  mx /= s1.size();
  my /= s1.size();
  CHECK(std::abs(mx - 250) < 3 * 500 / std::sqrt(12.0 * s1.size()));
  CHECK(std::abs(my - 150) < 3 * 300 / std::sqrt(12.0 * s1.size()));
}

TEST_CASE("evaluator and incremental coverage agree with the direct path") {
  RandomSource rng(21);
  const CoverageField f(200, 150, 5);
  const auto sensors = random_deployment(f, 15, 40, pi / 2, rng);
  const CoverageEvaluator ev(sensors, f);
  std::vector<double> angles;
  for (const auto &s : sensors)
    angles.push_back(s.deviation);
  IncrementalCoverage inc(ev, angles);
  for (int step = 0; step < 200; ++step) {
    const auto i = rng.index(sensors.size());
    const double th = rng.uniform(-10, 10);
    angles[i] = th;
    inc.set_angle(i, th);
    std::vector<Sensor> moved;
    for (std::size_t k = 0; k < sensors.size(); ++k)
      moved.push_back(sensors[k].with_deviation(angles[k]));
    const auto direct = coverage(moved, f);
    CHECK(ev.covered_count(angles) == direct.covered_count);
    CHECK(inc.covered_count() == direct.covered_count);
    CHECK(ev.evaluate(angles).covered == direct.covered);
    CHECK(ev.fitness(angles) == cepw_fitness(angles, sensors, f));
  }
}
