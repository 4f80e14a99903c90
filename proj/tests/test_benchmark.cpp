#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aaso/benchmark.hpp"

using namespace aaso;
using namespace aaso::bench;

TEST_CASE("functions vanish at their optima") {
  for (const auto &name : benchmark_names()) {
    const auto f = make_benchmark(name, 10);
    REQUIRE(f.optimum_position.has_value());
    CHECK(std::abs(eval_benchmark(name, *f.optimum_position) -
                   f.known_optimum) < 1e-9);
    CHECK(f.box.contains(*f.optimum_position));
  }
  CHECK_THROWS(make_benchmark("nope", 2));
}

TEST_CASE("hand values") {
  const Vector ones{1.0, 1.0};
  CHECK(eval_benchmark("sphere", ones) == 2.0);
  CHECK(eval_benchmark("rosenbrock", Vector{0.0, 0.0}) == 1.0);
  CHECK(eval_benchmark("rastrigin", ones) == doctest::Approx(2.0));
  CHECK(eval_benchmark("griewank", Vector{0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(eval_benchmark("ackley", Vector{0.0, 0.0}) ==
        doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("pso: frozen swarm does not move") {
  PsoParams p;
  p.swarm = 5;
  p.iters = 10;
  p.c1 = 0.0;
  p.c2 = 0.0;
  p.w_max = 0.0;
  p.w_min = 0.0;
  const auto box = SearchSpace::cube(3, -5, 5);
  RandomSource rng(1);
  const auto r = pso_run([](std::span<const double> x) { return x[0]; }, box, p,
                         rng);
  CHECK(r.history.front() == r.history.back());
  CHECK(r.evaluations == p.swarm * (p.iters + 1));
}

TEST_CASE("pso and random search are deterministic and monotone") {
  const auto f = make_benchmark("rastrigin", 5);
  PsoParams p;
  p.swarm = 10;
  p.iters = 50;
  RandomSource a(2), b(2);
  auto obj = [&](std::span<const double> x) {
    return eval_benchmark("rastrigin", x);
  };
  const auto r1 = pso_run(obj, f.box, p, a);
  const auto r2 = pso_run(obj, f.box, p, b);
  CHECK(r1.history == r2.history);
  for (std::size_t t = 1; t < r1.history.size(); ++t)
    CHECK(r1.history[t] <= r1.history[t - 1]);
  RandomSource c(3);
  const auto rs = random_search_run(obj, f.box, 200, c, 10);
  CHECK(rs.evaluations == 200);
  for (std::size_t t = 1; t < rs.history.size(); ++t)
    CHECK(rs.history[t] <= rs.history[t - 1]);
}

TEST_CASE("compare: paired seeds and exact statistics") {
  CompareSettings s;
  s.dim = 5;
  s.population = 10;
  s.iterations = 40;
  const std::vector<Algorithm> algs{Algorithm::Aaso, Algorithm::Aaso,
                                    Algorithm::Pso, Algorithm::RandomSearch};
  const std::vector<std::string> fns{"sphere"};
  const auto stats = compare(algs, fns, 4, 10, s);
  REQUIRE(stats.size() == 4);
  CHECK(stats[0].finals == stats[1].finals);
  CHECK(stats[0].mean == stats[1].mean);
  for (const auto &st : stats) {
    CHECK(st.histories.size() == 4);
    const auto again = summarize(st.algorithm, st.function, st.histories);
    CHECK(again.mean == st.mean);
    CHECK(again.std == st.std);
    CHECK(again.best == st.best);
  }
  const auto single = run_once(Algorithm::Pso, make_benchmark("sphere", 5), 12, s);
  CHECK(single == stats[2].histories[2]);

  s.threads = 3;
  const auto threaded = compare(algs, fns, 4, 10, s);
  for (std::size_t i = 0; i < stats.size(); ++i)
    CHECK(threaded[i].finals == stats[i].finals);
}

TEST_CASE("constant objective has zero spread") {
  const auto st = summarize("x", "c", {{3.0, 3.0}, {3.0}, {3.0}});
  CHECK(st.std == 0.0);
  CHECK(st.mean == 3.0);
  CHECK(st.runs == 3);
}

TEST_CASE("aaso beats random search on a 10-d sphere") {
  CompareSettings s;
  s.dim = 10;
  s.population = 30;
  s.iterations = 100;
  const std::vector<Algorithm> algs{Algorithm::Aaso, Algorithm::RandomSearch};
  const std::vector<std::string> fns{"sphere"};
  const auto stats = compare(algs, fns, 50, 1, s);
  CHECK(stats[0].mean < stats[1].mean);
}

TEST_CASE("algorithm names round-trip") {
  for (auto a : {Algorithm::Aaso, Algorithm::Pso, Algorithm::RandomSearch})
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  CHECK_THROWS(parse_algorithm("ga"));
}
