#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aaso/optimizer.hpp"

namespace aaso::bench {

/// Classic minimization test function with its usual search box.
struct BenchmarkFunction {
  std::string name;
  std::size_t dim = 0;
  SearchSpace box;
  double known_optimum = 0.0;
  std::optional<Vector> optimum_position;
};

const std::vector<std::string> &benchmark_names();
/// Throws std::invalid_argument on an unknown name.
BenchmarkFunction make_benchmark(std::string_view name, std::size_t dim);
double eval_benchmark(std::string_view name, std::span<const double> x);

struct PsoParams {
  std::size_t swarm = 30;
  std::size_t iters = 1000;
  double c1 = 2.0;
  double c2 = 2.0;
  double w_max = 0.9;
  double w_min = 0.4;
  /// Per-dimension speed limit. Unset means 20% of each dimension's width.
  std::optional<double> v_max;
  /// Starting velocity as a fraction of v_max, drawn uniformly in +-v0.
  /// Zero starts the swarm at rest.
  double initial_velocity = 0.0;

  void validate() const;
};

struct BaselineResult {
  Vector best_position;
  double best_fitness = 0.0;
  std::vector<double> history;
  std::size_t evaluations = 0;
};

/// Global-best PSO with linearly decreasing inertia. `initial_seeds` replace
/// the first uniform particles.
BaselineResult pso_run(const Objective &objective, const SearchSpace &space,
                       const PsoParams &params, RandomSource &rng,
                       std::span<const Vector> initial_seeds = {});

/// Uniform sampling. One history entry per `batch` samples (last may be
/// partial).
BaselineResult random_search_run(const Objective &objective,
                                 const SearchSpace &space, std::size_t budget,
                                 RandomSource &rng, std::size_t batch = 1);

enum class Algorithm { Aaso, Pso, RandomSearch };

std::string_view algorithm_name(Algorithm a);
/// Accepts "aaso", "pso", "random".
Algorithm parse_algorithm(std::string_view name);

struct RunStatistics {
  std::string algorithm;
  std::string function;
  std::size_t runs = 0;
  double best = 0.0;
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> finals;
  std::vector<std::vector<double>> histories;
};

/// Best, mean and sample standard deviation of the per-run finals.
RunStatistics summarize(std::string algorithm, std::string function,
                        std::vector<std::vector<double>> histories);

struct CompareSettings {
  std::size_t dim = 30;
  std::size_t population = 30;
  std::size_t iterations = 1000;
  OptimizerConfig aaso;
  PsoParams pso;
  /// Worker threads for independent runs; 0 picks hardware concurrency.
  std::size_t threads = 1;
};

/// Run r of every algorithm on every function uses seed base_seed + r.
/// PSO gets swarm x iters = population x iterations; random search gets the
/// same total budget as the AASO initialization plus iterations.
std::vector<RunStatistics> compare(std::span<const Algorithm> algorithms,
                                   std::span<const std::string> functions,
                                   std::size_t runs, std::uint64_t base_seed,
                                   const CompareSettings &settings);

/// Single seeded run of one algorithm; returns its best-so-far history.
std::vector<double> run_once(Algorithm algorithm,
                             const BenchmarkFunction &function,
                             std::uint64_t seed,
                             const CompareSettings &settings);

} // namespace aaso::bench
