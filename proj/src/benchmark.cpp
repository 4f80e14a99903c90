#include "aaso/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace aaso::bench {

namespace {

constexpr double kSchwefelArg = 420.968746359982025;
constexpr double kSchwefelShift = 418.9828872724337998;

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x)
    s += v * v;
  return s;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x)
    s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0, cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
         std::numbers::e;
}

double griewank(std::span<const double> x) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + s / 4000.0 - p;
}

double schwefel(std::span<const double> x) {
  double s = kSchwefelShift * static_cast<double>(x.size());
  for (double v : x)
    s -= v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

struct Entry {
  const char *name;
  double (*fn)(std::span<const double>);
  double lower;
  double upper;
  double optimum_coord;
};

constexpr Entry kTable[] = {
    {"sphere", sphere, -100.0, 100.0, 0.0},
    {"rosenbrock", rosenbrock, -30.0, 30.0, 1.0},
    {"rastrigin", rastrigin, -5.12, 5.12, 0.0},
    {"ackley", ackley, -32.0, 32.0, 0.0},
    {"griewank", griewank, -600.0, 600.0, 0.0},
    {"schwefel", schwefel, -500.0, 500.0, kSchwefelArg},
};

const Entry &lookup(std::string_view name) {
  for (const auto &e : kTable)
    if (name == e.name)
      return e;
  throw std::invalid_argument("unknown benchmark function '" +
                              std::string(name) + "'");
}

} // namespace

const std::vector<std::string> &benchmark_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &e : kTable)
      v.emplace_back(e.name);
    return v;
  }();
  return names;
}

BenchmarkFunction make_benchmark(std::string_view name, std::size_t dim) {
  const Entry &e = lookup(name);
  if (dim == 0)
    throw std::invalid_argument("benchmark dimension must be positive");
  return BenchmarkFunction{e.name, dim, SearchSpace::cube(dim, e.lower, e.upper),
                           0.0, Vector(dim, e.optimum_coord)};
}

double eval_benchmark(std::string_view name, std::span<const double> x) {
  return lookup(name).fn(x);
}

// ---------------------------------------------------------------------------

void PsoParams::validate() const {
  if (swarm < 1 || iters < 1)
    throw ConfigError("PSO swarm and iterations must be positive");
  if (c1 < 0.0 || c2 < 0.0)
    throw ConfigError("PSO acceleration coefficients must be non-negative");
  if (w_min < 0.0 || w_max < w_min)
    throw ConfigError("PSO inertia weights need 0 <= w_min <= w_max");
  if (v_max && !(*v_max > 0.0))
    throw ConfigError("PSO v_max must be positive");
  if (initial_velocity < 0.0)
    throw ConfigError("PSO initial_velocity must be non-negative");
}

BaselineResult pso_run(const Objective &objective, const SearchSpace &space,
                       const PsoParams &params, RandomSource &rng,
                       std::span<const Vector> initial_seeds) {
  params.validate();
  const std::size_t n = params.swarm;
  const std::size_t d = space.dim();
  if (initial_seeds.size() > n)
    throw ConfigError("more seed particles than swarm slots");

  Vector vlim(d);
  for (std::size_t j = 0; j < d; ++j)
    vlim[j] = params.v_max ? *params.v_max
                           : 0.2 * (space.upper()[j] - space.lower()[j]);

  std::vector<Vector> x(n), v(n, Vector(d, 0.0)), pbest(n);
  std::vector<double> fx(n), fp(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < initial_seeds.size()) {
      x[i] = initial_seeds[i];
      space.correct(x[i]);
    } else {
      x[i] = space.sample(rng);
    }
    if (params.initial_velocity > 0.0)
      for (std::size_t j = 0; j < d; ++j)
        v[i][j] = rng.uniform(-1.0, 1.0) * params.initial_velocity * vlim[j];
  }

  BaselineResult out;
  std::size_t g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    fx[i] = evaluate(objective, x[i]);
    pbest[i] = x[i];
    fp[i] = fx[i];
    if (fp[i] < fp[g])
      g = i;
  }
  out.evaluations = n;
  Vector gbest = pbest[g];
  double fg = fp[g];

  out.history.reserve(params.iters);
  for (std::size_t t = 1; t <= params.iters; ++t) {
    const double frac = params.iters > 1 ? static_cast<double>(t - 1) /
                                               static_cast<double>(params.iters - 1)
                                         : 0.0;
    const double w = params.w_max - (params.w_max - params.w_min) * frac;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double vel = w * v[i][j] +
                     params.c1 * r1 * space.displacement(j, x[i][j], pbest[i][j]) +
                     params.c2 * r2 * space.displacement(j, x[i][j], gbest[j]);
        v[i][j] = std::clamp(vel, -vlim[j], vlim[j]);
        x[i][j] = space.correct(j, x[i][j] + v[i][j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      fx[i] = evaluate(objective, x[i]);
      if (fx[i] < fp[i]) {
        fp[i] = fx[i];
        pbest[i] = x[i];
      }
    }
    out.evaluations += n;
    for (std::size_t i = 0; i < n; ++i)
      if (fp[i] < fg) {
        fg = fp[i];
        gbest = pbest[i];
      }
    out.history.push_back(fg);
  }
  out.best_position = std::move(gbest);
  out.best_fitness = fg;
  return out;
}

BaselineResult random_search_run(const Objective &objective,
                                 const SearchSpace &space, std::size_t budget,
                                 RandomSource &rng, std::size_t batch) {
  if (budget == 0)
    throw ConfigError("random search budget must be at least 1");
  if (batch == 0)
    throw ConfigError("random search batch must be at least 1");
  BaselineResult out;
  out.best_fitness = 0.0;
  bool have = false;
  for (std::size_t k = 0; k < budget; ++k) {
    Vector x = space.sample(rng);
    const double f = evaluate(objective, x);
    if (!have || f < out.best_fitness) {
      out.best_fitness = f;
      out.best_position = std::move(x);
      have = true;
    }
    if ((k + 1) % batch == 0 || k + 1 == budget)
      out.history.push_back(out.best_fitness);
  }
  out.evaluations = budget;
  return out;
}

// ---------------------------------------------------------------------------

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
  case Algorithm::Aaso:
    return "aaso";
  case Algorithm::Pso:
    return "pso";
  case Algorithm::RandomSearch:
    return "random";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "aaso")
    return Algorithm::Aaso;
  if (name == "pso")
    return Algorithm::Pso;
  if (name == "random" || name == "random_search")
    return Algorithm::RandomSearch;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

RunStatistics summarize(std::string algorithm, std::string function,
                        std::vector<std::vector<double>> histories) {
  if (histories.empty())
    throw std::invalid_argument("summarize: no runs");
  RunStatistics s;
  s.algorithm = std::move(algorithm);
  s.function = std::move(function);
  s.runs = histories.size();
  for (const auto &h : histories) {
    if (h.empty())
      throw std::invalid_argument("summarize: empty history");
    s.finals.push_back(h.back());
  }
  s.best = *std::min_element(s.finals.begin(), s.finals.end());
  s.mean = std::accumulate(s.finals.begin(), s.finals.end(), 0.0) /
           static_cast<double>(s.runs);
  double ss = 0.0;
  for (double f : s.finals)
    ss += (f - s.mean) * (f - s.mean);
  s.std = s.runs > 1 ? std::sqrt(ss / static_cast<double>(s.runs - 1)) : 0.0;
  s.histories = std::move(histories);
  return s;
}

std::vector<double> run_once(Algorithm algorithm,
                             const BenchmarkFunction &function,
                             std::uint64_t seed,
                             const CompareSettings &settings) {
  const std::string name = function.name;
  Objective objective = [name](std::span<const double> x) {
    return eval_benchmark(name, x);
  };
  RandomSource rng(seed);
  switch (algorithm) {
  case Algorithm::Aaso: {
    OptimizerConfig cfg = settings.aaso;
    cfg.population = settings.population;
    cfg.max_iters = settings.iterations;
    cfg.seed = seed;
    return run(objective, function.box, cfg, rng).history;
  }
  case Algorithm::Pso: {
    PsoParams p = settings.pso;
    p.swarm = settings.population;
    p.iters = settings.iterations;
    return pso_run(objective, function.box, p, rng).history;
  }
  case Algorithm::RandomSearch: {
    const std::size_t budget = settings.population * (settings.iterations + 1);
    auto h = random_search_run(objective, function.box, budget, rng,
                               settings.population)
                 .history;
    // Drop the initialization block so traces align with iteration counts.
    h.erase(h.begin());
    return h;
  }
  }
  throw std::logic_error("unhandled algorithm");
}

std::vector<RunStatistics> compare(std::span<const Algorithm> algorithms,
                                   std::span<const std::string> functions,
                                   std::size_t runs, std::uint64_t base_seed,
                                   const CompareSettings &settings) {
  if (runs < 2)
    throw ConfigError("compare needs at least 2 runs");
  std::vector<BenchmarkFunction> fns;
  for (const auto &f : functions)
    fns.push_back(make_benchmark(f, settings.dim));

  const std::size_t jobs = algorithms.size() * fns.size() * runs;
  std::vector<std::vector<double>> traces(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs;) {
      const std::size_t r = k % runs;
      const std::size_t f = (k / runs) % fns.size();
      const std::size_t a = k / (runs * fns.size());
      traces[k] = run_once(algorithms[a], fns[f], base_seed + r, settings);
    }
  };
  std::size_t threads = settings.threads;
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i)
      pool.emplace_back(worker);
  }

  std::vector<RunStatistics> out;
  for (std::size_t a = 0; a < algorithms.size(); ++a)
    for (std::size_t f = 0; f < fns.size(); ++f) {
      const std::size_t first = (a * fns.size() + f) * runs;
      std::vector<std::vector<double>> h(
          std::make_move_iterator(traces.begin() +
                                  static_cast<std::ptrdiff_t>(first)),
          std::make_move_iterator(traces.begin() +
                                  static_cast<std::ptrdiff_t>(first + runs)));
      out.push_back(summarize(std::string(algorithm_name(algorithms[a])),
                              fns[f].name, std::move(h)));
    }
  return out;
}

} // namespace aaso::bench
