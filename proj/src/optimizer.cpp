#include "aaso/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace aaso {

namespace {

constexpr double kBridgeDelta = 1e-12;

double step(const SearchSpace *space, std::size_t j, double from, double to) {
  return space ? space->displacement(j, from, to) : to - from;
}

void require_same_dim(std::span<const double> a, std::span<const double> b,
                      const char *what) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace

double OptimizerConfig::recruit_init_value() const {
  return recruit_init ? *recruit_init : static_cast<double>(population) / 2.0;
}

void OptimizerConfig::validate() const {
  if (population < PreyArchive::kCapacity)
    throw ConfigError("population must be at least 4 (the archive starts with "
                      "four prey)");
  if (max_iters == 0)
    throw ConfigError("max_iters must be positive");
  const double init = recruit_init_value();
  if (!(init > 0.0) || init > static_cast<double>(population))
    throw ConfigError("recruit_init must lie in (0, population]");
  if (!(attack_coeff > 0.0) || !std::isfinite(attack_coeff))
    throw ConfigError("attack_coeff must be positive");
  if (stagnation_threshold == 0)
    throw ConfigError("stagnation_threshold must be at least 1");
}

// ---------------------------------------------------------------------------
// PreyArchive

void PreyArchive::merge(std::span<const Ant> candidates) {
  std::vector<const Ant *> pool;
  pool.reserve(entries_.size() + candidates.size());
  for (const auto &e : entries_)
    pool.push_back(&e);
  for (const auto &c : candidates)
    pool.push_back(&c);
  // Stable: on ties the incumbent entries stay ahead of newcomers.
  std::stable_sort(pool.begin(), pool.end(), [](const Ant *a, const Ant *b) {
    return a->fitness < b->fitness;
  });
  std::vector<Ant> next;
  next.reserve(kCapacity);
  for (const Ant *a : pool) {
    if (next.size() == kCapacity)
      break;
    const bool dup = std::any_of(next.begin(), next.end(), [&](const Ant &e) {
      return e.position == a->position;
    });
    if (!dup)
      next.push_back(*a);
  }
  entries_ = std::move(next);
  active_ = std::min(std::max<std::size_t>(active_, 1), entries_.size());
}

void PreyArchive::set_active(std::size_t count) {
  active_ = std::clamp<std::size_t>(count, 1, std::max<std::size_t>(
                                                  entries_.size(), 1));
}

// ---------------------------------------------------------------------------
// Initialization

double evaluate(const Objective &objective, std::span<const double> x) {
  const double f = objective(x);
  if (!std::isfinite(f)) {
    std::ostringstream os;
    os << "objective returned a non-finite value (" << f << ") at x = [";
    for (std::size_t j = 0; j < x.size() && j < 8; ++j)
      os << (j ? ", " : "") << x[j];
    if (x.size() > 8)
      os << ", ...";
    os << "]";
    throw ObjectiveError(os.str());
  }
  return f;
}

InitResult initialize(const OptimizerConfig &config, const SearchSpace &space,
                      const Objective &objective, RandomSource &rng,
                      std::span<const Vector> seeds) {
  config.validate();
  if (seeds.size() > config.population)
    throw ConfigError("more seed individuals than population slots");

  InitResult out;
  out.population.resize(config.population);
  for (std::size_t i = 0; i < config.population; ++i) {
    Ant &ant = out.population[i];
    if (i < seeds.size()) {
      if (seeds[i].size() != space.dim())
        throw ConfigError("seed individual has wrong dimension");
      ant.position = seeds[i];
      space.correct(ant.position);
    } else {
      ant.position = space.sample(rng);
    }
  }
  for (auto &ant : out.population)
    ant.fitness = evaluate(objective, ant.position);
  out.evaluations = config.population;
  out.archive.merge(out.population);
  out.archive.set_active(prey_count(1, config.max_iters));
  return out;
}

// ---------------------------------------------------------------------------
// Recruitment

double avg_recruits(std::size_t t, const OptimizerConfig &config) {
  const double init = config.recruit_init_value();
  const double n = static_cast<double>(config.population);
  return init + (n - init) * static_cast<double>(t) /
                    static_cast<double>(config.max_iters);
}

double poisson_log_pmf(std::size_t k, double lambda) {
  const double kd = static_cast<double>(k);
  return kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0);
}

std::vector<double> truncated_poisson_pmf(double lambda, std::size_t n_max) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("truncated_poisson_pmf: lambda must be > 0");
  std::vector<double> logp(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k)
    logp[k] = poisson_log_pmf(k, lambda);
  const double peak = *std::max_element(logp.begin(), logp.end());
  std::vector<double> pmf(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k)
    pmf[k] = std::exp(logp[k] - peak);
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (auto &p : pmf)
    p /= total;
  return pmf;
}

std::size_t sample_recruit_count(double lambda, std::size_t n_max,
                                 RandomSource &rng) {
  const auto pmf = truncated_poisson_pmf(lambda, n_max);
  return rng.roulette(pmf);
}

RecruitMap recruit(const PreyArchive &archive, const OptimizerConfig &config,
                   std::size_t t, RandomSource &rng) {
  const std::size_t n = config.population;
  const std::size_t active = archive.active_count();
  const auto pmf = truncated_poisson_pmf(avg_recruits(t, config), n);
  std::vector<std::size_t> counts(active);
  for (auto &k : counts)
    k = rng.roulette(pmf);
  RecruitMap map(active);
  for (std::size_t p = 0; p < active; ++p)
    map[p] = rng.distinct_indices(n, counts[p]);
  return map;
}

std::vector<std::size_t> recruit_counts_per_ant(const RecruitMap &map,
                                                std::size_t population) {
  std::vector<std::size_t> counts(population, 0);
  for (const auto &list : map)
    for (std::size_t i : list)
      ++counts.at(i);
  return counts;
}

// ---------------------------------------------------------------------------
// Moves

Vector scatter_position(std::span<const double> prey,
                        std::span<const double> ant,
                        std::span<const double> eps, const SearchSpace *space) {
  require_same_dim(prey, ant, "scatter_position");
  require_same_dim(prey, eps, "scatter_position");
  Vector out(prey.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = prey[j] + step(space, j, ant[j], prey[j]) * eps[j];
  return out;
}

Vector scatter_position(std::span<const double> prey,
                        std::span<const double> ant, const SearchSpace &space,
                        RandomSource &rng) {
  Vector eps(prey.size());
  for (auto &e : eps)
    e = rng.gaussian();
  Vector out = scatter_position(prey, ant, eps, &space);
  space.correct(out);
  return out;
}

Vector attack_target(std::span<const Vector> scatters,
                     const SearchSpace *space) {
  if (scatters.empty())
    throw std::invalid_argument("attack_target: no scatter positions");
  const Vector &first = scatters.front();
  const double n = static_cast<double>(scatters.size());
  Vector mean(first.size(), 0.0);
  const bool wrap = space && space->policy() == BoundaryPolicy::Wrap;
  for (const auto &s : scatters) {
    require_same_dim(mean, s, "attack_target");
    for (std::size_t j = 0; j < mean.size(); ++j)
      mean[j] += wrap ? space->displacement(j, first[j], s[j]) : s[j];
  }
  for (std::size_t j = 0; j < mean.size(); ++j)
    mean[j] = wrap ? first[j] + mean[j] / n : mean[j] / n;
  return mean;
}

Vector step_attack(std::span<const double> ant, std::span<const double> target,
                   double attack_coeff, double r, const SearchSpace *space) {
  require_same_dim(ant, target, "step_attack");
  Vector out(ant.size());
  const double scale = attack_coeff * r;
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = ant[j] + scale * step(space, j, ant[j], target[j]);
  return out;
}

Vector step_attack(std::span<const double> ant, std::span<const double> target,
                   double attack_coeff, const SearchSpace &space,
                   RandomSource &rng) {
  Vector out =
      step_attack(ant, target, attack_coeff, rng.uniform_open_closed(), &space);
  space.correct(out);
  return out;
}

Vector step_follow(std::span<const double> first, std::span<const double> second,
                   std::span<const double> noise_first,
                   std::span<const double> noise_second,
                   const SearchSpace *space) {
  require_same_dim(first, second, "step_follow");
  require_same_dim(first, noise_first, "step_follow");
  require_same_dim(first, noise_second, "step_follow");
  const bool wrap = space && space->policy() == BoundaryPolicy::Wrap;
  Vector out(first.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (wrap)
      out[j] = first[j] + space->displacement(j, first[j], second[j]) / 2.0 +
               (noise_first[j] + noise_second[j]) / 2.0;
    else
      out[j] =
          ((first[j] + noise_first[j]) + (second[j] + noise_second[j])) / 2.0;
  }
  return out;
}

Vector step_follow(std::span<const double> first, std::span<const double> second,
                   const SearchSpace &space, RandomSource &rng) {
  Vector n1(first.size()), n2(first.size());
  for (auto &c : n1)
    c = rng.cauchy();
  for (auto &c : n2)
    c = rng.cauchy();
  Vector out = step_follow(first, second, n1, n2, &space);
  space.correct(out);
  return out;
}

std::pair<std::size_t, std::size_t>
pick_companions(std::size_t self, std::size_t population, RandomSource &rng) {
  if (population < 3)
    throw std::invalid_argument("pick_companions: need at least 3 ants");
  auto picks = rng.distinct_indices(population - 1, 2);
  for (auto &p : picks)
    if (p >= self)
      ++p;
  return {picks[0], picks[1]};
}

// ---------------------------------------------------------------------------
// Archive schedule

int prey_count_raw(std::size_t t, std::size_t max_iters) {
  const double v = 4.0 - 4.0 * static_cast<double>(t - 1) /
                             static_cast<double>(max_iters);
  return static_cast<int>(std::lround(v));
}

std::size_t prey_count(std::size_t t, std::size_t max_iters) {
  return static_cast<std::size_t>(std::clamp(prey_count_raw(t, max_iters), 1,
                                             4));
}

void update_archive(PreyArchive &archive, std::span<const Ant> population,
                    std::size_t t, std::size_t max_iters) {
  archive.merge(population);
  archive.set_active(prey_count(t, max_iters));
}

// ---------------------------------------------------------------------------
// Ant bridge

std::vector<std::size_t> worse_half(std::span<const Ant> population) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return population[a].fitness < population[b].fitness;
  });
  const std::size_t half = (population.size() + 1) / 2;
  std::vector<std::size_t> worst(order.end() - static_cast<std::ptrdiff_t>(half),
                                 order.end());
  return worst;
}

std::vector<double> bridge_weights(std::span<const Ant> worse,
                                   double best_fitness) {
  if (worse.empty())
    throw std::invalid_argument("bridge_weights: empty worse half");
  if (!std::isfinite(best_fitness))
    throw std::invalid_argument("bridge_weights: non-finite best fitness");
  std::vector<double> w(worse.size());
  for (std::size_t k = 0; k < worse.size(); ++k) {
    if (!std::isfinite(worse[k].fitness))
      throw std::invalid_argument("bridge_weights: non-finite fitness");
    const double gap = std::max(worse[k].fitness - best_fitness, 0.0);
    w[k] = 1.0 / (gap + kBridgeDelta);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto &x : w)
    x /= total;
  return w;
}

Vector ant_bridge(std::span<const Ant> worse, double best_fitness) {
  const auto w = bridge_weights(worse, best_fitness);
  Vector bridge(worse.front().position.size(), 0.0);
  for (std::size_t k = 0; k < worse.size(); ++k) {
    require_same_dim(bridge, worse[k].position, "ant_bridge");
    for (std::size_t j = 0; j < bridge.size(); ++j)
      bridge[j] += w[k] * worse[k].position[j];
  }
  return bridge;
}

Vector bridge_candidate(std::span<const double> position,
                        std::span<const double> bridge, std::size_t j,
                        double u) {
  require_same_dim(position, bridge, "bridge_candidate");
  Vector out(position.begin(), position.end());
  out.at(j) = 2.0 * u * bridge[j] - position[j];
  return out;
}

Ant bridge_mutate(const Ant &ant, std::span<const double> bridge,
                  const Objective &objective, const SearchSpace &space,
                  RandomSource &rng) {
  const std::size_t j = rng.index(ant.position.size());
  const double u = rng.uniform_open_closed();
  Ant candidate{bridge_candidate(ant.position, bridge, j, u), 0.0};
  candidate.position[j] = space.correct(j, candidate.position[j]);
  candidate.fitness = evaluate(objective, candidate.position);
  return candidate.fitness < ant.fitness ? candidate : ant;
}

// ---------------------------------------------------------------------------
// Main loop

RunResult run(const Objective &objective, const SearchSpace &space,
              const OptimizerConfig &config, RandomSource &rng,
              const RunOptions &options) {
  auto init = initialize(config, space, objective, rng, options.initial_seeds);
  auto &population = init.population;
  auto &archive = init.archive;
  const std::size_t n = config.population;

  RunResult result;
  result.evaluations = init.evaluations;
  result.history.reserve(config.max_iters);

  IterationState state;
  std::vector<Ant> next(n);
  std::vector<Vector> scatters;
  scatters.reserve(PreyArchive::kCapacity);
  Vector anchor = archive.best().position;

  for (std::size_t t = 1; t <= config.max_iters; ++t) {
    archive.set_active(prey_count(t, config.max_iters));
    state.t = t;
    state.num_aver = avg_recruits(t, config);
    state.recruit_map = recruit(archive, config, t, rng);
    state.bridge_position.reset();

    // Which prey recruited each ant, in prey order.
    std::vector<std::vector<std::size_t>> recruiters(n);
    for (std::size_t p = 0; p < state.recruit_map.size(); ++p)
      for (std::size_t i : state.recruit_map[p])
        recruiters[i].push_back(p);

    for (std::size_t i = 0; i < n; ++i) {
      const Vector &pos = population[i].position;
      if (!recruiters[i].empty()) {
        scatters.clear();
        for (std::size_t p : recruiters[i])
          scatters.push_back(
              scatter_position(archive.entries()[p].position, pos, space, rng));
        next[i].position = step_attack(pos, attack_target(scatters, &space),
                                       config.attack_coeff, space, rng);
      } else {
        const auto [a, b] = pick_companions(i, n, rng);
        next[i].position = step_follow(population[a].position,
                                       population[b].position, space, rng);
      }
    }
    for (auto &ant : next)
      ant.fitness = evaluate(objective, ant.position);
    result.evaluations += n;
    std::swap(population, next);

    update_archive(archive, population, t, config.max_iters);

    if (archive.best().position == anchor) {
      ++state.stagnation_counter;
    } else {
      state.stagnation_counter = 0;
      anchor = archive.best().position;
    }

    if (state.stagnation_counter >= config.stagnation_threshold) {
      const auto idx = worse_half(population);
      std::vector<Ant> worse;
      worse.reserve(idx.size());
      for (std::size_t i : idx)
        worse.push_back(population[i]);
      Vector bridge = ant_bridge(worse, archive.best().fitness);
      for (std::size_t i : idx)
        population[i] =
            bridge_mutate(population[i], bridge, objective, space, rng);
      result.evaluations += idx.size();
      ++result.bridge_iterations;
      update_archive(archive, population, t, config.max_iters);
      state.bridge_position = std::move(bridge);
      state.stagnation_counter = 0;
      anchor = archive.best().position;
    }

    result.history.push_back(archive.best().fitness);
    if (options.observer)
      options.observer(state, archive, population);
  }

  result.best_position = archive.best().position;
  result.best_fitness = archive.best().fitness;
  return result;
}

RunResult run(const Objective &objective, const SearchSpace &space,
              const OptimizerConfig &config, const RunOptions &options) {
  RandomSource rng(config.seed);
  return run(objective, space, config, rng, options);
}

} // namespace aaso
