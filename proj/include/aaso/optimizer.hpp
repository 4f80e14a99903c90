#pragma once

// Army ant search optimizer: a population minimizer over a box-bounded space.
//
// Per iteration every prey in the archive recruits a Poisson-distributed
// number of ants. A recruited ant scatters around each of its prey with
// Gaussian noise and attacks the mean of those scatter points; an ant no prey
// recruited follows two random companions with Cauchy noise. The archive
// keeps the best four solutions seen so far, of which a shrinking number are
// active. When the global best stops moving, the worse half of the
// population builds a fitness-weighted "bridge" point used for greedy
// single-coordinate mutation.
//
// Draw order per iteration (fixed, so a seed pins the trajectory):
//   1. recruit counts for active prey 0..P-1, then index selections per prey;
//   2. ants 0..N-1: scatter noise per recruiting prey in prey order, then the
//      move draw (attack scalar, or companion indices + Cauchy vectors);
//   3. bridge draws (dimension, multiplier) per worse-half ant, if triggered.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aaso/random.hpp"
#include "aaso/search_space.hpp"

namespace aaso {

using Vector = std::vector<double>;
using Objective = std::function<double(std::span<const double>)>;

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ObjectiveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Ant {
  Vector position;
  double fitness = 0.0;
};

struct OptimizerConfig {
  std::size_t population = 50;
  std::size_t max_iters = 100;
  /// Mean recruits per prey at t = 0. Unset means population / 2.
  std::optional<double> recruit_init;
  double attack_coeff = 2.0;
  std::size_t stagnation_threshold = 5;
  std::uint64_t seed = 0;

  double recruit_init_value() const;
  /// Throws ConfigError.
  void validate() const;
};

/// Best-so-far solutions, ascending by fitness. Slot 0 is the global best.
class PreyArchive {
public:
  static constexpr std::size_t kCapacity = 4;

  const std::vector<Ant> &entries() const { return entries_; }
  std::size_t active_count() const { return active_; }
  const Ant &best() const { return entries_.front(); }
  bool empty() const { return entries_.empty(); }

  /// Merges candidates into the pool; exact-duplicate positions are kept once.
  void merge(std::span<const Ant> candidates);
  void set_active(std::size_t count);

private:
  std::vector<Ant> entries_;
  std::size_t active_ = 0;
};

/// recruit_map[p] lists the ants recruited by active prey p.
using RecruitMap = std::vector<std::vector<std::size_t>>;

struct IterationState {
  std::size_t t = 0;
  double num_aver = 0.0;
  RecruitMap recruit_map;
  std::size_t stagnation_counter = 0;
  std::optional<Vector> bridge_position;
};

struct InitResult {
  std::vector<Ant> population;
  PreyArchive archive;
  std::size_t evaluations = 0;
};

/// Evaluates the objective and rejects non-finite values.
double evaluate(const Objective &objective, std::span<const double> x);

/// `seeds` are injected as the first individuals; the rest are uniform.
InitResult initialize(const OptimizerConfig &config, const SearchSpace &space,
                      const Objective &objective, RandomSource &rng,
                      std::span<const Vector> seeds = {});

double avg_recruits(std::size_t t, const OptimizerConfig &config);

double poisson_log_pmf(std::size_t k, double lambda);
/// Poisson pmf on {0..n_max}, renormalized over that support.
std::vector<double> truncated_poisson_pmf(double lambda, std::size_t n_max);
std::size_t sample_recruit_count(double lambda, std::size_t n_max,
                                 RandomSource &rng);

RecruitMap recruit(const PreyArchive &archive, const OptimizerConfig &config,
                   std::size_t t, RandomSource &rng);

/// Number of prey recruiting each ant.
std::vector<std::size_t> recruit_counts_per_ant(const RecruitMap &map,
                                                std::size_t population);

// Kernels taking explicit draws return uncorrected positions. Given a space,
// differences are measured with SearchSpace::displacement (shortest arc
// under Wrap); without one they are plain differences.

/// prey + (prey - ant) * eps, element-wise.
Vector scatter_position(std::span<const double> prey,
                        std::span<const double> ant,
                        std::span<const double> eps,
                        const SearchSpace *space = nullptr);
Vector scatter_position(std::span<const double> prey,
                        std::span<const double> ant, const SearchSpace &space,
                        RandomSource &rng);

/// Mean of the scatter positions (circular mean around the first one under
/// Wrap).
Vector attack_target(std::span<const Vector> scatters,
                     const SearchSpace *space = nullptr);

/// ant + a * r * (target - ant).
Vector step_attack(std::span<const double> ant, std::span<const double> target,
                   double attack_coeff, double r,
                   const SearchSpace *space = nullptr);
Vector step_attack(std::span<const double> ant, std::span<const double> target,
                   double attack_coeff, const SearchSpace &space,
                   RandomSource &rng);

/// ((c1 + n1) + (c2 + n2)) / 2 with explicit noise vectors.
Vector step_follow(std::span<const double> first, std::span<const double> second,
                   std::span<const double> noise_first,
                   std::span<const double> noise_second,
                   const SearchSpace *space = nullptr);
Vector step_follow(std::span<const double> first, std::span<const double> second,
                   const SearchSpace &space, RandomSource &rng);

/// Two distinct population indices other than `self`.
std::pair<std::size_t, std::size_t>
pick_companions(std::size_t self, std::size_t population, RandomSource &rng);

/// round(4 - 4(t-1)/T_max) without the floor; can be 0 near the end.
int prey_count_raw(std::size_t t, std::size_t max_iters);
std::size_t prey_count(std::size_t t, std::size_t max_iters);

void update_archive(PreyArchive &archive, std::span<const Ant> population,
                    std::size_t t, std::size_t max_iters);

/// Indices of the ceil(N/2) worst ants; ties go to the higher index.
std::vector<std::size_t> worse_half(std::span<const Ant> population);

std::vector<double> bridge_weights(std::span<const Ant> worse,
                                   double best_fitness);
Vector ant_bridge(std::span<const Ant> worse, double best_fitness);

/// Candidate of the bridge mutation for dimension j and multiplier u.
Vector bridge_candidate(std::span<const double> position,
                        std::span<const double> bridge, std::size_t j,
                        double u);
Ant bridge_mutate(const Ant &ant, std::span<const double> bridge,
                  const Objective &objective, const SearchSpace &space,
                  RandomSource &rng);

struct RunResult {
  Vector best_position;
  double best_fitness = 0.0;
  /// Best-so-far fitness after each iteration; size max_iters.
  std::vector<double> history;
  std::size_t evaluations = 0;
  std::size_t bridge_iterations = 0;
};

using IterationObserver =
    std::function<void(const IterationState &, const PreyArchive &,
                       std::span<const Ant>)>;

struct RunOptions {
  IterationObserver observer;
  std::vector<Vector> initial_seeds;
};

RunResult run(const Objective &objective, const SearchSpace &space,
              const OptimizerConfig &config, RandomSource &rng,
              const RunOptions &options = {});

/// Uses RandomSource(config.seed).
RunResult run(const Objective &objective, const SearchSpace &space,
              const OptimizerConfig &config, const RunOptions &options = {});

} // namespace aaso
