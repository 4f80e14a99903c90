#include "aaso/aaso.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aaso/coverage.hpp"
#include "aaso/deployment_io.hpp"
#include "aaso/experiment.hpp"
#include "aaso/optimizer.hpp"

#ifndef AASO_VERSION_STRING
#define AASO_VERSION_STRING "0.0.0"
#endif

struct aaso_experiment {
  aaso::experiment::ExperimentSpec spec;
  std::vector<aaso::experiment::RunRecord> runs;
  std::vector<aaso::bench::RunStatistics> stats;
  std::vector<std::string> failures;
};

namespace {

thread_local std::string last_error;

aaso_status fail(aaso_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps the exception in flight to a status code.
aaso_status translate() {
  try {
    throw;
  } catch (const aaso::experiment::ConfigParseError &e) {
    return fail(AASO_ERR_CONFIG, e.what());
  } catch (const aaso::experiment::IoError &e) {
    return fail(AASO_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error &e) {
    return fail(AASO_ERR_IO, e.what());
  } catch (const aaso::coverage::DomainError &e) {
    return fail(AASO_ERR_DOMAIN, e.what());
  } catch (const aaso::ConfigError &e) {
    return fail(AASO_ERR_CONFIG, e.what());
  } catch (const aaso::ObjectiveError &e) {
    return fail(AASO_ERR_OBJECTIVE, e.what());
  } catch (const std::invalid_argument &e) {
    return fail(AASO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception &e) {
    return fail(AASO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AASO_ERR_INTERNAL, "unknown error");
  }
}

#define AASO_REQUIRE(cond, what)                                               \
  do {                                                                         \
    if (!(cond))                                                               \
      return fail(AASO_ERR_INVALID_ARGUMENT, what);                            \
  } while (0)

} // namespace

extern "C" {

const char *aaso_version(void) { return AASO_VERSION_STRING; }

const char *aaso_last_error(void) { return last_error.c_str(); }

const char *aaso_status_name(aaso_status status) {
  switch (status) {
  case AASO_OK:
    return "ok";
  case AASO_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case AASO_ERR_CONFIG:
    return "configuration error";
  case AASO_ERR_IO:
    return "i/o error";
  case AASO_ERR_DOMAIN:
    return "domain error";
  case AASO_ERR_OBJECTIVE:
    return "objective error";
  case AASO_ERR_RUN_FAILED:
    return "run failed";
  case AASO_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

aaso_status aaso_experiment_load(const char *path, aaso_experiment **out) {
  AASO_REQUIRE(path && out, "path and out must not be NULL");
  *out = nullptr;
  try {
    auto exp = std::make_unique<aaso_experiment>();
    exp->spec = aaso::experiment::parse_config(path);
    *out = exp.release();
    return AASO_OK;
  } catch (...) {
    return translate();
  }
}

aaso_status aaso_experiment_load_text(const char *text,
                                      aaso_experiment **out) {
  AASO_REQUIRE(text && out, "text and out must not be NULL");
  *out = nullptr;
  try {
    auto exp = std::make_unique<aaso_experiment>();
    exp->spec = aaso::experiment::parse_config_text(text);
    *out = exp.release();
    return AASO_OK;
  } catch (...) {
    return translate();
  }
}

void aaso_experiment_free(aaso_experiment *exp) { delete exp; }

aaso_status aaso_experiment_kind(const aaso_experiment *exp, aaso_kind *out) {
  AASO_REQUIRE(exp && out, "experiment and out must not be NULL");
  switch (exp->spec.kind) {
  case aaso::experiment::Kind::Cover:
    *out = AASO_KIND_COVER;
    break;
  case aaso::experiment::Kind::Bench:
    *out = AASO_KIND_BENCH;
    break;
  case aaso::experiment::Kind::Analyze:
    *out = AASO_KIND_ANALYZE;
    break;
  }
  return AASO_OK;
}

aaso_status aaso_experiment_set_seeds(aaso_experiment *exp,
                                      const char *seeds) {
  AASO_REQUIRE(exp && seeds, "experiment and seeds must not be NULL");
  try {
    exp->spec.seeds = aaso::experiment::parse_seed_list(seeds);
    return AASO_OK;
  } catch (...) {
    return translate();
  }
}

aaso_status aaso_experiment_set_output_dir(aaso_experiment *exp,
                                           const char *dir) {
  AASO_REQUIRE(exp && dir && *dir, "experiment and dir must be non-empty");
  exp->spec.output_dir = dir;
  return AASO_OK;
}

aaso_status aaso_experiment_set_threads(aaso_experiment *exp,
                                        size_t threads) {
  AASO_REQUIRE(exp, "experiment must not be NULL");
  exp->spec.threads = threads;
  return AASO_OK;
}

aaso_status aaso_experiment_run(aaso_experiment *exp) {
  AASO_REQUIRE(exp, "experiment must not be NULL");
  exp->runs.clear();
  exp->stats.clear();
  exp->failures.clear();
  try {
    switch (exp->spec.kind) {
    case aaso::experiment::Kind::Cover: {
      auto outcome = aaso::experiment::run_cover(exp->spec);
      exp->runs = std::move(outcome.runs);
      exp->failures = std::move(outcome.failures);
      break;
    }
    case aaso::experiment::Kind::Bench:
      exp->stats = aaso::experiment::run_bench(exp->spec).stats;
      break;
    case aaso::experiment::Kind::Analyze:
      return fail(AASO_ERR_INVALID_ARGUMENT,
                  "analyze experiments are run with aaso_analyze");
    }
  } catch (...) {
    return translate();
  }
  if (!exp->failures.empty()) {
    std::string msg = std::to_string(exp->failures.size()) + " run(s) failed";
    for (const auto &f : exp->failures)
      msg += "\n  " + f;
    return fail(AASO_ERR_RUN_FAILED, msg);
  }
  return AASO_OK;
}

size_t aaso_experiment_run_count(const aaso_experiment *exp) {
  return exp ? exp->runs.size() : 0;
}

aaso_status aaso_experiment_run_summary(const aaso_experiment *exp,
                                        size_t index, aaso_run_summary *out) {
  AASO_REQUIRE(exp && out, "experiment and out must not be NULL");
  AASO_REQUIRE(index < exp->runs.size(), "run index out of range");
  const auto &r = exp->runs[index];
  out->algorithm = r.algorithm.c_str();
  out->seed = r.seed;
  out->initial_rate = r.run.initial_rate;
  out->final_rate = r.run.final_rate;
  out->evaluations = r.run.evaluations;
  out->iterations = r.run.iterations;
  return AASO_OK;
}

size_t aaso_experiment_stat_count(const aaso_experiment *exp) {
  return exp ? exp->stats.size() : 0;
}

aaso_status aaso_experiment_stat(const aaso_experiment *exp, size_t index,
                                 aaso_stat_row *out) {
  AASO_REQUIRE(exp && out, "experiment and out must not be NULL");
  AASO_REQUIRE(index < exp->stats.size(), "statistics index out of range");
  const auto &s = exp->stats[index];
  out->algorithm = s.algorithm.c_str();
  out->function = s.function.c_str();
  out->runs = s.runs;
  out->best = s.best;
  out->mean = s.mean;
  out->std = s.std;
  return AASO_OK;
}

size_t aaso_experiment_failure_count(const aaso_experiment *exp) {
  return exp ? exp->failures.size() : 0;
}

const char *aaso_experiment_failure(const aaso_experiment *exp,
                                    size_t index) {
  if (!exp || index >= exp->failures.size())
    return nullptr;
  return exp->failures[index].c_str();
}

aaso_status aaso_analyze(double length_m, double width_m, size_t nodes,
                         double radius_m, double view_angle_deg, double target,
                         aaso_analysis *out) {
  AASO_REQUIRE(out, "out must not be NULL");
  try {
    std::optional<double> t;
    if (target > 0.0)
      t = target;
    const auto rep = aaso::experiment::run_analyze(
        length_m, width_m, nodes, radius_m, view_angle_deg, t);
    out->expected_coverage = rep.expected_coverage;
    out->has_target = rep.required_nodes.has_value();
    out->required_nodes = rep.required_nodes.value_or(0);
    out->saving = rep.saving.value_or(0);
    std::snprintf(out->text, sizeof out->text, "%s", rep.text.c_str());
    return AASO_OK;
  } catch (...) {
    return translate();
  }
}

void aaso_optimizer_params_default(aaso_optimizer_params *params) {
  if (!params)
    return;
  const aaso::OptimizerConfig d;
  params->population = d.population;
  params->max_iters = d.max_iters;
  params->recruit_init = 0.0;
  params->attack_coeff = d.attack_coeff;
  params->stagnation = d.stagnation_threshold;
  params->seed = d.seed;
  params->wrap_boundaries = 0;
}

aaso_status aaso_minimize(aaso_objective_fn objective, void *user, size_t dim,
                          const double *lower, const double *upper,
                          const aaso_optimizer_params *params, double *best_x,
                          double *best_f, double *history,
                          size_t *evaluations) {
  AASO_REQUIRE(objective && lower && upper && best_x && best_f,
               "objective, bounds and outputs must not be NULL");
  AASO_REQUIRE(dim > 0, "dim must be positive");
  try {
    aaso::OptimizerConfig cfg;
    aaso_optimizer_params p;
    aaso_optimizer_params_default(&p);
    if (params)
      p = *params;
    if (p.population)
      cfg.population = p.population;
    if (p.max_iters)
      cfg.max_iters = p.max_iters;
    if (p.recruit_init > 0.0)
      cfg.recruit_init = p.recruit_init;
    if (p.attack_coeff > 0.0)
      cfg.attack_coeff = p.attack_coeff;
    if (p.stagnation)
      cfg.stagnation_threshold = p.stagnation;
    cfg.seed = p.seed;

    const aaso::SearchSpace space(
        std::vector<double>(lower, lower + dim),
        std::vector<double>(upper, upper + dim),
        p.wrap_boundaries ? aaso::BoundaryPolicy::Wrap
                          : aaso::BoundaryPolicy::Clamp);
    auto fn = [&](std::span<const double> x) {
      double v = 0.0;
      if (objective(x.data(), x.size(), user, &v) != 0)
        throw aaso::ObjectiveError("objective callback reported failure");
      return v;
    };
    const auto result = aaso::run(fn, space, cfg);
    std::memcpy(best_x, result.best_position.data(), dim * sizeof(double));
    *best_f = result.best_fitness;
    if (history)
      std::memcpy(history, result.history.data(),
                  result.history.size() * sizeof(double));
    if (evaluations)
      *evaluations = result.evaluations;
    return AASO_OK;
  } catch (...) {
    return translate();
  }
}

aaso_status aaso_coverage_rate(const aaso_sensor *sensors, size_t count,
                               double length_m, double width_m,
                               double interval_m, double *rate) {
  AASO_REQUIRE(rate, "rate must not be NULL");
  AASO_REQUIRE(sensors || count == 0, "sensors must not be NULL");
  try {
    const aaso::coverage::CoverageField field(length_m, width_m, interval_m);
    std::vector<aaso::coverage::Sensor> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i)
      list.push_back(aaso::coverage::Sensor::make(
          sensors[i].x, sensors[i].y, sensors[i].radius,
          aaso::coverage::degrees_to_radians(sensors[i].view_angle_deg),
          aaso::coverage::degrees_to_radians(sensors[i].deviation_deg)));
    *rate = aaso::coverage::coverage(list, field).rate;
    return AASO_OK;
  } catch (...) {
    return translate();
  }
}

} // extern "C"
