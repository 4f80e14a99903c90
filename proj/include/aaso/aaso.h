#ifndef AASO_AASO_H
#define AASO_AASO_H

/*
 * C interface to the aaso library.
 *
 * Every call returns an aaso_status. On failure the thread-local message
 * from aaso_last_error() describes what went wrong; it stays valid until the
 * next failing call on the same thread. Angles cross this boundary in
 * degrees for experiments and sensors, lengths in meters.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(AASO_BUILDING_LIBRARY)
#define AASO_API __declspec(dllexport)
#else
#define AASO_API __declspec(dllimport)
#endif
#else
#define AASO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aaso_status {
  AASO_OK = 0,
  AASO_ERR_INVALID_ARGUMENT = 1,
  AASO_ERR_CONFIG = 2,
  AASO_ERR_IO = 3,
  AASO_ERR_DOMAIN = 4,
  AASO_ERR_OBJECTIVE = 5,
  /* Some runs failed; the others completed and were written. */
  AASO_ERR_RUN_FAILED = 6,
  AASO_ERR_INTERNAL = 7
} aaso_status;

typedef enum aaso_kind {
  AASO_KIND_COVER = 0,
  AASO_KIND_BENCH = 1,
  AASO_KIND_ANALYZE = 2
} aaso_kind;

typedef struct aaso_experiment aaso_experiment;

typedef struct aaso_run_summary {
  const char *algorithm; /* owned by the experiment */
  uint64_t seed;
  double initial_rate;
  double final_rate;
  size_t evaluations;
  size_t iterations;
} aaso_run_summary;

typedef struct aaso_stat_row {
  const char *algorithm; /* owned by the experiment */
  const char *function;
  size_t runs;
  double best;
  double mean;
  double std;
} aaso_stat_row;

AASO_API const char *aaso_version(void);
AASO_API const char *aaso_last_error(void);
AASO_API const char *aaso_status_name(aaso_status status);

/* Experiments */
AASO_API aaso_status aaso_experiment_load(const char *path,
                                          aaso_experiment **out);
AASO_API aaso_status aaso_experiment_load_text(const char *text,
                                               aaso_experiment **out);
AASO_API void aaso_experiment_free(aaso_experiment *exp);

AASO_API aaso_status aaso_experiment_kind(const aaso_experiment *exp,
                                          aaso_kind *out);
/* "1..10", "1,2,5" or a mix. */
AASO_API aaso_status aaso_experiment_set_seeds(aaso_experiment *exp,
                                               const char *seeds);
AASO_API aaso_status aaso_experiment_set_output_dir(aaso_experiment *exp,
                                                    const char *dir);
AASO_API aaso_status aaso_experiment_set_threads(aaso_experiment *exp,
                                                 size_t threads);

/* Runs a cover or bench experiment and writes its artifacts. */
AASO_API aaso_status aaso_experiment_run(aaso_experiment *exp);

AASO_API size_t aaso_experiment_run_count(const aaso_experiment *exp);
AASO_API aaso_status aaso_experiment_run_summary(const aaso_experiment *exp,
                                                 size_t index,
                                                 aaso_run_summary *out);
AASO_API size_t aaso_experiment_stat_count(const aaso_experiment *exp);
AASO_API aaso_status aaso_experiment_stat(const aaso_experiment *exp,
                                          size_t index, aaso_stat_row *out);
AASO_API size_t aaso_experiment_failure_count(const aaso_experiment *exp);
/* "algorithm:seed: message"; NULL when out of range. */
AASO_API const char *aaso_experiment_failure(const aaso_experiment *exp,
                                             size_t index);

/* Deployment analysis */
typedef struct aaso_analysis {
  double expected_coverage;
  int has_target;
  size_t required_nodes;
  long long saving;
  char text[512];
} aaso_analysis;

/* target <= 0 skips the node-count estimate. */
AASO_API aaso_status aaso_analyze(double length_m, double width_m,
                                  size_t nodes, double radius_m,
                                  double view_angle_deg, double target,
                                  aaso_analysis *out);

/* Generic minimization */

/* Writes f(x) to *out and returns 0; nonzero aborts the run. */
typedef int (*aaso_objective_fn)(const double *x, size_t dim, void *user,
                                 double *out);

typedef struct aaso_optimizer_params {
  size_t population;     /* 0 means 50 */
  size_t max_iters;      /* 0 means 100 */
  double recruit_init;   /* <= 0 means population / 2 */
  double attack_coeff;   /* <= 0 means 2 */
  size_t stagnation;     /* 0 means 5 */
  uint64_t seed;
  int wrap_boundaries;   /* nonzero: periodic box instead of clamping */
} aaso_optimizer_params;

AASO_API void aaso_optimizer_params_default(aaso_optimizer_params *params);

/* best_x holds dim values. history, when non-NULL, receives max_iters
 * best-so-far values. evaluations may be NULL. */
AASO_API aaso_status aaso_minimize(aaso_objective_fn objective, void *user,
                                   size_t dim, const double *lower,
                                   const double *upper,
                                   const aaso_optimizer_params *params,
                                   double *best_x, double *best_f,
                                   double *history, size_t *evaluations);

/* Coverage */
typedef struct aaso_sensor {
  double x;
  double y;
  double radius;
  double view_angle_deg;
  double deviation_deg;
} aaso_sensor;

AASO_API aaso_status aaso_coverage_rate(const aaso_sensor *sensors,
                                        size_t count, double length_m,
                                        double width_m, double interval_m,
                                        double *rate);

#ifdef __cplusplus
}
#endif

#endif
