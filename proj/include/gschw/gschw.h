/* C interface to the gauged Schwarzian numerics.
 *
 * Objects are opaque handles created by *_new / producing calls and released
 * with the matching *_free. Every fallible call returns a gschw_status; on
 * failure gschw_last_error() returns a message for the calling thread.
 * Strings returned by accessors are owned by the handle and stay valid until
 * it is freed.
 */
#ifndef GSCHW_H
#define GSCHW_H

#include <stddef.h>
#include <stdint.h>

#if defined(GSCHW_BUILDING_LIBRARY)
#define GSCHW_API __attribute__((visibility("default")))
#else
#define GSCHW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gschw_status {
  GSCHW_OK = 0,
  GSCHW_ERR_INVALID_ARGUMENT = 1,
  GSCHW_ERR_SINGULAR_DENOMINATOR = 2,
  GSCHW_ERR_CRITICAL_POINT = 3,
  GSCHW_ERR_MOBIUS_SINGULARITY = 4,
  GSCHW_ERR_DEGENERATE = 5,
  GSCHW_ERR_POLE = 6,
  GSCHW_ERR_APPROACHING_CRITICAL_POINT = 7,
  GSCHW_ERR_BLOW_UP = 8,
  GSCHW_ERR_GAUGE_SINGULAR = 9,
  GSCHW_ERR_NOT_A_LOOP = 10,
  GSCHW_ERR_PARSE = 11,
  GSCHW_ERR_INTERNAL = 12
} gschw_status;

typedef struct gschw_config gschw_config;
typedef struct gschw_report gschw_report;
typedef struct gschw_trajectory gschw_trajectory;

GSCHW_API const char* gschw_status_string(gschw_status status);
GSCHW_API const char* gschw_last_error(void);
GSCHW_API const char* gschw_version(void);

/* Run configuration: seed, named tolerances, case count, time grid. */
GSCHW_API gschw_config* gschw_config_new(void);
GSCHW_API void gschw_config_free(gschw_config* cfg);
GSCHW_API gschw_status gschw_config_set_seed(gschw_config* cfg, uint64_t seed);
GSCHW_API gschw_status gschw_config_set_tolerance(gschw_config* cfg, const char* name, double value);
GSCHW_API gschw_status gschw_config_set_cases(gschw_config* cfg, int cases);
GSCHW_API gschw_status gschw_config_set_grid(gschw_config* cfg, double t0, double t1, double dt);
GSCHW_API gschw_status gschw_config_set_holonomy_steps(gschw_config* cfg, int steps);

/* Verification suites. On success *out receives a report handle. */
GSCHW_API gschw_status gschw_verify(const gschw_config* cfg, gschw_report** out);
GSCHW_API gschw_status gschw_gauge_check(const gschw_config* cfg, gschw_report** out);
GSCHW_API gschw_status gschw_expand(const gschw_config* cfg, gschw_report** out);

GSCHW_API void gschw_report_free(gschw_report* report);
GSCHW_API int gschw_report_passed(const gschw_report* report);
GSCHW_API size_t gschw_report_check_count(const gschw_report* report);
/* Any output pointer may be NULL. */
GSCHW_API gschw_status gschw_report_check(const gschw_report* report, size_t index, const char** name,
                                          double* max_residual, double* tolerance, int* pass);
GSCHW_API const char* gschw_report_json(const gschw_report* report);

/* Trajectories over the configured grid. */
GSCHW_API gschw_status gschw_simulate_family(const gschw_config* cfg, double a, double b, double c, double d,
                                             double qsq, gschw_trajectory** out);
GSCHW_API gschw_status gschw_simulate_first_order(const gschw_config* cfg, double x0, double v0, double lambda,
                                                  gschw_trajectory** out);
GSCHW_API gschw_status gschw_simulate_initial(const gschw_config* cfg, double f, double f1, double f2, double f3,
                                              gschw_trajectory** out);

GSCHW_API void gschw_trajectory_free(gschw_trajectory* traj);
GSCHW_API size_t gschw_trajectory_size(const gschw_trajectory* traj);
/* Writes t, f, f1, f2, f3, N0, N1, N2, schwarzian into row[9]. */
GSCHW_API gschw_status gschw_trajectory_sample(const gschw_trajectory* traj, size_t index, double row[9]);
GSCHW_API double gschw_trajectory_charge_drift(const gschw_trajectory* traj);
GSCHW_API double gschw_trajectory_schwarzian_drift(const gschw_trajectory* traj);
/* Largest deviation from the exact solution, or a negative value when the
 * trajectory has no exact reference (initial-data runs). For first-order runs
 * this is the error of x against the closed form. */
GSCHW_API double gschw_trajectory_reference_error(const gschw_trajectory* traj);
GSCHW_API const char* gschw_trajectory_csv(gschw_trajectory* traj);
GSCHW_API const char* gschw_trajectory_json(gschw_trajectory* traj);

/* Winding data of a potential given as const:A0,A1,A2 | fourier:M:file |
 * puregauge:rot:m. steps <= 0 selects the default of 4096. */
typedef struct gschw_winding_result {
  double paper_value;
  int has_angle_lift;
  int angle_lift;
  double holonomy[4];
  double closure_error;
  int trivializable;
} gschw_winding_result;

GSCHW_API gschw_status gschw_winding(const char* potential_spec, int steps, gschw_winding_result* out);

/* Point evaluations from derivative values. */
GSCHW_API gschw_status gschw_schwarzian(double f1, double f2, double f3, double* out);
GSCHW_API gschw_status gschw_noether_charges(double f, double f1, double f2, double f3, double out[3]);

#ifdef __cplusplus
}
#endif

#endif /* GSCHW_H */
