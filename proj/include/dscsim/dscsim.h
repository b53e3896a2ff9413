/*
 * dscsim: quantum Rabi dynamics through parity chains, and waveguide-array
 * recipes that realise them.
 *
 * Every function returns a dsc_status; on failure dsc_last_error() holds a
 * message for the calling thread until its next failing call. Objects are
 * opaque and owned by the caller once returned; release them with the
 * matching *_free function (passing NULL is allowed).
 */
#ifndef DSCSIM_DSCSIM_H
#define DSCSIM_DSCSIM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DSCSIM_BUILDING_LIBRARY)
#    define DSC_API __declspec(dllexport)
#  else
#    define DSC_API __declspec(dllimport)
#  endif
#else
#  define DSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dsc_status {
  DSC_OK = 0,
  DSC_ERR_INVALID_ARGUMENT = 1,
  DSC_ERR_CONFIG = 2,
  DSC_ERR_IO = 3,
  DSC_ERR_DIMENSION = 4,
  DSC_ERR_DOMAIN = 5,
  DSC_ERR_RANGE = 6,
  DSC_ERR_NUMERIC = 7,
  DSC_ERR_FEASIBILITY = 8,
  DSC_ERR_VALIDATION = 9,
  DSC_ERR_INTERNAL = 10
} dsc_status;

typedef struct dsc_config dsc_config;
typedef struct dsc_trajectory dsc_trajectory;
typedef struct dsc_report dsc_report;

/* Model parameters; frequencies in mm^-1. */
typedef struct dsc_params {
  double omega0;
  double omega;
  double g;
  size_t n_trunc;
} dsc_params;

typedef struct dsc_observables {
  double t;
  double p_excited;
  double p_ground;
  double p_revival;
  double mean_photon;
} dsc_observables;

DSC_API const char* dsc_version(void);
DSC_API const char* dsc_last_error(void);
DSC_API const char* dsc_status_name(dsc_status status);

/* ---- configuration ---------------------------------------------------- */

DSC_API dsc_status dsc_config_parse(const char* text, dsc_config** out);
DSC_API dsc_status dsc_config_load(const char* path, dsc_config** out);
DSC_API void dsc_config_free(dsc_config* config);
DSC_API dsc_status dsc_config_params(const dsc_config* config, dsc_params* out);
/* Output directory from the config; valid while config lives. */
DSC_API const char* dsc_config_output_dir(const dsc_config* config);
DSC_API int dsc_config_image(const dsc_config* config);

/* ---- commands ----------------------------------------------------------
 * out_dir may be NULL to use the config's [output] dir. summary may be NULL;
 * when given it receives a report listing written files and key figures. */

DSC_API dsc_status dsc_simulate(const dsc_config* config, const char* out_dir,
                                int write_image, dsc_report** summary);
/* omega0 values are signed device detunings: >= 0 starts in |e,0>, < 0
 * starts in |g,0> with transition frequency |omega0|. count == 0 uses
 * {-0.08, -0.04, 0, 0.04, 0.08}. */
DSC_API dsc_status dsc_sweep(const dsc_config* config, const double* omega0,
                             size_t count, unsigned jobs, const char* out_dir,
                             dsc_report** summary);
DSC_API dsc_status dsc_design(const dsc_config* config, const char* out_dir,
                              dsc_report** summary);
/* Checks a recipe table written by dsc_design. Returns DSC_ERR_VALIDATION
 * (with the report still filled in) when a deviation exceeds 1e-6. */
DSC_API dsc_status dsc_verify_recipe(const dsc_config* config,
                                     const char* recipe_path,
                                     dsc_report** report);
/* Fixed-seed invariant and oracle suite. Returns DSC_ERR_VALIDATION (report
 * still filled in) when any property fails. */
DSC_API dsc_status dsc_validate(dsc_report** report);

DSC_API const char* dsc_report_text(const dsc_report* report);
DSC_API int dsc_report_passed(const dsc_report* report);
DSC_API void dsc_report_free(dsc_report* report);

/* ---- direct dynamics -------------------------------------------------- */

/* amp_e / amp_g hold n_trunc interleaved (re, im) pairs; the state must be
 * normalised to 1e-12. Samples {0, dt, ..., <= t_max}. */
DSC_API dsc_status dsc_trajectory_run(const dsc_params* params,
                                      const double* amp_e, const double* amp_g,
                                      double t_max, double dt,
                                      dsc_trajectory** out);
/* qubit is 'e' or 'g'. */
DSC_API dsc_status dsc_trajectory_run_fock(const dsc_params* params, char qubit,
                                           size_t photons, double t_max,
                                           double dt, dsc_trajectory** out);
DSC_API size_t dsc_trajectory_points(const dsc_trajectory* traj);
DSC_API size_t dsc_trajectory_sites(const dsc_trajectory* traj);
DSC_API dsc_status dsc_trajectory_observables(const dsc_trajectory* traj,
                                              size_t index,
                                              dsc_observables* out);
DSC_API dsc_status dsc_trajectory_photon_distribution(
    const dsc_trajectory* traj, size_t index, double* out, size_t len);
/* 1 when the two outermost sites ever held more than 1e-8. */
DSC_API int dsc_trajectory_truncation_flag(const dsc_trajectory* traj);
DSC_API void dsc_trajectory_free(dsc_trajectory* traj);

/* ---- closed forms (omega0 must be 0; initial state |e,0>) -------------- */

DSC_API dsc_status dsc_lf_period(const dsc_params* params, double* out);
DSC_API dsc_status dsc_lf_revival(const dsc_params* params, double t,
                                  double* out);
DSC_API dsc_status dsc_lf_mean_photon(const dsc_params* params, double t,
                                      double* out);

#ifdef __cplusplus
}
#endif

#endif /* DSCSIM_DSCSIM_H */
