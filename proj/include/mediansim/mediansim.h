#ifndef MEDIANSIM_H
#define MEDIANSIM_H

/*
 * C API of the mediansim shared library.
 *
 * A distributed median solver in discrete time: agents hold reference values
 * o_i, exchange states over an undirected connected graph, and converge to
 * the median of the references. The library implements the implicit-explicit
 * update (chattering-free, unconditionally stable in the time step), the
 * forward-Euler baseline, spectral analysis of the iteration matrix, run
 * metrics, and scenario-driven experiment execution.
 *
 * Conventions:
 *  - every fallible function returns ms_status; MS_OK is 0
 *  - on failure, ms_last_error() returns a thread-local message
 *  - objects are opaque handles released with the matching _destroy()
 *  - agent indices in this header are 1-based, matching scenario files;
 *    buffers are caller-allocated with sizes derived from n_agents/n_states
 *  - matrices fill row-major
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MS_API __declspec(dllexport)
#else
#define MS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ms_status {
    MS_OK = 0,
    MS_ERR_INVALID_ARGUMENT,
    MS_ERR_NONFINITE_INPUT,
    MS_ERR_SELF_LOOP,
    MS_ERR_NONPOSITIVE_WEIGHT,
    MS_ERR_DUPLICATE_EDGE,
    MS_ERR_DISCONNECTED_GRAPH,
    MS_ERR_EMPTY_OBSERVATIONS,
    MS_ERR_DIMENSION_MISMATCH,
    MS_ERR_NOT_SYMMETRIC,
    MS_ERR_NO_CONVERGENCE,
    MS_ERR_TRAJECTORY_TOO_SHORT,
    MS_ERR_BOUND_VIOLATED,
    MS_ERR_GAIN_NOT_FOUND,
    MS_ERR_PARSE,
    MS_ERR_VALIDATION,
    MS_ERR_IO,
    MS_ERR_INTERNAL
} ms_status;

MS_API const char* ms_version(void);
MS_API const char* ms_status_name(ms_status status);

/* Message for the most recent failure on this thread ("" if none). */
MS_API const char* ms_last_error(void);

/* ------------------------------------------------------------------ graph */

typedef struct ms_graph ms_graph;

typedef struct ms_edge {
    int32_t i; /* 1-based */
    int32_t j; /* 1-based */
    double weight;
} ms_edge;

MS_API ms_status ms_graph_create(int32_t n_agents, const ms_edge* edges, int32_t n_edges,
                                 ms_graph** out);
MS_API ms_status ms_graph_create_complete(int32_t n_agents, double weight, ms_graph** out);
MS_API void ms_graph_destroy(ms_graph* g);

MS_API int32_t ms_graph_n_agents(const ms_graph* g);
/* out: n_agents doubles */
MS_API ms_status ms_graph_degrees(const ms_graph* g, double* out);
/* out: n_agents * n_agents doubles, row-major Laplacian D - A */
MS_API ms_status ms_graph_laplacian(const ms_graph* g, double* out);

/* ----------------------------------------------------------------- median */

MS_API ms_status ms_median_set(const double* values, int32_t n, double* out_lo, double* out_hi);
/* distance of x to the closed interval [lo, hi] */
MS_API double ms_median_dist(double x, double lo, double hi);
MS_API ms_status ms_median_objective(double x, const double* values, int32_t n, double* out);

/* ---------------------------------------------------------------- solvers */

typedef struct ms_imex_config {
    double k;
    int64_t max_iters;
    double convergence_tol;
} ms_imex_config;

typedef struct ms_explicit_config {
    double k;
    double t_s;
    int64_t max_iters;
    double convergence_tol;
    double divergence_threshold; /* <= 0 selects 1e6 * (1 + max|o_i|) */
} ms_explicit_config;

typedef struct ms_trajectory ms_trajectory;

/* obs and x have n_agents entries; out_x receives the next state and
 * out_drives (optional, may be NULL) the per-agent drives in {-1, 0, +1}. */
MS_API ms_status ms_imex_step(const ms_graph* g, const double* obs, double k, const double* x,
                              double* out_x, int8_t* out_drives);
MS_API ms_status ms_explicit_step(const ms_graph* g, const double* obs, double k, double t_s,
                                  const double* x, double* out_x);

MS_API ms_status ms_run_imex(const ms_graph* g, const double* obs, const ms_imex_config* cfg,
                             const double* x0, ms_trajectory** out);
MS_API ms_status ms_run_explicit(const ms_graph* g, const double* obs,
                                 const ms_explicit_config* cfg, const double* x0,
                                 ms_trajectory** out);

MS_API void ms_trajectory_destroy(ms_trajectory* t);
MS_API int64_t ms_trajectory_n_states(const ms_trajectory* t);
MS_API int32_t ms_trajectory_n_agents(const ms_trajectory* t);
/* -1 when the run hit max_iters without meeting the tolerance */
MS_API int64_t ms_trajectory_converged_at(const ms_trajectory* t);
MS_API int ms_trajectory_diverged(const ms_trajectory* t);
/* out: n_agents doubles; n in [0, n_states) */
MS_API ms_status ms_trajectory_state(const ms_trajectory* t, int64_t n, double* out);
/* out: n_agents int8; n in [0, n_states - 1); imex trajectories only */
MS_API ms_status ms_trajectory_drives(const ms_trajectory* t, int64_t n, int8_t* out);
/* weighted average w_k^T X[n] */
MS_API ms_status ms_trajectory_averaged(const ms_trajectory* t, int64_t n, double* out);

/* --------------------------------------------------------------- spectral */

typedef struct ms_spectral_scalars {
    double c_k;
    double q_k;
    double c_inf;
    double q_inf;
    double error_bound;           /* C_k/(1-q_k) * sqrt(N)/(1 + k min_i d_i) */
    double explicit_ts_threshold; /* 2 / (k lambda_max(L)) */
} ms_spectral_scalars;

MS_API ms_status ms_spectral_scalars_compute(const ms_graph* g, double k,
                                             ms_spectral_scalars* out);
/* any of the buffers may be NULL: b_k is n*n row-major, w_k and l_k_eigs
 * hold n doubles (eigenvalues of the symmetrized scaled Laplacian,
 * nondecreasing) */
MS_API ms_status ms_spectral_matrices(const ms_graph* g, double k, double* out_b_k,
                                      double* out_w_k, double* out_l_k_eigs);
/* max over n <= n_max of ||B_k^n - 1 w_k^T|| / (C_k q_k^n); fails with
 * MS_ERR_BOUND_VIOLATED if it exceeds 1 + 1e-9 */
MS_API ms_status ms_verify_decay_bound(const ms_graph* g, double k, int32_t n_max,
                                       double* out_max_ratio);
/* smallest k with 3 * error_bound <= epsilon; MS_ERR_GAIN_NOT_FOUND when the
 * bound cannot reach the target for any k */
MS_API ms_status ms_min_gain_for_epsilon(const ms_graph* g, double epsilon, double* out_k);

/* ---------------------------------------------------------------- metrics */

typedef struct ms_metrics {
    double final_dist_max;
    double sup_tail_dist_max;
    double chattering_index_max;
    double steady_state_amplitude_max;
    double disagreement_norm;
    double sup_tail_avg_dist;
    double band;
    int64_t iters_to_band; /* -1 if never inside the band */
    int64_t tail_start;
    int64_t tail_len;
} ms_metrics;

/* tail_fraction in (0, 0.5], e.g. 0.25 */
MS_API ms_status ms_compute_metrics(const ms_trajectory* t, const ms_graph* g, const double* obs,
                                    double k, double tail_fraction, ms_metrics* out);
/* per-agent buffers of n_agents doubles; any may be NULL */
MS_API ms_status ms_compute_metrics_per_agent(const ms_trajectory* t, const ms_graph* g,
                                              const double* obs, double k, double tail_fraction,
                                              double* out_final_dist, double* out_sup_tail_dist,
                                              double* out_chattering, double* out_amplitude);
MS_API ms_status ms_theorem1_check(const ms_trajectory* t, const ms_graph* g, const double* obs,
                                   double k, double* out_allowed, double* out_measured,
                                   int* out_pass);

/* -------------------------------------------------------------- scenarios */

typedef struct ms_scenario ms_scenario;
typedef struct ms_run_report ms_run_report;

MS_API ms_status ms_scenario_load_file(const char* path, ms_scenario** out);
MS_API ms_status ms_scenario_load_string(const char* text, ms_scenario** out);
MS_API ms_status ms_scenario_load_bundled(const char* name, ms_scenario** out);
/* file path first, bundled name second */
MS_API ms_status ms_scenario_resolve(const char* ref, ms_scenario** out);
MS_API void ms_scenario_destroy(ms_scenario* s);

/* comma-separated list of bundled scenario names (static storage) */
MS_API const char* ms_bundled_scenario_names(void);
MS_API const char* ms_scenario_name(const ms_scenario* s);

MS_API ms_status ms_scenario_set_output_dir(ms_scenario* s, const char* dir);
MS_API ms_status ms_scenario_set_seed(ms_scenario* s, uint64_t seed);
MS_API ms_status ms_scenario_set_max_iters(ms_scenario* s, int64_t max_iters);
MS_API ms_status ms_scenario_set_tolerance(ms_scenario* s, double tol);
/* "imex", "explicit" or "both" */
MS_API ms_status ms_scenario_set_method(ms_scenario* s, const char* method);
MS_API ms_status ms_scenario_set_time_step(ms_scenario* s, double t_s);
MS_API ms_status ms_scenario_set_sweep_k(ms_scenario* s, const double* ks, int32_t n);
MS_API ms_status ms_scenario_set_sweep_ts(ms_scenario* s, const double* ts, int32_t n);
MS_API ms_status ms_scenario_set_chart(ms_scenario* s, int enabled);

MS_API ms_status ms_scenario_run(const ms_scenario* s, ms_run_report** out);
MS_API void ms_run_report_destroy(ms_run_report* r);

MS_API const char* ms_run_report_summary(const ms_run_report* r);
MS_API int32_t ms_run_report_n_runs(const ms_run_report* r);
MS_API int ms_run_report_any_diverged(const ms_run_report* r);
/* 1 when every imex run satisfied the convergence-guarantee check */
MS_API int ms_run_report_theorem1_all_pass(const ms_run_report* r);
MS_API const char* ms_run_report_metrics_csv_path(const ms_run_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MEDIANSIM_H */
