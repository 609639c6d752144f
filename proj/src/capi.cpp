// extern-C surface of the shared library. Opaque handles wrap the C++ core;
// every entry point catches, stores a thread-local message and returns a
// status code.

#include "mediansim/mediansim.h"

#include <cstring>
#include <new>
#include <string>

#include "mediansim/error.hpp"
#include "mediansim/explicit_method.hpp"
#include "mediansim/graph.hpp"
#include "mediansim/imex.hpp"
#include "mediansim/median.hpp"
#include "mediansim/metrics.hpp"
#include "mediansim/scenario.hpp"
#include "mediansim/spectral.hpp"

using namespace mediansim;

struct ms_graph {
    Graph graph;
};

struct ms_trajectory {
    Trajectory traj;
};

struct ms_scenario {
    Scenario scenario;
};

struct ms_run_report {
    RunReport report;
};

namespace {

thread_local std::string t_last_error;

ms_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return MS_ERR_INVALID_ARGUMENT;
        case ErrorCode::NonFiniteInput: return MS_ERR_NONFINITE_INPUT;
        case ErrorCode::SelfLoop: return MS_ERR_SELF_LOOP;
        case ErrorCode::NonPositiveWeight: return MS_ERR_NONPOSITIVE_WEIGHT;
        case ErrorCode::DuplicateEdge: return MS_ERR_DUPLICATE_EDGE;
        case ErrorCode::DisconnectedGraph: return MS_ERR_DISCONNECTED_GRAPH;
        case ErrorCode::EmptyObservations: return MS_ERR_EMPTY_OBSERVATIONS;
        case ErrorCode::DimensionMismatch: return MS_ERR_DIMENSION_MISMATCH;
        case ErrorCode::NotSymmetric: return MS_ERR_NOT_SYMMETRIC;
        case ErrorCode::NoConvergence: return MS_ERR_NO_CONVERGENCE;
        case ErrorCode::TrajectoryTooShort: return MS_ERR_TRAJECTORY_TOO_SHORT;
        case ErrorCode::BoundViolated: return MS_ERR_BOUND_VIOLATED;
        case ErrorCode::GainNotFound: return MS_ERR_GAIN_NOT_FOUND;
        case ErrorCode::ParseError: return MS_ERR_PARSE;
        case ErrorCode::ValidationError: return MS_ERR_VALIDATION;
        case ErrorCode::IoError: return MS_ERR_IO;
    }
    return MS_ERR_INTERNAL;
}

ms_status set_error(ms_status status, const char* message) {
    t_last_error = message ? message : "";
    return status;
}

template <typename Fn>
ms_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return MS_OK;
    } catch (const Error& e) {
        return set_error(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(MS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(MS_ERR_INTERNAL, e.what());
    }
}

ms_status require(bool ok, const char* message) {
    return ok ? MS_OK : set_error(MS_ERR_INVALID_ARGUMENT, message);
}

ObservationSet make_obs(const ms_graph* g, const double* obs) {
    return ObservationSet(Vec(obs, obs + g->graph.n_agents()));
}

} // namespace

extern "C" {

const char* ms_version(void) { return "0.1.0"; }

const char* ms_status_name(ms_status status) {
    switch (status) {
        case MS_OK: return "MS_OK";
        case MS_ERR_INVALID_ARGUMENT: return "MS_ERR_INVALID_ARGUMENT";
        case MS_ERR_NONFINITE_INPUT: return "MS_ERR_NONFINITE_INPUT";
        case MS_ERR_SELF_LOOP: return "MS_ERR_SELF_LOOP";
        case MS_ERR_NONPOSITIVE_WEIGHT: return "MS_ERR_NONPOSITIVE_WEIGHT";
        case MS_ERR_DUPLICATE_EDGE: return "MS_ERR_DUPLICATE_EDGE";
        case MS_ERR_DISCONNECTED_GRAPH: return "MS_ERR_DISCONNECTED_GRAPH";
        case MS_ERR_EMPTY_OBSERVATIONS: return "MS_ERR_EMPTY_OBSERVATIONS";
        case MS_ERR_DIMENSION_MISMATCH: return "MS_ERR_DIMENSION_MISMATCH";
        case MS_ERR_NOT_SYMMETRIC: return "MS_ERR_NOT_SYMMETRIC";
        case MS_ERR_NO_CONVERGENCE: return "MS_ERR_NO_CONVERGENCE";
        case MS_ERR_TRAJECTORY_TOO_SHORT: return "MS_ERR_TRAJECTORY_TOO_SHORT";
        case MS_ERR_BOUND_VIOLATED: return "MS_ERR_BOUND_VIOLATED";
        case MS_ERR_GAIN_NOT_FOUND: return "MS_ERR_GAIN_NOT_FOUND";
        case MS_ERR_PARSE: return "MS_ERR_PARSE";
        case MS_ERR_VALIDATION: return "MS_ERR_VALIDATION";
        case MS_ERR_IO: return "MS_ERR_IO";
        case MS_ERR_INTERNAL: return "MS_ERR_INTERNAL";
    }
    return "MS_ERR_INTERNAL";
}

const char* ms_last_error(void) { return t_last_error.c_str(); }

/* ------------------------------------------------------------------ graph */

ms_status ms_graph_create(int32_t n_agents, const ms_edge* edges, int32_t n_edges,
                          ms_graph** out) {
    if (ms_status s = require(out && (edges || n_edges == 0) && n_edges >= 0,
                              "ms_graph_create: bad arguments"))
        return s;
    *out = nullptr;
    return guarded([&] {
        std::vector<Edge> list;
        list.reserve(static_cast<size_t>(n_edges));
        for (int32_t e = 0; e < n_edges; ++e)
            list.push_back({edges[e].i - 1, edges[e].j - 1, edges[e].weight});
        *out = new ms_graph{Graph::from_edges(n_agents, list)};
    });
}

ms_status ms_graph_create_complete(int32_t n_agents, double weight, ms_graph** out) {
    if (ms_status s = require(out != nullptr, "ms_graph_create_complete: out is NULL")) return s;
    *out = nullptr;
    return guarded([&] { *out = new ms_graph{Graph::complete(n_agents, weight)}; });
}

void ms_graph_destroy(ms_graph* g) { delete g; }

int32_t ms_graph_n_agents(const ms_graph* g) { return g ? g->graph.n_agents() : 0; }

ms_status ms_graph_degrees(const ms_graph* g, double* out) {
    if (ms_status s = require(g && out, "ms_graph_degrees: NULL argument")) return s;
    const Vec& d = g->graph.degrees();
    std::memcpy(out, d.data(), d.size() * sizeof(double));
    return MS_OK;
}

ms_status ms_graph_laplacian(const ms_graph* g, double* out) {
    if (ms_status s = require(g && out, "ms_graph_laplacian: NULL argument")) return s;
    return guarded([&] {
        const Matrix l = g->graph.laplacian();
        std::memcpy(out, l.data().data(), l.data().size() * sizeof(double));
    });
}

/* ----------------------------------------------------------------- median */

ms_status ms_median_set(const double* values, int32_t n, double* out_lo, double* out_hi) {
    if (ms_status s = require(values && out_lo && out_hi && n >= 0,
                              "ms_median_set: bad arguments"))
        return s;
    return guarded([&] {
        const MedianSet m = median_set(ObservationSet(Vec(values, values + n)));
        *out_lo = m.lo;
        *out_hi = m.hi;
    });
}

double ms_median_dist(double x, double lo, double hi) {
    return dist_to_median(x, MedianSet{lo, hi});
}

ms_status ms_median_objective(double x, const double* values, int32_t n, double* out) {
    if (ms_status s = require(values && out && n >= 0, "ms_median_objective: bad arguments"))
        return s;
    return guarded([&] { *out = median_objective(x, ObservationSet(Vec(values, values + n))); });
}

/* ---------------------------------------------------------------- solvers */

ms_status ms_imex_step(const ms_graph* g, const double* obs, double k, const double* x,
                       double* out_x, int8_t* out_drives) {
    if (ms_status s = require(g && obs && x && out_x, "ms_imex_step: NULL argument")) return s;
    return guarded([&] {
        const int n = g->graph.n_agents();
        auto [next, drives] =
            imex_step(g->graph, make_obs(g, obs), k, std::span<const double>(x, n));
        std::memcpy(out_x, next.data(), next.size() * sizeof(double));
        if (out_drives) std::memcpy(out_drives, drives.data(), drives.size());
    });
}

ms_status ms_explicit_step(const ms_graph* g, const double* obs, double k, double t_s,
                           const double* x, double* out_x) {
    if (ms_status s = require(g && obs && x && out_x, "ms_explicit_step: NULL argument")) return s;
    return guarded([&] {
        const int n = g->graph.n_agents();
        const Vec next =
            explicit_step(g->graph, make_obs(g, obs), k, t_s, std::span<const double>(x, n));
        std::memcpy(out_x, next.data(), next.size() * sizeof(double));
    });
}

ms_status ms_run_imex(const ms_graph* g, const double* obs, const ms_imex_config* cfg,
                      const double* x0, ms_trajectory** out) {
    if (ms_status s = require(g && obs && cfg && x0 && out, "ms_run_imex: NULL argument"))
        return s;
    *out = nullptr;
    return guarded([&] {
        ImexConfig c{cfg->k, cfg->max_iters, cfg->convergence_tol};
        Vec init(x0, x0 + g->graph.n_agents());
        *out = new ms_trajectory{run_imex(g->graph, make_obs(g, obs), c, std::move(init))};
    });
}

ms_status ms_run_explicit(const ms_graph* g, const double* obs, const ms_explicit_config* cfg,
                          const double* x0, ms_trajectory** out) {
    if (ms_status s = require(g && obs && cfg && x0 && out, "ms_run_explicit: NULL argument"))
        return s;
    *out = nullptr;
    return guarded([&] {
        ExplicitConfig c{cfg->k, cfg->t_s, cfg->max_iters, cfg->convergence_tol,
                         cfg->divergence_threshold};
        Vec init(x0, x0 + g->graph.n_agents());
        *out = new ms_trajectory{run_explicit(g->graph, make_obs(g, obs), c, std::move(init))};
    });
}

void ms_trajectory_destroy(ms_trajectory* t) { delete t; }

int64_t ms_trajectory_n_states(const ms_trajectory* t) { return t ? t->traj.n_states() : 0; }

int32_t ms_trajectory_n_agents(const ms_trajectory* t) { return t ? t->traj.n_agents() : 0; }

int64_t ms_trajectory_converged_at(const ms_trajectory* t) {
    return t && t->traj.converged_at ? *t->traj.converged_at : -1;
}

int ms_trajectory_diverged(const ms_trajectory* t) { return t && t->traj.diverged ? 1 : 0; }

ms_status ms_trajectory_state(const ms_trajectory* t, int64_t n, double* out) {
    if (ms_status s = require(t && out, "ms_trajectory_state: NULL argument")) return s;
    if (n < 0 || n >= t->traj.n_states())
        return set_error(MS_ERR_INVALID_ARGUMENT, "ms_trajectory_state: index out of range");
    const Vec& x = t->traj.states[static_cast<size_t>(n)];
    std::memcpy(out, x.data(), x.size() * sizeof(double));
    return MS_OK;
}

ms_status ms_trajectory_drives(const ms_trajectory* t, int64_t n, int8_t* out) {
    if (ms_status s = require(t && out, "ms_trajectory_drives: NULL argument")) return s;
    if (n < 0 || n >= static_cast<int64_t>(t->traj.drives.size()))
        return set_error(MS_ERR_INVALID_ARGUMENT, "ms_trajectory_drives: index out of range");
    const auto& d = t->traj.drives[static_cast<size_t>(n)];
    std::memcpy(out, d.data(), d.size());
    return MS_OK;
}

ms_status ms_trajectory_averaged(const ms_trajectory* t, int64_t n, double* out) {
    if (ms_status s = require(t && out, "ms_trajectory_averaged: NULL argument")) return s;
    if (n < 0 || n >= t->traj.n_states())
        return set_error(MS_ERR_INVALID_ARGUMENT, "ms_trajectory_averaged: index out of range");
    *out = t->traj.averaged[static_cast<size_t>(n)];
    return MS_OK;
}

/* --------------------------------------------------------------- spectral */

ms_status ms_spectral_scalars_compute(const ms_graph* g, double k, ms_spectral_scalars* out) {
    if (ms_status s = require(g && out, "ms_spectral_scalars_compute: NULL argument")) return s;
    return guarded([&] {
        const SpectralReport r = contraction_constants(g->graph, k);
        out->c_k = r.c_k;
        out->q_k = r.q_k;
        out->c_inf = r.c_inf;
        out->q_inf = r.q_inf;
        out->error_bound = r.error_bound;
        out->explicit_ts_threshold = r.explicit_ts_threshold;
    });
}

ms_status ms_spectral_matrices(const ms_graph* g, double k, double* out_b_k, double* out_w_k,
                               double* out_l_k_eigs) {
    if (ms_status s = require(g != nullptr, "ms_spectral_matrices: graph is NULL")) return s;
    return guarded([&] {
        const SpectralReport r = contraction_constants(g->graph, k);
        if (out_b_k)
            std::memcpy(out_b_k, r.b_k.data().data(), r.b_k.data().size() * sizeof(double));
        if (out_w_k) std::memcpy(out_w_k, r.w_k.data(), r.w_k.size() * sizeof(double));
        if (out_l_k_eigs)
            std::memcpy(out_l_k_eigs, r.l_k_eigs.data(), r.l_k_eigs.size() * sizeof(double));
    });
}

ms_status ms_verify_decay_bound(const ms_graph* g, double k, int32_t n_max,
                                double* out_max_ratio) {
    if (ms_status s = require(g != nullptr, "ms_verify_decay_bound: graph is NULL")) return s;
    return guarded([&] {
        const DecayBoundReport r = verify_decay_bound(g->graph, k, n_max);
        if (out_max_ratio) *out_max_ratio = r.max_ratio;
    });
}

ms_status ms_min_gain_for_epsilon(const ms_graph* g, double epsilon, double* out_k) {
    if (ms_status s = require(g && out_k, "ms_min_gain_for_epsilon: NULL argument")) return s;
    return guarded([&] {
        const auto k = min_gain_for_epsilon(g->graph, epsilon);
        if (!k)
            fail(ErrorCode::GainNotFound,
                 "no gain reaches the requested tolerance (the error bound plateaus above it)");
        *out_k = *k;
    });
}

/* ---------------------------------------------------------------- metrics */

ms_status ms_compute_metrics(const ms_trajectory* t, const ms_graph* g, const double* obs,
                             double k, double tail_fraction, ms_metrics* out) {
    if (ms_status s = require(t && g && obs && out, "ms_compute_metrics: NULL argument")) return s;
    return guarded([&] {
        const RunMetrics m = compute_metrics(t->traj, g->graph, make_obs(g, obs), k, tail_fraction);
        out->final_dist_max = m.max_final_dist();
        out->sup_tail_dist_max = m.max_sup_tail_dist();
        out->chattering_index_max = m.max_chattering_index();
        out->steady_state_amplitude_max = m.max_amplitude();
        out->disagreement_norm = m.disagreement_norm;
        out->sup_tail_avg_dist = m.sup_tail_avg_dist;
        out->band = m.band;
        out->iters_to_band = m.iters_to_band;
        out->tail_start = m.tail_start;
        out->tail_len = m.tail_len;
    });
}

ms_status ms_compute_metrics_per_agent(const ms_trajectory* t, const ms_graph* g,
                                       const double* obs, double k, double tail_fraction,
                                       double* out_final_dist, double* out_sup_tail_dist,
                                       double* out_chattering, double* out_amplitude) {
    if (ms_status s = require(t && g && obs, "ms_compute_metrics_per_agent: NULL argument"))
        return s;
    return guarded([&] {
        const RunMetrics m = compute_metrics(t->traj, g->graph, make_obs(g, obs), k, tail_fraction);
        const size_t n = m.final_dist.size();
        if (out_final_dist) std::memcpy(out_final_dist, m.final_dist.data(), n * sizeof(double));
        if (out_sup_tail_dist)
            std::memcpy(out_sup_tail_dist, m.sup_tail_dist.data(), n * sizeof(double));
        if (out_chattering)
            std::memcpy(out_chattering, m.chattering_index.data(), n * sizeof(double));
        if (out_amplitude)
            std::memcpy(out_amplitude, m.steady_state_amplitude.data(), n * sizeof(double));
    });
}

ms_status ms_theorem1_check(const ms_trajectory* t, const ms_graph* g, const double* obs, double k,
                            double* out_allowed, double* out_measured, int* out_pass) {
    if (ms_status s = require(t && g && obs, "ms_theorem1_check: NULL argument")) return s;
    return guarded([&] {
        const Theorem1Report r = theorem1_check(t->traj, g->graph, make_obs(g, obs), k);
        if (out_allowed) *out_allowed = r.allowed;
        if (out_measured) *out_measured = r.measured;
        if (out_pass) *out_pass = r.pass ? 1 : 0;
    });
}

/* -------------------------------------------------------------- scenarios */

ms_status ms_scenario_load_file(const char* path, ms_scenario** out) {
    if (ms_status s = require(path && out, "ms_scenario_load_file: NULL argument")) return s;
    *out = nullptr;
    return guarded([&] { *out = new ms_scenario{load_scenario_file(path)}; });
}

ms_status ms_scenario_load_string(const char* text, ms_scenario** out) {
    if (ms_status s = require(text && out, "ms_scenario_load_string: NULL argument")) return s;
    *out = nullptr;
    return guarded([&] { *out = new ms_scenario{parse_scenario(text)}; });
}

ms_status ms_scenario_load_bundled(const char* name, ms_scenario** out) {
    if (ms_status s = require(name && out, "ms_scenario_load_bundled: NULL argument")) return s;
    *out = nullptr;
    return guarded([&] {
        const auto text = bundled_scenario_text(name);
        if (!text)
            fail(ErrorCode::ValidationError,
                 "unknown bundled scenario '" + std::string(name) + "'");
        *out = new ms_scenario{parse_scenario(*text, name)};
    });
}

ms_status ms_scenario_resolve(const char* ref, ms_scenario** out) {
    if (ms_status s = require(ref && out, "ms_scenario_resolve: NULL argument")) return s;
    *out = nullptr;
    return guarded([&] { *out = new ms_scenario{resolve_scenario(ref)}; });
}

void ms_scenario_destroy(ms_scenario* s) { delete s; }

const char* ms_bundled_scenario_names(void) { return "fig1,fig2,fig2-unstable,fig3"; }

const char* ms_scenario_name(const ms_scenario* s) { return s ? s->scenario.name.c_str() : ""; }

ms_status ms_scenario_set_output_dir(ms_scenario* s, const char* dir) {
    if (ms_status st = require(s && dir, "ms_scenario_set_output_dir: NULL argument")) return st;
    s->scenario.output_dir = dir;
    return MS_OK;
}

ms_status ms_scenario_set_seed(ms_scenario* s, uint64_t seed) {
    if (ms_status st = require(s != nullptr, "ms_scenario_set_seed: scenario is NULL")) return st;
    s->scenario.seed = seed;
    return MS_OK;
}

ms_status ms_scenario_set_max_iters(ms_scenario* s, int64_t max_iters) {
    if (ms_status st = require(s != nullptr, "ms_scenario_set_max_iters: scenario is NULL"))
        return st;
    if (max_iters < 1) return set_error(MS_ERR_VALIDATION, "max_iters must be >= 1");
    s->scenario.max_iters = max_iters;
    return MS_OK;
}

ms_status ms_scenario_set_tolerance(ms_scenario* s, double tol) {
    if (ms_status st = require(s != nullptr, "ms_scenario_set_tolerance: scenario is NULL"))
        return st;
    if (!(tol >= 0.0)) return set_error(MS_ERR_VALIDATION, "convergence_tol must be >= 0");
    s->scenario.convergence_tol = tol;
    return MS_OK;
}

ms_status ms_scenario_set_method(ms_scenario* s, const char* method) {
    if (ms_status st = require(s && method, "ms_scenario_set_method: NULL argument")) return st;
    const std::string m = method;
    if (m == "imex")
        s->scenario.method = Method::Imex;
    else if (m == "explicit")
        s->scenario.method = Method::Explicit;
    else if (m == "both")
        s->scenario.method = Method::Both;
    else
        return set_error(MS_ERR_VALIDATION, "method must be imex, explicit or both");
    if (s->scenario.method != Method::Imex && !s->scenario.t_s && s->scenario.sweep_ts.empty())
        return set_error(MS_ERR_VALIDATION, "explicit method needs a time step (solver.t_s)");
    return MS_OK;
}

ms_status ms_scenario_set_time_step(ms_scenario* s, double t_s) {
    if (ms_status st = require(s != nullptr, "ms_scenario_set_time_step: scenario is NULL"))
        return st;
    if (!(t_s > 0.0)) return set_error(MS_ERR_VALIDATION, "t_s must be > 0");
    s->scenario.t_s = t_s;
    return MS_OK;
}

ms_status ms_scenario_set_sweep_k(ms_scenario* s, const double* ks, int32_t n) {
    if (ms_status st = require(s && ks && n > 0, "ms_scenario_set_sweep_k: bad arguments"))
        return st;
    for (int32_t i = 0; i < n; ++i)
        if (!(ks[i] > 0.0)) return set_error(MS_ERR_VALIDATION, "sweep k entries must be > 0");
    s->scenario.sweep_k.assign(ks, ks + n);
    return MS_OK;
}

ms_status ms_scenario_set_sweep_ts(ms_scenario* s, const double* ts, int32_t n) {
    if (ms_status st = require(s && ts && n > 0, "ms_scenario_set_sweep_ts: bad arguments"))
        return st;
    for (int32_t i = 0; i < n; ++i)
        if (!(ts[i] > 0.0)) return set_error(MS_ERR_VALIDATION, "sweep t_s entries must be > 0");
    s->scenario.sweep_ts.assign(ts, ts + n);
    return MS_OK;
}

ms_status ms_scenario_set_chart(ms_scenario* s, int enabled) {
    if (ms_status st = require(s != nullptr, "ms_scenario_set_chart: scenario is NULL")) return st;
    s->scenario.chart = enabled != 0;
    return MS_OK;
}

ms_status ms_scenario_run(const ms_scenario* s, ms_run_report** out) {
    if (ms_status st = require(s && out, "ms_scenario_run: NULL argument")) return st;
    *out = nullptr;
    return guarded([&] { *out = new ms_run_report{run_scenario(s->scenario)}; });
}

void ms_run_report_destroy(ms_run_report* r) { delete r; }

const char* ms_run_report_summary(const ms_run_report* r) {
    return r ? r->report.summary.c_str() : "";
}

int32_t ms_run_report_n_runs(const ms_run_report* r) {
    return r ? static_cast<int32_t>(r->report.outcomes.size()) : 0;
}

int ms_run_report_any_diverged(const ms_run_report* r) {
    return r && r->report.any_diverged ? 1 : 0;
}

int ms_run_report_theorem1_all_pass(const ms_run_report* r) {
    return r && r->report.theorem1_all_pass ? 1 : 0;
}

const char* ms_run_report_metrics_csv_path(const ms_run_report* r) {
    return r ? r->report.metrics_csv.c_str() : "";
}

} // extern "C"
