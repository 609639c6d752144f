#pragma once

// Post-processing of recorded trajectories: steady-state error, empirical
// limsup distances, disagreement and a quantitative chattering index
// (sign-flip frequency of the per-step increments over the tail window).

#include <cstdint>

#include "mediansim/graph.hpp"
#include "mediansim/imex.hpp"
#include "mediansim/median.hpp"

namespace mediansim {

struct RunMetrics {
    // per-agent
    Vec final_dist;              // dist to median set of the last state
    Vec sup_tail_dist;           // max dist over the tail window
    Vec chattering_index;        // increment sign flips / window length, in [0, 1]
    Vec steady_state_amplitude;  // max - min over the tail window

    // scalars
    double disagreement_norm = 0.0;   // max ||(I - 1 w_k^T) X[n]||_2 over the tail
    double sup_tail_avg_dist = 0.0;   // max dist of w_k^T X[n] to the median set over the tail
    double band = 0.0;                // band used for iters_to_band
    std::int64_t iters_to_band = -1;  // first n with every agent within band, -1 if never
    std::int64_t tail_start = 0;
    std::int64_t tail_len = 0;

    double max_final_dist() const;
    double max_sup_tail_dist() const;
    double max_chattering_index() const;
    double max_amplitude() const;
};

/// Tail window = the last ceil(tail_fraction * n_states) states; for
/// converged trajectories the window is clamped to start no earlier than
/// converged_at, so it measures the settled plateau instead of the decaying
/// transient. band <= 0 selects 3 * steady_state_error_bound(g, k).
/// Throws TrajectoryTooShort (< 10 states) and InvalidArgument.
RunMetrics compute_metrics(const Trajectory& traj, const Graph& g, const ObservationSet& obs,
                           double k, double tail_fraction = 0.25, double band = 0.0);

struct Theorem1Report {
    double allowed = 0.0;   // 3 * steady_state_error_bound(g, k)
    double measured = 0.0;  // max over agents of sup_tail_dist
    Vec per_agent;
    bool pass = false;
};

/// Empirical check of the convergence guarantee: every agent's tail distance
/// to the median set must stay within 3x the disagreement bound.
Theorem1Report theorem1_check(const Trajectory& traj, const Graph& g, const ObservationSet& obs,
                              double k, double tail_fraction = 0.25);

} // namespace mediansim
