#pragma once

// Median-consensus network discretized with the implicit-explicit method:
// each agent's own signum dynamics and self-coupling are treated implicitly,
// neighbor values explicitly. The per-agent update is the closed-form
// piecewise-affine left inverse of (1 + k d_i) x - sgn(o_i - x).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mediansim/graph.hpp"
#include "mediansim/median.hpp"

namespace mediansim {

struct ImexConfig {
    double k = 10.0;                 // coupling gain
    std::int64_t max_iters = 10000;
    double convergence_tol = 1e-12;  // on ||X[n+1] - X[n]||_inf
};

/// One synchronous round of agent states plus everything recorded along the
/// way. `drives[n]` holds the quantized signum contributions applied in the
/// transition states[n] -> states[n+1]; `averaged[n]` is w_k^T X[n].
struct Trajectory {
    std::vector<Vec> states;
    std::vector<std::vector<std::int8_t>> drives;
    Vec averaged;
    std::optional<std::int64_t> converged_at;
    bool diverged = false;

    std::int64_t n_states() const { return static_cast<std::int64_t>(states.size()); }
    int n_agents() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
};

struct SMapResult {
    double x_next = 0.0;
    int drive = 0; // in {-1, 0, +1}
};

/// Piecewise-affine agent update: u is the explicit part
/// x_i[n] + k sum_j a_ij x_j[n]. Band boundaries belong to the middle
/// branch, which records drive 0. Throws NonFiniteInput / InvalidArgument.
SMapResult s_map(double u, double o_i, double k, double d_i);

/// One synchronous network round from the snapshot x; returns the next state
/// and the drive vector. Throws DimensionMismatch.
std::pair<Vec, std::vector<std::int8_t>> imex_step(const Graph& g, const ObservationSet& obs,
                                                   double k, std::span<const double> x);

/// Iterates imex_step until ||X[n+1] - X[n]||_inf <= convergence_tol or the
/// iteration budget runs out. converged_at is the first n whose successor
/// met the tolerance.
Trajectory run_imex(const Graph& g, const ObservationSet& obs, const ImexConfig& cfg, Vec x0);

} // namespace mediansim
