#pragma once

// Forward-Euler discretization of the same network, the baseline the IMEX
// scheme is compared against. Needs a small enough time step to stay stable
// and chatters around the target because of the discontinuous signum term.

#include <cstdint>
#include <span>

#include "mediansim/graph.hpp"
#include "mediansim/imex.hpp"
#include "mediansim/median.hpp"

namespace mediansim {

struct ExplicitConfig {
    double k = 10.0;
    double t_s = 0.05;               // time step
    std::int64_t max_iters = 10000;
    double convergence_tol = 1e-12;
    double divergence_threshold = 0; // on ||X||_inf; <= 0 selects 1e6 * (1 + max|o_i|)
};

/// x_i' = x_i + t_s * sgn(o_i - x_i) + k * t_s * sum_j a_ij (x_j - x_i),
/// all read from the current snapshot. t_s = 0 gives the identity map.
Vec explicit_step(const Graph& g, const ObservationSet& obs, double k, double t_s,
                  std::span<const double> x);

/// Iterates explicit_step; sets diverged once ||X||_inf escapes the
/// divergence threshold. The trajectory records no drives (the explicit
/// scheme has none); averaged uses the same w_k weighting as run_imex.
Trajectory run_explicit(const Graph& g, const ObservationSet& obs, const ExplicitConfig& cfg,
                        Vec x0);

} // namespace mediansim
