#include "mediansim/explicit_method.hpp"

#include <cmath>

#include "mediansim/error.hpp"
#include "mediansim/spectral.hpp"

namespace mediansim {

namespace {

double sgn(double s) {
    if (s > 0.0) return 1.0;
    if (s < 0.0) return -1.0;
    return 0.0;
}

} // namespace

Vec explicit_step(const Graph& g, const ObservationSet& obs, double k, double t_s,
                  std::span<const double> x) {
    const int n = g.n_agents();
    if (obs.size() != n || static_cast<int>(x.size()) != n)
        fail(ErrorCode::DimensionMismatch, "explicit_step: graph/observations/state sizes disagree");

    Vec next(n);
    for (int i = 0; i < n; ++i) {
        double diffusion = 0.0;
        for (int j : g.neighbor_lists()[i]) diffusion += g.weight(i, j) * (x[j] - x[i]);
        next[i] = x[i] + t_s * sgn(obs.values()[i] - x[i]) + k * t_s * diffusion;
    }
    return next;
}

Trajectory run_explicit(const Graph& g, const ObservationSet& obs, const ExplicitConfig& cfg,
                        Vec x0) {
    if (cfg.max_iters < 1) fail(ErrorCode::InvalidArgument, "run_explicit: max_iters must be >= 1");
    if (!(cfg.t_s > 0.0)) fail(ErrorCode::InvalidArgument, "run_explicit: t_s must be > 0");
    if (!(cfg.convergence_tol >= 0.0))
        fail(ErrorCode::InvalidArgument, "run_explicit: convergence_tol must be >= 0");
    if (static_cast<int>(x0.size()) != g.n_agents())
        fail(ErrorCode::DimensionMismatch, "run_explicit: initial state size mismatch");
    for (double v : x0)
        if (!std::isfinite(v))
            fail(ErrorCode::NonFiniteInput, "run_explicit: non-finite initial state");

    const double escape = cfg.divergence_threshold > 0.0
                              ? cfg.divergence_threshold
                              : 1e6 * (1.0 + obs.max_abs());
    const Vec w = left_eigenvector(g, cfg.k);

    Trajectory traj;
    traj.states.push_back(std::move(x0));
    traj.averaged.push_back(dot(w, traj.states.back()));

    for (std::int64_t n = 0; n < cfg.max_iters; ++n) {
        const Vec& cur = traj.states.back();
        Vec next = explicit_step(g, obs, cfg.k, cfg.t_s, cur);

        double delta = 0.0;
        double norm = 0.0;
        for (size_t i = 0; i < next.size(); ++i) {
            delta = std::max(delta, std::abs(next[i] - cur[i]));
            norm = std::max(norm, std::abs(next[i]));
        }

        traj.states.push_back(std::move(next));
        traj.averaged.push_back(dot(w, traj.states.back()));

        if (norm > escape || !std::isfinite(norm)) {
            traj.diverged = true;
            break;
        }
        if (delta <= cfg.convergence_tol) {
            traj.converged_at = n;
            break;
        }
    }
    return traj;
}

} // namespace mediansim
