#include "mediansim/imex.hpp"

#include <cmath>
#include <string>

#include "mediansim/error.hpp"
#include "mediansim/spectral.hpp"

namespace mediansim {

SMapResult s_map(double u, double o_i, double k, double d_i) {
    if (!std::isfinite(u) || !std::isfinite(o_i))
        fail(ErrorCode::NonFiniteInput, "s_map: non-finite input");
    if (!std::isfinite(k) || k <= 0.0) fail(ErrorCode::InvalidArgument, "s_map: gain must be > 0");
    if (!std::isfinite(d_i) || d_i <= 0.0)
        fail(ErrorCode::InvalidArgument, "s_map: degree must be > 0");

    const double scale = 1.0 + k * d_i;
    const double center = scale * o_i;
    if (u < center - 1.0) return {(u + 1.0) / scale, +1};
    if (u > center + 1.0) return {(u - 1.0) / scale, -1};
    return {u / scale, 0};
}

std::pair<Vec, std::vector<std::int8_t>> imex_step(const Graph& g, const ObservationSet& obs,
                                                   double k, std::span<const double> x) {
    const int n = g.n_agents();
    if (obs.size() != n || static_cast<int>(x.size()) != n)
        fail(ErrorCode::DimensionMismatch, "imex_step: graph/observations/state sizes disagree");

    Vec next(n);
    std::vector<std::int8_t> drives(n);
    for (int i = 0; i < n; ++i) {
        double coupled = 0.0;
        for (int j : g.neighbor_lists()[i]) coupled += g.weight(i, j) * x[j];
        const double u = x[i] + k * coupled;
        const SMapResult r = s_map(u, obs.values()[i], k, g.degrees()[i]);
        next[i] = r.x_next;
        drives[i] = static_cast<std::int8_t>(r.drive);
    }
    return {std::move(next), std::move(drives)};
}

Trajectory run_imex(const Graph& g, const ObservationSet& obs, const ImexConfig& cfg, Vec x0) {
    if (cfg.max_iters < 1) fail(ErrorCode::InvalidArgument, "run_imex: max_iters must be >= 1");
    if (!(cfg.convergence_tol >= 0.0))
        fail(ErrorCode::InvalidArgument, "run_imex: convergence_tol must be >= 0");
    if (static_cast<int>(x0.size()) != g.n_agents())
        fail(ErrorCode::DimensionMismatch, "run_imex: initial state size mismatch");
    for (double v : x0)
        if (!std::isfinite(v)) fail(ErrorCode::NonFiniteInput, "run_imex: non-finite initial state");

    const Vec w = left_eigenvector(g, cfg.k);

    Trajectory traj;
    traj.states.reserve(16);
    traj.states.push_back(std::move(x0));
    traj.averaged.push_back(dot(w, traj.states.back()));

    for (std::int64_t n = 0; n < cfg.max_iters; ++n) {
        const Vec& cur = traj.states.back();
        auto [next, drives] = imex_step(g, obs, cfg.k, cur);

        double delta = 0.0;
        for (size_t i = 0; i < next.size(); ++i)
            delta = std::max(delta, std::abs(next[i] - cur[i]));

        traj.drives.push_back(std::move(drives));
        traj.states.push_back(std::move(next));
        traj.averaged.push_back(dot(w, traj.states.back()));

        if (delta <= cfg.convergence_tol) {
            traj.converged_at = n;
            break;
        }
    }
    return traj;
}

} // namespace mediansim
