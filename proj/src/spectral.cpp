#include "mediansim/spectral.hpp"

#include <cmath>
#include <string>

#include "mediansim/error.hpp"

namespace mediansim {

namespace {

void require_gain(double k) {
    if (!std::isfinite(k) || k <= 0.0)
        fail(ErrorCode::InvalidArgument, "coupling gain must be finite and > 0");
}

Vec dk_diagonal(const Graph& g, double k) {
    Vec d(g.n_agents());
    for (int i = 0; i < g.n_agents(); ++i) d[i] = k / (1.0 + k * g.degrees()[i]);
    return d;
}

/// sqrt(D) L sqrt(D) for a diagonal scaling D given by its diagonal.
Matrix scaled_laplacian(const Graph& g, const Vec& diag) {
    Matrix l = g.laplacian();
    const int n = g.n_agents();
    Vec root(n);
    for (int i = 0; i < n; ++i) root[i] = std::sqrt(diag[i]);
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = root[i] * l(i, j) * root[j];
    return out;
}

double q_from_eigs(const Vec& eigs) {
    // eigs nondecreasing with eigs[0] the structural zero
    const double lo = eigs[1];
    const double hi = eigs.back();
    return std::max(std::abs(1.0 - lo), std::abs(1.0 - hi));
}

} // namespace

Matrix iteration_matrix(const Graph& g, double k) {
    require_gain(k);
    const int n = g.n_agents();
    const Vec dk = dk_diagonal(g, k);
    Matrix l = g.laplacian();
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = (i == j ? 1.0 : 0.0) - dk[i] * l(i, j);
    return b;
}

Vec left_eigenvector(const Graph& g, double k) {
    require_gain(k);
    const int n = g.n_agents();
    Vec w(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = 1.0 + k * g.degrees()[i];
        total += w[i];
    }
    for (double& v : w) v /= total;
    return w;
}

double steady_state_error_bound(const Graph& g, double k) {
    const SpectralReport r = contraction_constants(g, k);
    return r.error_bound;
}

SpectralReport contraction_constants(const Graph& g, double k) {
    require_gain(k);
    SpectralReport r;
    r.n_agents = g.n_agents();
    r.k = k;
    r.b_k = iteration_matrix(g, k);
    r.w_k = left_eigenvector(g, k);
    r.d_k_diag = dk_diagonal(g, k);

    r.l_k_eigs = jacobi_eigenvalues(scaled_laplacian(g, r.d_k_diag));
    r.c_k = std::sqrt((1.0 + k * g.max_degree()) / (1.0 + k * g.min_degree()));
    r.q_k = q_from_eigs(r.l_k_eigs);

    // k -> infinity limits; D_k tends to diag(1/d_i).
    Vec dinf(g.n_agents());
    for (int i = 0; i < g.n_agents(); ++i) dinf[i] = 1.0 / g.degrees()[i];
    const Vec inf_eigs = jacobi_eigenvalues(scaled_laplacian(g, dinf));
    r.c_inf = std::sqrt(g.max_degree() / g.min_degree());
    r.q_inf = q_from_eigs(inf_eigs);

    r.error_bound = r.c_k / (1.0 - r.q_k) * std::sqrt(static_cast<double>(r.n_agents)) /
                    (1.0 + k * g.min_degree());

    const Vec l_eigs = jacobi_eigenvalues(g.laplacian());
    r.explicit_ts_threshold = 2.0 / (k * l_eigs.back());
    return r;
}

DecayBoundReport verify_decay_bound(const Graph& g, double k, int n_max) {
    if (n_max < 1) fail(ErrorCode::InvalidArgument, "verify_decay_bound: n_max must be >= 1");
    const SpectralReport r = contraction_constants(g, k);
    const int n = g.n_agents();

    Vec ones(n, 1.0);
    const Matrix consensus_proj = outer(ones, r.w_k);
    // B_k^m - 1 w_k^T equals (B_k - 1 w_k^T)^m, and powering the deviation
    // matrix keeps the small norms at large m accurate.
    const Matrix deviation = r.b_k - consensus_proj;

    DecayBoundReport report;
    report.norms.reserve(n_max + 1);
    report.bounds.reserve(n_max + 1);

    Matrix power = Matrix::identity(n) - consensus_proj;
    double qpow = 1.0;
    for (int m = 0; m <= n_max; ++m) {
        const double norm = spectral_norm(power);
        const double bound = r.c_k * qpow;
        report.norms.push_back(norm);
        report.bounds.push_back(bound);
        const double ratio = norm / bound;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.arg_max = m;
        }
        if (m < n_max) {
            power = power * deviation;
            qpow *= r.q_k;
        }
    }

    if (report.max_ratio > 1.0 + 1e-9)
        fail(ErrorCode::BoundViolated,
             "decay bound violated at n = " + std::to_string(report.arg_max) +
                 ", ratio = " + std::to_string(report.max_ratio));
    return report;
}

std::optional<double> min_gain_for_epsilon(const Graph& g, double epsilon, double k_cap) {
    if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be > 0");

    const auto meets = [&](double k) { return 3.0 * steady_state_error_bound(g, k) <= epsilon; };

    if (!meets(k_cap)) return std::nullopt;

    double lo = 0.0;
    double hi = 1.0;
    while (!meets(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > k_cap) {
            hi = k_cap;
            break;
        }
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-9 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (meets(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace mediansim
