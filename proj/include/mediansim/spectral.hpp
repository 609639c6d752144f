#pragma once

// Spectral analysis of the linear part of the IMEX network: the
// row-stochastic iteration matrix B_k = I - D_k L, its invariant left
// eigenvector, and the geometric-decay constants (C_k, q_k) obtained from
// the symmetrized scaled Laplacian L_k = sqrt(D_k) L sqrt(D_k).

#include <optional>

#include "mediansim/graph.hpp"
#include "mediansim/linalg.hpp"

namespace mediansim {

struct SpectralReport {
    int n_agents = 0;
    double k = 0.0;

    Matrix b_k;        // I - D_k L, row-stochastic
    Vec w_k;           // left eigenvector of B_k for eigenvalue 1, sums to 1
    Vec d_k_diag;      // k / (1 + k d_i)
    Vec l_k_eigs;      // eigenvalues of L_k, nondecreasing, l_k_eigs[0] ~ 0

    double c_k = 0.0;  // sqrt((1 + k max d) / (1 + k min d)) >= 1
    double q_k = 0.0;  // max(|1 - lambda_2|, |1 - lambda_N|) in (0, 1)
    double c_inf = 0.0;
    double q_inf = 0.0;

    double error_bound = 0.0;           // C_k/(1-q_k) * sqrt(N)/(1 + k min d)
    double explicit_ts_threshold = 0.0; // 2 / (k lambda_max(L))
};

/// B_k = I - D_k L with D_k = diag(k / (1 + k d_i)).
Matrix iteration_matrix(const Graph& g, double k);

/// w_k,i = (1 + k d_i) / sum_j (1 + k d_j).
Vec left_eigenvector(const Graph& g, double k);

/// Full spectral report for (g, k), including the contraction constants and
/// their k -> infinity limits.
SpectralReport contraction_constants(const Graph& g, double k);

/// Asymptotic disagreement bound used by the convergence guarantee.
double steady_state_error_bound(const Graph& g, double k);

struct DecayBoundReport {
    std::vector<double> norms;  // ||B_k^n - 1 w_k^T||_2 for n = 0..n_max
    std::vector<double> bounds; // C_k q_k^n
    double max_ratio = 0.0;
    int arg_max = 0;
};

/// Checks ||B_k^n - 1 w_k^T|| <= C_k q_k^n for n = 0..n_max. The powers are
/// taken on the deviation matrix B_k - 1 w_k^T directly so the tiny norms at
/// large n are not swamped by cancellation. Throws BoundViolated if any
/// ratio exceeds 1 + 1e-9.
DecayBoundReport verify_decay_bound(const Graph& g, double k, int n_max);

/// Smallest gain k with 3 * steady_state_error_bound(g, k) <= epsilon, found
/// by doubling plus bisection. Returns nullopt when even k_cap cannot meet
/// the target (the bound plateaus at a positive constant on bipartite
/// graphs, where the top eigenvalue of D^-1 L is exactly 2).
std::optional<double> min_gain_for_epsilon(const Graph& g, double epsilon, double k_cap = 1e9);

} // namespace mediansim
