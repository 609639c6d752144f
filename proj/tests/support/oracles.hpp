#pragma once

// Independent oracles for the test suites. Everything here is deliberately
// implemented by a different route than the library: brute-force closures,
// closed-form roots, grid search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mediansim/graph.hpp"
#include "mediansim/linalg.hpp"

namespace oracles {

/// Eigenvalues of a symmetric 2x2 [[a, b], [b, c]], ascending.
inline std::vector<double> eigs2(double a, double b, double c) {
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return {mean - disc, mean + disc};
}

/// Eigenvalues of a symmetric 3x3 via the trigonometric closed form,
/// ascending.
inline std::vector<double> eigs3(const mediansim::Matrix& m) {
    const double q = (m(0, 0) + m(1, 1) + m(2, 2)) / 3.0;
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double v = m(i, j) - (i == j ? q : 0.0);
            p2 += v * v;
        }
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-15) return {q, q, q};

    // det((M - qI) / p) via cofactors
    mediansim::Matrix b(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = (m(i, j) - (i == j ? q : 0.0)) / p;
    const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::vector<double> out{e1, e2, e3};
    std::sort(out.begin(), out.end());
    return out;
}

/// Reachability closure (Floyd-Warshall style), independent of the BFS the
/// library uses.
inline bool connected_by_closure(const mediansim::Matrix& weights, int n) {
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        reach[i][i] = 1;
        for (int j = 0; j < n; ++j)
            if (weights(i, j) > 0.0) reach[i][j] = 1;
    }
    for (int via = 0; via < n; ++via)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][via] && reach[via][j]) reach[i][j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

/// Grid minimizers of sum_i |o_i - x| over [min o - 1, max o + 1].
struct GridMinimum {
    double min_value = 0.0;
    std::vector<double> argmins; // grid points attaining min within 1e-9
    double step = 0.0;
};

inline GridMinimum grid_search_median(const std::vector<double>& obs, int grid_points = 20001) {
    const auto [lo_it, hi_it] = std::minmax_element(obs.begin(), obs.end());
    const double lo = *lo_it - 1.0, hi = *hi_it + 1.0;
    GridMinimum out;
    out.step = (hi - lo) / (grid_points - 1);
    std::vector<double> values(grid_points);
    out.min_value = std::numeric_limits<double>::infinity();
    for (int g = 0; g < grid_points; ++g) {
        const double x = lo + g * out.step;
        double acc = 0.0;
        for (double o : obs) acc += std::abs(o - x);
        values[g] = acc;
        out.min_value = std::min(out.min_value, acc);
    }
    for (int g = 0; g < grid_points; ++g)
        if (values[g] <= out.min_value + 1e-9) out.argmins.push_back(lo + g * out.step);
    return out;
}

/// Deterministic uniform double in [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) { // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random connected graph: random attachment tree plus a few extra edges.
/// Bipartite structures are allowed.
inline mediansim::Graph random_connected_graph(std::mt19937_64& rng, int n) {
    std::vector<mediansim::Edge> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({uniform_int(rng, 0, v - 1), v, uniform(rng, 0.5, 2.0)});
    const int extra = uniform_int(rng, 0, n - 1);
    for (int e = 0; e < extra; ++e) {
        const int i = uniform_int(rng, 0, n - 1);
        const int j = uniform_int(rng, 0, n - 1);
        if (i == j) continue;
        bool present = false;
        for (const auto& ed : edges)
            present = present || (ed.i == i && ed.j == j) || (ed.i == j && ed.j == i);
        if (!present) edges.push_back({i, j, uniform(rng, 0.5, 2.0)});
    }
    return mediansim::Graph::from_edges(n, edges);
}

/// Random connected graph containing at least one triangle, so the top
/// eigenvalue of D^-1 L stays strictly below 2 and the error bound can be
/// driven to zero by raising the gain.
inline mediansim::Graph random_nonbipartite_graph(std::mt19937_64& rng, int n) {
    while (true) {
        std::vector<mediansim::Edge> edges;
        for (int v = 1; v < n; ++v)
            edges.push_back({uniform_int(rng, 0, v - 1), v, uniform(rng, 0.5, 2.0)});
        int tri[3];
        tri[0] = uniform_int(rng, 0, n - 1);
        do tri[1] = uniform_int(rng, 0, n - 1);
        while (tri[1] == tri[0]);
        do tri[2] = uniform_int(rng, 0, n - 1);
        while (tri[2] == tri[0] || tri[2] == tri[1]);
        for (int a = 0; a < 3; ++a) {
            const int i = tri[a], j = tri[(a + 1) % 3];
            bool present = false;
            for (const auto& ed : edges)
                present = present || (ed.i == i && ed.j == j) || (ed.i == j && ed.j == i);
            if (!present) edges.push_back({i, j, uniform(rng, 0.5, 2.0)});
        }
        const int extra = uniform_int(rng, 0, n - 1);
        for (int e = 0; e < extra; ++e) {
            const int i = uniform_int(rng, 0, n - 1);
            const int j = uniform_int(rng, 0, n - 1);
            if (i == j) continue;
            bool present = false;
            for (const auto& ed : edges)
                present = present || (ed.i == i && ed.j == j) || (ed.i == j && ed.j == i);
            if (!present) edges.push_back({i, j, uniform(rng, 0.5, 2.0)});
        }
        return mediansim::Graph::from_edges(n, edges);
    }
}

inline std::vector<double> random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
    std::vector<double> out(n);
    for (double& v : out) v = uniform(rng, lo, hi);
    return out;
}

/// Power sums tr(M^m) for m = 1..count; equal power sums over 1..N pin the
/// eigenvalue multiset of a real-spectrum matrix.
inline std::vector<double> trace_power_sums(const mediansim::Matrix& m, int count) {
    mediansim::Matrix power = m;
    std::vector<double> sums;
    for (int p = 1; p <= count; ++p) {
        double tr = 0.0;
        for (int i = 0; i < m.rows(); ++i) tr += power(i, i);
        sums.push_back(tr);
        if (p < count) power = power * m;
    }
    return sums;
}

} // namespace oracles
