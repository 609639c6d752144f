#include "mediansim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mediansim/error.hpp"

namespace mediansim {

namespace {

bool connected(const Matrix& w, int n) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u) {
            if (!seen[u] && w(v, u) > 0.0) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == n;
}

} // namespace

Graph Graph::from_edges(int n_agents, const std::vector<Edge>& edges) {
    if (n_agents < 1) fail(ErrorCode::InvalidArgument, "graph needs at least one agent");

    Matrix w(n_agents, n_agents);
    for (const Edge& e : edges) {
        if (e.i < 0 || e.i >= n_agents || e.j < 0 || e.j >= n_agents)
            fail(ErrorCode::InvalidArgument,
                 "edge endpoint out of range: (" + std::to_string(e.i + 1) + ", " +
                     std::to_string(e.j + 1) + ")");
        if (e.i == e.j)
            fail(ErrorCode::SelfLoop, "self loop on agent " + std::to_string(e.i + 1));
        if (!std::isfinite(e.weight) || e.weight <= 0.0)
            fail(ErrorCode::NonPositiveWeight, "edge (" + std::to_string(e.i + 1) + ", " +
                                                   std::to_string(e.j + 1) +
                                                   ") has non-positive weight");
        if (w(e.i, e.j) != 0.0)
            fail(ErrorCode::DuplicateEdge, "duplicate edge (" + std::to_string(e.i + 1) + ", " +
                                               std::to_string(e.j + 1) + ")");
        w(e.i, e.j) = e.weight;
        w(e.j, e.i) = e.weight;
    }

    // A single agent has degree 0, which the downstream analysis cannot use.
    if (n_agents < 2 || !connected(w, n_agents))
        fail(ErrorCode::DisconnectedGraph, "graph is not connected");

    Graph g;
    g.n_ = n_agents;
    g.weights_ = std::move(w);
    g.degrees_.assign(n_agents, 0.0);
    g.neighbors_.assign(n_agents, {});
    for (int i = 0; i < n_agents; ++i) {
        for (int j = 0; j < n_agents; ++j) {
            if (g.weights_(i, j) > 0.0) {
                g.degrees_[i] += g.weights_(i, j);
                g.neighbors_[i].push_back(j);
            }
        }
    }
    return g;
}

Graph Graph::complete(int n_agents, double weight) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(n_agents) * (n_agents - 1) / 2);
    for (int i = 0; i < n_agents; ++i)
        for (int j = i + 1; j < n_agents; ++j) edges.push_back({i, j, weight});
    return from_edges(n_agents, edges);
}

double Graph::min_degree() const { return *std::min_element(degrees_.begin(), degrees_.end()); }

double Graph::max_degree() const { return *std::max_element(degrees_.begin(), degrees_.end()); }

Matrix Graph::laplacian() const {
    Matrix l(n_, n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) l(i, j) = -weights_(i, j);
        l(i, i) = degrees_[i];
    }
    return l;
}

} // namespace mediansim
