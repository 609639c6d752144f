#pragma once

// Undirected weighted communication graph. Construction validates symmetry,
// positive weights and connectivity; instances are immutable afterwards and
// safe to share across threads.

#include <vector>

#include "mediansim/linalg.hpp"

namespace mediansim {

struct Edge {
    int i = 0; // 0-based endpoints
    int j = 0;
    double weight = 1.0;
};

class Graph {
public:
    /// Builds a graph from an edge list. Endpoints are 0-based. Throws
    /// SelfLoop, NonPositiveWeight, DuplicateEdge, DisconnectedGraph or
    /// InvalidArgument (out-of-range endpoint, n_agents < 1).
    static Graph from_edges(int n_agents, const std::vector<Edge>& edges);

    /// Complete graph on n_agents nodes with a uniform edge weight.
    static Graph complete(int n_agents, double weight = 1.0);

    int n_agents() const { return n_; }
    double weight(int i, int j) const { return weights_(i, j); }
    const Matrix& adjacency() const { return weights_; }
    const Vec& degrees() const { return degrees_; }
    const std::vector<std::vector<int>>& neighbor_lists() const { return neighbors_; }

    double min_degree() const;
    double max_degree() const;

    /// Laplacian L = D - A.
    Matrix laplacian() const;

private:
    Graph() = default;

    int n_ = 0;
    Matrix weights_;
    Vec degrees_;
    std::vector<std::vector<int>> neighbors_;
};

} // namespace mediansim
