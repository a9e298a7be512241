#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

enum class GraphWeight { rbf, connectivity };

// Sparse symmetric nonnegative affinity graph; no self-loops.
struct AffinityGraph {
    std::size_t n = 0;
    // adjacency rows sorted by neighbour index
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;

    double degree(std::size_t i) const {
        double s = 0.0;
        for (const auto& [j, w] : adj[i]) s += w;
        return s;
    }

    Matrix to_dense() const {
        Matrix w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [j, wij] : adj[i]) w(i, j) = wij;
        return w;
    }

    static AffinityGraph from_dense(const Matrix& w) {
        if (w.rows() != w.cols()) throw DataError("affinity matrix must be square");
        AffinityGraph g;
        g.n = w.rows();
        g.adj.resize(g.n);
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j) {
                if (i == j || w(i, j) == 0.0) continue;
                if (w(i, j) < 0) throw DataError("affinity weights must be nonnegative");
                if (w(i, j) != w(j, i)) throw DataError("affinity matrix must be symmetric");
                g.adj[i].emplace_back(j, w(i, j));
            }
        return g;
    }
};

// Scale-aware default: 1 / (cols * mean per-column variance).
inline double default_rbf_gamma(const Matrix& X) {
    const std::size_t n = X.rows(), d = X.cols();
    if (n == 0 || d == 0) return 1.0;
    double mean_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += X(i, j);
        m /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = X(i, j) - m;
            var += diff * diff;
        }
        mean_var += var / static_cast<double>(n);
    }
    mean_var /= static_cast<double>(d);
    if (mean_var <= 0.0) return 1.0;
    return 1.0 / (static_cast<double>(d) * mean_var);
}

// Directed kNN by Euclidean distance (ties to the lower index), then
// symmetrized by elementwise max so kNN reachability is kept. rbf weight
// exp(-gamma * dist^2); connectivity weight 1. Duplicate points get
// weight exp(0) = 1.
inline AffinityGraph build_knn_graph(const Matrix& X_all, std::size_t k,
                                     GraphWeight mode = GraphWeight::rbf,
                                     double gamma = -1.0) {
    const std::size_t n = X_all.rows();
    if (k < 1 || k >= n) throw ConfigError("build_knn_graph: need 1 <= k < n");
    if (mode == GraphWeight::rbf && gamma <= 0.0) gamma = default_rbf_gamma(X_all);

    std::vector<std::vector<std::pair<std::size_t, double>>> directed(n);
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < n; ++i) {
        order.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            order.emplace_back(squared_distance(X_all.row(i), X_all.row(j)), j);
        }
        std::partial_sort(order.begin(), order.begin() + k, order.end());
        for (std::size_t t = 0; t < k; ++t) {
            const auto [d2, j] = order[t];
            const double w = mode == GraphWeight::rbf ? std::exp(-gamma * d2) : 1.0;
            directed[i].emplace_back(j, w);
        }
    }

    AffinityGraph g;
    g.n = n;
    g.adj.resize(n);
    // max-symmetrization: W[i][j] = max(directed[i][j], directed[j][i])
    std::vector<std::vector<std::pair<std::size_t, double>>> merged(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, w] : directed[i]) {
            merged[i].emplace_back(j, w);
            merged[j].emplace_back(i, w);
        }
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = merged[i];
        std::sort(row.begin(), row.end());
        for (std::size_t t = 0; t < row.size();) {
            std::size_t u = t + 1;
            double w = row[t].second;
            while (u < row.size() && row[u].first == row[t].first) w = std::max(w, row[u++].second);
            g.adj[i].emplace_back(row[t].first, w);
            t = u;
        }
        if (g.adj[i].empty())
            throw AlgorithmError("build_knn_graph: isolated node " + std::to_string(i));
    }
    return g;
}

}  // namespace sslforge
