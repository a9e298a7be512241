#pragma once

#include <cmath>
#include <vector>

#include "sslforge/errors.hpp"
#include "sslforge/graph.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Class-score matrix over all graph nodes plus convergence bookkeeping.
struct LabelDistribution {
    Matrix F;  // n x K raw scores at termination (pre-normalization)
    std::size_t iterations = 0;
    bool converged = false;

    // Row-normalized scores; all-zero rows become uniform.
    Matrix normalized() const {
        Matrix out = F;
        for (std::size_t i = 0; i < F.rows(); ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < F.cols(); ++c) s += F(i, c);
            for (std::size_t c = 0; c < F.cols(); ++c)
                out(i, c) = s > 0.0 ? F(i, c) / s : 1.0 / static_cast<double>(F.cols());
        }
        return out;
    }
};

namespace detail {

inline std::size_t infer_class_count(const std::vector<int>& y) {
    int k = -1;
    bool any = false;
    for (int v : y) {
        if (v < 0) continue;
        any = true;
        k = std::max(k, v);
    }
    if (!any) throw DataError("graph labels: no labeled node");
    return static_cast<std::size_t>(k) + 1;
}

}  // namespace detail

// Hard-clamp label propagation: F <- row_normalized(W) * F with labeled
// rows re-clamped to one-hot after every sweep. y[i] = -1 marks an
// unlabeled node. Stops when max |dF| < tol.
inline LabelDistribution label_propagation_fit(const AffinityGraph& g,
                                               const std::vector<int>& y,
                                               double tol = 1e-6,
                                               std::size_t max_iter = 1000) {
    if (y.size() != g.n) throw DataError("label_propagation: label length != node count");
    const std::size_t n = g.n;
    const std::size_t K = detail::infer_class_count(y);

    std::vector<double> inv_degree(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double deg = g.degree(i);
        inv_degree[i] = deg > 0.0 ? 1.0 / deg : 0.0;
    }

    LabelDistribution out;
    out.F = Matrix(n, K);
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] >= 0)
            out.F(i, static_cast<std::size_t>(y[i])) = 1.0;
        else
            for (std::size_t c = 0; c < K; ++c) out.F(i, c) = 1.0 / static_cast<double>(K);
    }

    Matrix next(n, K);
    for (std::size_t it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < K; ++c) next(i, c) = 0.0;
            for (const auto& [j, w] : g.adj[i])
                for (std::size_t c = 0; c < K; ++c) next(i, c) += w * out.F(j, c);
            for (std::size_t c = 0; c < K; ++c) next(i, c) *= inv_degree[i];
        }
        // hard clamp: labeled rows stay exact one-hot
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] < 0) continue;
            for (std::size_t c = 0; c < K; ++c) next(i, c) = 0.0;
            next(i, static_cast<std::size_t>(y[i])) = 1.0;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n * K; ++i)
            delta = std::max(delta, std::abs(next.data()[i] - out.F.data()[i]));
        std::swap(out.F, next);
        out.iterations = it + 1;
        if (delta < tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

// Symmetric-normalized adjacency S = D^(-1/2) W D^(-1/2); zero-degree
// nodes contribute zero rows/columns.
inline Matrix normalized_adjacency(const AffinityGraph& g) {
    Matrix s(g.n, g.n);
    std::vector<double> dinv(g.n, 0.0);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double deg = g.degree(i);
        dinv[i] = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
    }
    for (std::size_t i = 0; i < g.n; ++i)
        for (const auto& [j, w] : g.adj[i]) s(i, j) = dinv[i] * w * dinv[j];
    return s;
}

// Label spreading: F <- alpha * S * F + (1 - alpha) * Y from F = Y,
// converging to (1 - alpha) (I - alpha S)^(-1) Y.
inline LabelDistribution label_spreading_fit(const AffinityGraph& g,
                                             const std::vector<int>& y, double alpha = 0.99,
                                             double tol = 1e-6,
                                             std::size_t max_iter = 1000) {
    if (y.size() != g.n) throw DataError("label_spreading: label length != node count");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("label_spreading: alpha must be in (0, 1)");
    const std::size_t n = g.n;
    const std::size_t K = detail::infer_class_count(y);

    std::vector<double> dinv(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double deg = g.degree(i);
        dinv[i] = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
    }

    Matrix Y(n, K);
    for (std::size_t i = 0; i < n; ++i)
        if (y[i] >= 0) Y(i, static_cast<std::size_t>(y[i])) = 1.0;

    LabelDistribution out;
    out.F = Y;
    Matrix next(n, K);
    for (std::size_t it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < K; ++c) next(i, c) = (1.0 - alpha) * Y(i, c);
            for (const auto& [j, w] : g.adj[i]) {
                const double sij = dinv[i] * w * dinv[j];
                for (std::size_t c = 0; c < K; ++c) next(i, c) += alpha * sij * out.F(j, c);
            }
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n * K; ++i)
            delta = std::max(delta, std::abs(next.data()[i] - out.F.data()[i]));
        std::swap(out.F, next);
        out.iterations = it + 1;
        if (delta < tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace sslforge
