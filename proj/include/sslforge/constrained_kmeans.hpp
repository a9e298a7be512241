#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

struct PairConstraints {
    std::vector<std::pair<std::size_t, std::size_t>> must_link, cannot_link;
};

struct ClusteringResult {
    std::vector<std::size_t> assignments;
    Matrix centroids;  // k x d
    double objective = 0.0;
    std::size_t iterations = 0;
    std::size_t best_restart = 0;
    std::vector<double> objective_trace;  // objective after each update pass

    std::size_t nearest_centroid(std::span<const double> x) const {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.rows(); ++c) {
            const double d2 = squared_distance(centroids.row(c), x);
            if (d2 < best_d) {
                best_d = d2;
                best = c;
            }
        }
        return best;
    }
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

inline double kmeans_objective(const Matrix& X, const Matrix& centroids,
                               const std::vector<std::size_t>& assign) {
    double obj = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i)
        obj += squared_distance(X.row(i), centroids.row(assign[i]));
    return obj;
}

inline void update_centroids(const Matrix& X, std::size_t k,
                             const std::vector<std::size_t>& assign, Matrix& centroids) {
    const std::size_t dim = X.cols();
    centroids = Matrix(k, dim);
    std::vector<double> count(k, 0.0);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        count[assign[i]] += 1.0;
        for (std::size_t j = 0; j < dim; ++j) centroids(assign[i], j) += X(i, j);
    }
    for (std::size_t c = 0; c < k; ++c)
        if (count[c] > 0)
            for (std::size_t j = 0; j < dim; ++j) centroids(c, j) /= count[c];

    // empty-cluster repair: reseed to the point farthest from its centroid
    std::vector<char> used(X.rows(), 0);
    for (std::size_t c = 0; c < k; ++c) {
        if (count[c] > 0) continue;
        std::size_t far = X.rows();
        double far_d = -1.0;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            if (used[i] || count[assign[i]] == 0) continue;
            const double d2 = squared_distance(X.row(i), centroids.row(assign[i]));
            if (d2 > far_d) {
                far_d = d2;
                far = i;
            }
        }
        if (far == X.rows()) continue;  // nothing left to reseed from
        used[far] = 1;
        for (std::size_t j = 0; j < dim; ++j) centroids(c, j) = X(far, j);
    }
}

}  // namespace detail

// COP-KMeans: hard must-link / cannot-link constraints. Must-link closure
// components are assigned atomically to the feasible centroid with the
// lowest summed cost; an assignment dead end fails the restart. The best
// feasible restart by objective wins (ties to the lower restart index).
inline ClusteringResult constrained_kmeans_fit(const Matrix& X, std::size_t k,
                                               const PairConstraints& constraints,
                                               std::size_t max_iter = 300,
                                               std::size_t restarts = 10,
                                               std::uint64_t seed = 0) {
    const std::size_t n = X.rows();
    if (k < 1 || k > n) throw ConfigError("constrained_kmeans: need 1 <= k <= rows");
    for (const auto& [a, b] : constraints.must_link)
        if (a >= n || b >= n) throw ConfigError("constrained_kmeans: must_link index out of range");
    for (const auto& [a, b] : constraints.cannot_link)
        if (a >= n || b >= n)
            throw ConfigError("constrained_kmeans: cannot_link index out of range");

    detail::UnionFind uf(n);
    for (const auto& [a, b] : constraints.must_link) uf.unite(a, b);
    for (const auto& [a, b] : constraints.cannot_link)
        if (uf.find(a) == uf.find(b))
            throw AlgorithmError("constrained_kmeans: infeasible constraints, pair (" +
                                 std::to_string(a) + ", " + std::to_string(b) +
                                 ") is cannot-linked inside one must-link component");

    // units: must-link components in order of their smallest member
    std::vector<std::vector<std::size_t>> units;
    {
        std::vector<std::size_t> root_to_unit(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = uf.find(i);
            if (root_to_unit[r] == n) {
                root_to_unit[r] = units.size();
                units.emplace_back();
            }
            units[root_to_unit[r]].push_back(i);
        }
    }
    // cannot-link lifted to unit pairs
    std::vector<std::pair<std::size_t, std::size_t>> unit_cl;
    {
        std::vector<std::size_t> unit_of(n);
        for (std::size_t ui = 0; ui < units.size(); ++ui)
            for (std::size_t i : units[ui]) unit_of[i] = ui;
        for (const auto& [a, b] : constraints.cannot_link)
            unit_cl.emplace_back(unit_of[a], unit_of[b]);
    }

    Rng rng(seed);
    ClusteringResult best;
    bool have_best = false;

    for (std::size_t restart = 0; restart < restarts; ++restart) {
        const auto init = sample_without_replacement(rng, n, k);
        Matrix centroids = X.take_rows(init);
        std::vector<std::size_t> assign(n, k);
        std::vector<std::size_t> unit_assign(units.size(), k);
        std::vector<double> trace;
        bool feasible = true;
        std::size_t iter = 0;

        for (; iter < max_iter && feasible; ++iter) {
            std::vector<std::size_t> next_unit(units.size(), k);
            for (std::size_t ui = 0; ui < units.size() && feasible; ++ui) {
                double best_cost = std::numeric_limits<double>::infinity();
                std::size_t best_c = k;
                for (std::size_t c = 0; c < k; ++c) {
                    bool ok = true;
                    for (const auto& [ua, ub] : unit_cl) {
                        if (ua == ui && next_unit[ub] == c) ok = false;
                        if (ub == ui && next_unit[ua] == c) ok = false;
                    }
                    if (!ok) continue;
                    double cost = 0.0;
                    for (std::size_t i : units[ui])
                        cost += squared_distance(X.row(i), centroids.row(c));
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_c = c;
                    }
                }
                if (best_c == k) {
                    feasible = false;
                    break;
                }
                next_unit[ui] = best_c;
            }
            if (!feasible) break;

            bool changed = false;
            for (std::size_t ui = 0; ui < units.size(); ++ui) {
                if (next_unit[ui] != unit_assign[ui]) changed = true;
                unit_assign[ui] = next_unit[ui];
                for (std::size_t i : units[ui]) assign[i] = next_unit[ui];
            }
            detail::update_centroids(X, k, assign, centroids);
            trace.push_back(detail::kmeans_objective(X, centroids, assign));
            if (!changed) break;
        }
        if (!feasible) continue;

        ClusteringResult r;
        r.assignments = assign;
        r.centroids = centroids;
        r.objective = trace.empty() ? 0.0 : trace.back();
        r.iterations = iter;
        r.best_restart = restart;
        r.objective_trace = std::move(trace);
        if (!have_best || r.objective < best.objective) {
            best = std::move(r);
            have_best = true;
        }
    }
    if (!have_best)
        throw AlgorithmError("constrained_kmeans: all restarts infeasible");
    return best;
}

// Seeded k-means: centroids start at the per-class means of the labeled
// seeds; with clamp=true seed points never leave their class cluster.
inline ClusteringResult constrained_seed_kmeans_fit(const SSLDataset& d, bool clamp = true,
                                                    std::size_t max_iter = 300) {
    const SSLDataset v = validate_dataset(d, TaskKind::clustering);
    const std::size_t k = v.n_classes;
    if (k < 1) throw DataError("constrained_seed_kmeans: no seed classes");
    const std::size_t l = v.n_labeled();
    const Matrix all = v.all_X();
    const std::size_t n = all.rows(), dim = all.cols();

    Matrix centroids(k, dim);
    std::vector<double> count(k, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
        const auto c = static_cast<std::size_t>(v.y[i]);
        count[c] += 1.0;
        for (std::size_t j = 0; j < dim; ++j) centroids(c, j) += v.X(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (count[c] == 0.0)
            throw DataError("constrained_seed_kmeans: class " + std::to_string(c) +
                            " has no seed");
        for (std::size_t j = 0; j < dim; ++j) centroids(c, j) /= count[c];
    }

    ClusteringResult r;
    r.assignments.assign(n, k);
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c;
            if (clamp && i < l) {
                c = static_cast<std::size_t>(v.y[i]);
            } else {
                c = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t cc = 0; cc < k; ++cc) {
                    const double d2 = squared_distance(all.row(i), centroids.row(cc));
                    if (d2 < best_d) {
                        best_d = d2;
                        c = cc;
                    }
                }
            }
            if (r.assignments[i] != c) changed = true;
            r.assignments[i] = c;
        }
        detail::update_centroids(all, k, r.assignments, centroids);
        r.objective_trace.push_back(detail::kmeans_objective(all, centroids, r.assignments));
        if (!changed) break;
    }
    r.centroids = centroids;
    r.objective = r.objective_trace.empty() ? 0.0 : r.objective_trace.back();
    r.iterations = std::min(iter + 1, max_iter);
    return r;
}

}  // namespace sslforge
