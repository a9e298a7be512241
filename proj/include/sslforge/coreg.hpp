#pragma once

#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/knn.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

// COREG: co-training regression with two kNN regressors under different
// Minkowski metrics. Each round a regressor labels the pool candidate
// whose inclusion most reduces its own leave-in error (delta > 0 strictly)
// and hands it to its companion's labeled pool.
struct CoRegModel {
    Matrix X1, X2;
    LabelArray y1, y2;
    std::size_t k1, k2;
    double p1, p2;
    std::size_t rounds_run = 0;
    std::size_t added1 = 0, added2 = 0;  // points added to each pool

    // regressors are cheap pool wrappers, rebuilt on demand
    Prediction predict(const Matrix& X) const {
        KnnRegressor r1(k1, p1), r2(k2, p2);
        r1.fit(X1, y1);
        r2.fit(X2, y2);
        Prediction p;
        p.labels.resize(X.rows());
        for (std::size_t i = 0; i < X.rows(); ++i)
            p.labels[i] = 0.5 * (r1.predict_one(X.row(i)) + r2.predict_one(X.row(i)));
        return p;
    }
};

namespace detail {

// delta_u for candidate x_u against pool (X, y) under metric (k, p):
// sum over the k nearest labeled neighbours of the squared-error change
// when (x_u, yhat) joins the pool.
inline double coreg_delta(const Matrix& X, const LabelArray& y, std::size_t k, double p,
                          std::span<const double> x_u, double yhat) {
    KnnRegressor before(k, p);
    before.fit(X, y);
    Matrix X_after = X;
    LabelArray y_after = y;
    X_after = Matrix::vstack(X_after, [&] {
        Matrix row(1, x_u.size());
        for (std::size_t j = 0; j < x_u.size(); ++j) row(0, j) = x_u[j];
        return row;
    }());
    y_after.push_back(yhat);
    KnnRegressor after(k, p);
    after.fit(X_after, y_after);

    const auto omega = k_nearest(X, x_u, k, p);
    double delta = 0.0;
    for (std::size_t i : omega) {
        const double e_before = y[i] - before.predict_one(X.row(i));
        const double e_after = y[i] - after.predict_one(X.row(i));
        delta += e_before * e_before - e_after * e_after;
    }
    return delta;
}

}  // namespace detail

inline CoRegModel coreg_fit(const SSLDataset& d, std::size_t k1 = 3, std::size_t k2 = 3,
                            double p1 = 2.0, double p2 = 5.0, std::size_t rounds = 100,
                            std::size_t pool_size = 100, std::uint64_t seed = 0) {
    const SSLDataset v = validate_dataset(d, TaskKind::regression);
    if (v.n_labeled() < std::max(k1, k2) + 1)
        throw DataError("coreg: need at least max(k1, k2) + 1 labeled rows");

    CoRegModel m;
    m.X1 = m.X2 = v.X;
    m.y1 = m.y2 = v.y;
    m.k1 = k1;
    m.k2 = k2;
    m.p1 = p1;
    m.p2 = p2;

    const std::size_t u = v.n_unlabeled();
    std::vector<char> available(u, 1);
    std::size_t remaining = u;
    Rng rng(seed);

    for (std::size_t round = 0; round < rounds && remaining > 0; ++round) {
        bool any_added = false;
        for (int side = 0; side < 2 && remaining > 0; ++side) {
            Matrix& own_X = side == 0 ? m.X1 : m.X2;
            LabelArray& own_y = side == 0 ? m.y1 : m.y2;
            Matrix& other_X = side == 0 ? m.X2 : m.X1;
            LabelArray& other_y = side == 0 ? m.y2 : m.y1;
            const std::size_t k = side == 0 ? k1 : k2;
            const double p = side == 0 ? p1 : p2;

            std::vector<std::size_t> pool_candidates;
            for (std::size_t i = 0; i < u; ++i)
                if (available[i]) pool_candidates.push_back(i);
            const auto draw =
                sample_without_replacement(rng, pool_candidates.size(),
                                           std::min(pool_size, pool_candidates.size()));

            KnnRegressor own(k, p);
            own.fit(own_X, own_y);

            double best_delta = 0.0;
            std::size_t best_idx = u;
            double best_yhat = 0.0;
            for (std::size_t slot : draw) {
                const std::size_t cand = pool_candidates[slot];
                const auto x_u = v.unlabeled_X.row(cand);
                const double yhat = own.predict_one(x_u);
                const double delta = detail::coreg_delta(own_X, own_y, k, p, x_u, yhat);
                if (delta > best_delta ||
                    (delta == best_delta && delta > 0 && cand < best_idx)) {
                    best_delta = delta;
                    best_idx = cand;
                    best_yhat = yhat;
                }
            }
            if (best_idx == u || !(best_delta > 0)) continue;

            other_X = Matrix::vstack(other_X, v.unlabeled_X.take_rows({best_idx}));
            other_y.push_back(best_yhat);
            available[best_idx] = 0;
            --remaining;
            any_added = true;
            (side == 0 ? m.added2 : m.added1) += 1;  // point lands in the companion pool
        }
        m.rounds_run = round + 1;
        if (!any_added) break;
    }
    return m;
}

}  // namespace sslforge
