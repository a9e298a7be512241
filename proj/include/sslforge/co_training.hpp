#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "sslforge/base_learner.hpp"
#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

// Two disjoint feature views covering all columns.
struct ViewSplit {
    std::vector<std::size_t> view1, view2;
};

struct CoTrainingModel {
    ViewSplit views;
    std::unique_ptr<BaseClassifier> h1, h2;
    std::size_t n_classes = 0;
    std::size_t rounds_run = 0;
    std::size_t added_total = 0;

    // product of the two view-restricted probability estimates, renormalized
    Matrix predict_proba(const Matrix& X) const {
        const Matrix p1 = h1->predict_proba(X.take_cols(views.view1));
        const Matrix p2 = h2->predict_proba(X.take_cols(views.view2));
        Matrix out(X.rows(), n_classes);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < n_classes; ++c) {
                out(i, c) = p1(i, c) * p2(i, c);
                s += out(i, c);
            }
            for (std::size_t c = 0; c < n_classes; ++c)
                out(i, c) = s > 0.0 ? out(i, c) / s : 1.0 / static_cast<double>(n_classes);
        }
        return out;
    }
};

namespace detail {

// Top `count` pool members by probability of class c, skipping entries
// already taken this round; ties go to the lower unlabeled index.
inline std::vector<std::size_t> top_confident(const Matrix& proba,
                                              const std::vector<std::size_t>& pool,
                                              const std::vector<char>& taken,
                                              std::size_t cls, std::size_t count) {
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t t = 0; t < pool.size(); ++t) {
        if (taken[t]) continue;
        ranked.emplace_back(-proba(t, cls), t);
    }
    std::sort(ranked.begin(), ranked.end(),
              [&](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return pool[a.second] < pool[b.second];
              });
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < ranked.size() && out.size() < count; ++t)
        out.push_back(ranked[t].second);
    return out;
}

}  // namespace detail

// Blum-Mitchell co-training: each round both learners label their most
// confident picks from a replenished pool and hand them to the other
// learner's training set. Binary uses p positive + n negative picks;
// multiclass uses p picks per class.
inline CoTrainingModel co_training_fit(const SSLDataset& d, const BaseLearnerSpec& base,
                                       const ViewSplit* views = nullptr, std::size_t p = 1,
                                       std::size_t n_neg = 3, std::size_t pool_size = 75,
                                       std::size_t rounds = 30, std::uint64_t seed = 0) {
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    const std::size_t dims = v.n_features();
    const std::size_t K = v.n_classes;

    CoTrainingModel m;
    m.n_classes = K;
    m.h1 = make_base_classifier(base);
    m.h2 = make_base_classifier(base);
    if (!m.h1->has_proba())
        throw ConfigError("co_training: base learner must provide predict_proba");

    Rng rng(seed);
    if (views) {
        m.views = *views;
        std::vector<char> seen(dims, 0);
        if (m.views.view1.empty() || m.views.view2.empty())
            throw ConfigError("co_training: both views must be nonempty");
        for (std::size_t j : m.views.view1) {
            if (j >= dims || seen[j]) throw ConfigError("co_training: invalid view split");
            seen[j] = 1;
        }
        for (std::size_t j : m.views.view2) {
            if (j >= dims || seen[j]) throw ConfigError("co_training: invalid view split");
            seen[j] = 1;
        }
        for (char s : seen)
            if (!s) throw ConfigError("co_training: views must cover every column");
    } else {
        if (dims < 2) throw ConfigError("co_training: cannot split a single feature");
        std::vector<std::size_t> cols(dims);
        for (std::size_t j = 0; j < dims; ++j) cols[j] = j;
        rng.shuffle(cols);
        const std::size_t half = (dims + 1) / 2;
        m.views.view1.assign(cols.begin(), cols.begin() + half);
        m.views.view2.assign(cols.begin() + half, cols.end());
    }

    // per-learner growing training sets (full-width rows)
    Matrix X1 = v.X, X2 = v.X;
    LabelArray y1 = v.y, y2 = v.y;
    auto refit = [&] {
        m.h1->fit(X1.take_cols(m.views.view1), y1, K, nullptr);
        m.h2->fit(X2.take_cols(m.views.view2), y2, K, nullptr);
    };
    refit();

    const std::size_t u = v.n_unlabeled();
    std::vector<std::size_t> fresh = sample_without_replacement(rng, u, u);  // draw order
    std::size_t fresh_next = 0;
    std::vector<std::size_t> pool;
    auto replenish = [&] {
        while (pool.size() < pool_size && fresh_next < fresh.size())
            pool.push_back(fresh[fresh_next++]);
    };
    replenish();

    for (std::size_t round = 0; round < rounds && !pool.empty(); ++round) {
        Matrix pool_X = v.unlabeled_X.take_rows(pool);
        std::vector<char> taken(pool.size(), 0);

        struct Pick {
            std::size_t pool_slot;
            double label;
        };
        std::vector<Pick> picks1, picks2;
        auto collect = [&](BaseClassifier& h, const std::vector<std::size_t>& view,
                           std::vector<Pick>& out) {
            const Matrix proba = h.predict_proba(pool_X.take_cols(view));
            if (K == 2) {
                for (std::size_t t : detail::top_confident(proba, pool, taken, 1, p)) {
                    out.push_back({t, 1.0});
                    taken[t] = 1;
                }
                for (std::size_t t : detail::top_confident(proba, pool, taken, 0, n_neg)) {
                    out.push_back({t, 0.0});
                    taken[t] = 1;
                }
            } else {
                for (std::size_t c = 0; c < K; ++c)
                    for (std::size_t t : detail::top_confident(proba, pool, taken, c, p)) {
                        out.push_back({t, static_cast<double>(c)});
                        taken[t] = 1;
                    }
            }
        };
        collect(*m.h1, m.views.view1, picks1);
        collect(*m.h2, m.views.view2, picks2);
        if (picks1.empty() && picks2.empty()) break;

        // cross-teaching: h1's picks extend h2's set and vice versa
        for (const Pick& pk : picks1) {
            X2 = Matrix::vstack(X2, pool_X.take_rows({pk.pool_slot}));
            y2.push_back(pk.label);
        }
        for (const Pick& pk : picks2) {
            X1 = Matrix::vstack(X1, pool_X.take_rows({pk.pool_slot}));
            y1.push_back(pk.label);
        }
        m.added_total += picks1.size() + picks2.size();

        std::vector<std::size_t> remaining;
        for (std::size_t t = 0; t < pool.size(); ++t)
            if (!taken[t]) remaining.push_back(pool[t]);
        pool = std::move(remaining);
        replenish();

        refit();
        m.rounds_run = round + 1;
    }
    return m;
}

}  // namespace sslforge
