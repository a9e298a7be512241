#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "sslforge/base_learner.hpp"
#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

// Pseudo-set sizing rule for one tri-training learner. e_prev/l_prev are
// the previous round's error estimate and accepted set size; e_t is the
// joint error of the other two learners; candidates is |L_i|.
struct TriUpdateDecision {
    bool accept = false;
    std::size_t l_prev_after_init = 0;  // l_prev, initialized if it was 0
    std::size_t final_size = 0;         // accepted set size (after subsampling)
    bool subsampled = false;
};

inline TriUpdateDecision tri_update_decision(double e_prev, std::size_t l_prev, double e_t,
                                             std::size_t candidates) {
    TriUpdateDecision d;
    d.l_prev_after_init = l_prev;
    if (!(e_t < e_prev) || candidates == 0) return d;
    if (l_prev == 0)
        d.l_prev_after_init =
            static_cast<std::size_t>(std::floor(e_t / (e_prev - e_t))) + 1;
    if (candidates <= d.l_prev_after_init) return d;
    const double lhs = e_t * static_cast<double>(candidates);
    const double rhs = e_prev * static_cast<double>(d.l_prev_after_init);
    if (lhs < rhs) {
        d.accept = true;
        d.final_size = candidates;
        return d;
    }
    const auto s = static_cast<std::size_t>(std::ceil(rhs / e_t - 1.0));
    if (s >= d.l_prev_after_init + 1) {
        d.accept = true;
        d.final_size = s;
        d.subsampled = true;
    }
    return d;
}

struct TriTrainingModel {
    std::unique_ptr<BaseClassifier> h[3];
    std::size_t n_classes = 0;
    std::size_t rounds_run = 0;
    std::size_t accepted_updates = 0;

    // majority vote as class shares; ties resolve via argmax tie-break
    Matrix predict_proba(const Matrix& X) const {
        Matrix votes(X.rows(), n_classes);
        for (const auto& learner : h) {
            const LabelArray pred = learner->predict(X);
            for (std::size_t i = 0; i < X.rows(); ++i)
                votes(i, static_cast<std::size_t>(pred[i])) += 1.0 / 3.0;
        }
        return votes;
    }
};

// Zhou-Li tri-training: three learners from bootstrap resamples; each
// round a learner retrains on unlabeled points its two peers agree on,
// guarded by the e_t * l_t < e_prev * l_prev bookkeeping.
inline TriTrainingModel tri_training_fit(const SSLDataset& d, const BaseLearnerSpec& base,
                                         std::uint64_t seed = 0) {
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    const std::size_t l = v.n_labeled(), u = v.n_unlabeled(), K = v.n_classes;

    TriTrainingModel m;
    m.n_classes = K;
    Rng rng(seed);
    for (auto& learner : m.h) {
        learner = make_base_classifier(base);
        std::vector<std::size_t> boot(l);
        bool all_classes = false;
        for (int attempt = 0; attempt < 64 && !all_classes; ++attempt) {
            for (std::size_t i = 0; i < l; ++i) boot[i] = rng.next_index(l);
            std::vector<char> seen(K, 0);
            for (std::size_t i : boot) seen[static_cast<std::size_t>(v.y[i])] = 1;
            all_classes = true;
            for (char s : seen) all_classes = all_classes && s;
        }
        if (!all_classes)
            throw DataError("tri_training: bootstrap cannot cover every class");
        Matrix bx = v.X.take_rows(boot);
        LabelArray by(l);
        for (std::size_t i = 0; i < l; ++i) by[i] = v.y[boot[i]];
        learner->fit(bx, by, K, nullptr);
    }

    double e_prev[3] = {0.5, 0.5, 0.5};
    std::size_t l_prev[3] = {0, 0, 0};
    constexpr std::size_t kMaxRounds = 100;

    for (std::size_t round = 0; round < kMaxRounds; ++round) {
        LabelArray on_labeled[3], on_unlabeled[3];
        for (int i = 0; i < 3; ++i) {
            on_labeled[i] = m.h[i]->predict(v.X);
            if (u > 0) on_unlabeled[i] = m.h[i]->predict(v.unlabeled_X);
        }

        struct Update {
            bool apply = false;
            std::vector<std::size_t> pick;
            LabelArray labels;
            double e_t = 0.0;
            std::size_t size = 0;
        } updates[3];

        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            std::size_t agree = 0, agree_wrong = 0;
            for (std::size_t t = 0; t < l; ++t) {
                if (on_labeled[j][t] != on_labeled[k][t]) continue;
                ++agree;
                if (on_labeled[j][t] != v.y[t]) ++agree_wrong;
            }
            const double e_t =
                agree == 0 ? 0.5
                           : std::max(static_cast<double>(agree_wrong) / agree, 1e-10);

            std::vector<std::size_t> candidates;
            for (std::size_t t = 0; t < u; ++t)
                if (on_unlabeled[j][t] == on_unlabeled[k][t]) candidates.push_back(t);

            const TriUpdateDecision dec =
                tri_update_decision(e_prev[i], l_prev[i], e_t, candidates.size());
            l_prev[i] = dec.l_prev_after_init;
            if (!dec.accept) continue;
            if (dec.subsampled) {
                rng.shuffle(candidates);
                candidates.resize(dec.final_size);
                std::sort(candidates.begin(), candidates.end());
            }
            if (!(e_t * static_cast<double>(dec.final_size) <
                  e_prev[i] * static_cast<double>(l_prev[i])))
                throw AlgorithmError("tri_training: bookkeeping invariant violated");
            updates[i].apply = true;
            updates[i].pick = std::move(candidates);
            updates[i].e_t = e_t;
            updates[i].size = dec.final_size;
            updates[i].labels.resize(updates[i].pick.size());
            for (std::size_t t = 0; t < updates[i].pick.size(); ++t)
                updates[i].labels[t] = on_unlabeled[(i + 1) % 3][updates[i].pick[t]];
        }

        bool any = false;
        for (int i = 0; i < 3; ++i) {
            if (!updates[i].apply) continue;
            any = true;
            Matrix X = Matrix::vstack(v.X, v.unlabeled_X.take_rows(updates[i].pick));
            LabelArray y = v.y;
            y.insert(y.end(), updates[i].labels.begin(), updates[i].labels.end());
            m.h[i]->fit(X, y, K, nullptr);
            e_prev[i] = updates[i].e_t;
            l_prev[i] = updates[i].size;
            ++m.accepted_updates;
        }
        m.rounds_run = round + 1;
        if (!any) break;
    }
    return m;
}

}  // namespace sslforge
