#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "sslforge/base_learner.hpp"
#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/graph.hpp"
#include "sslforge/knn.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Weighted vote ensemble over {-1,+1} weak learners, with a 1-NN fallback
// for the degenerate case where boosting stops before any round is
// accepted. Binary only.
struct BoostEnsemble {
    std::vector<std::unique_ptr<BaseClassifier>> learners;
    std::vector<double> alphas;
    KnnClassifier fallback{1};
    std::size_t rounds_run = 0;

    static constexpr double kAlphaCap = 10.0;

    double score_one(std::span<const double> x) const {
        Matrix q(1, x.size());
        for (std::size_t j = 0; j < x.size(); ++j) q(0, j) = x[j];
        double h = 0.0;
        for (std::size_t t = 0; t < learners.size(); ++t)
            h += alphas[t] * (learners[t]->predict(q)[0] == 1.0 ? 1.0 : -1.0);
        return h;
    }

    std::vector<double> score(const Matrix& X) const {
        std::vector<double> h(X.rows(), 0.0);
        for (std::size_t t = 0; t < learners.size(); ++t) {
            const LabelArray pred = learners[t]->predict(X);
            for (std::size_t i = 0; i < X.rows(); ++i)
                h[i] += alphas[t] * (pred[i] == 1.0 ? 1.0 : -1.0);
        }
        return h;
    }

    // H > 0 -> class 1; H == 0 ties to class 0
    Prediction predict(const Matrix& X) const {
        if (learners.empty()) return fallback.predict(X);
        const std::vector<double> h = score(X);
        Matrix scores(X.rows(), 2);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            scores(i, 0) = -h[i];
            scores(i, 1) = h[i];
        }
        return Prediction::from_scores(std::move(scores));
    }
};

namespace detail {

inline void require_weighted_binary_base(const BaseClassifier& base) {
    if (!base.supports_weights())
        throw ConfigError("boosting: base learner must support sample weights");
}

inline LabelArray to_pm(const LabelArray& zero_one) {
    LabelArray out(zero_one.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = zero_one[i] == 1.0 ? 1.0 : -1.0;
    return out;
}

inline LabelArray from_pm(const std::vector<double>& pm) {
    LabelArray out(pm.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = pm[i] > 0 ? 1.0 : 0.0;
    return out;
}

}  // namespace detail

// ASSEMBLE.AdaBoost: boosting over labeled data plus pseudo-labeled
// unlabeled data (initialized by 1-NN, refreshed from the ensemble score
// each round), with weights w_i proportional to exp(-y_i H(x_i)). With
// beta = 1 and no unlabeled data this is exactly AdaBoost.
inline BoostEnsemble assemble_fit(const SSLDataset& d, const BaseLearnerSpec& base,
                                  std::size_t T = 30, double beta = 0.9,
                                  std::uint64_t seed = 0) {
    (void)seed;  // deterministic: no randomized choices in this scheme
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    if (v.n_classes != 2) throw AlgorithmError("assemble: binary only");
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("assemble: beta must be in (0, 1]");
    const std::size_t l = v.n_labeled(), u = v.n_unlabeled(), n = l + u;

    BoostEnsemble ens;
    ens.fallback = KnnClassifier(1);
    ens.fallback.fit(v.X, v.y, 2);
    {
        auto probe = make_base_classifier(base);
        detail::require_weighted_binary_base(*probe);
    }

    const Matrix all = v.all_X();
    std::vector<double> target(n);
    for (std::size_t i = 0; i < l; ++i) target[i] = v.y[i] == 1.0 ? 1.0 : -1.0;
    if (u > 0) {
        const Prediction init = ens.fallback.predict(v.unlabeled_X);
        for (std::size_t i = 0; i < u; ++i) target[l + i] = init.labels[i] == 1.0 ? 1.0 : -1.0;
    }

    std::vector<double> w(n);
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < l; ++i) sum += (w[i] = beta / static_cast<double>(l));
        for (std::size_t i = 0; i < u; ++i)
            sum += (w[l + i] = (1.0 - beta) / static_cast<double>(u));
        for (double& x : w) x /= sum;
    }

    std::vector<double> H(n, 0.0);
    LabelArray y01(n);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < n; ++i) y01[i] = target[i] > 0 ? 1.0 : 0.0;
        auto learner = make_base_classifier(base);
        learner->fit(all, y01, 2, &w);
        const std::vector<double> pred_pm = detail::to_pm(learner->predict(all));

        double eps = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (pred_pm[i] != target[i]) eps += w[i];
        if (eps >= 0.5) break;

        const double alpha =
            eps == 0.0 ? BoostEnsemble::kAlphaCap
                       : std::min(0.5 * std::log((1.0 - eps) / eps), BoostEnsemble::kAlphaCap);
        ens.learners.push_back(std::move(learner));
        ens.alphas.push_back(alpha);
        ens.rounds_run = t + 1;
        for (std::size_t i = 0; i < n; ++i) H[i] += alpha * pred_pm[i];
        if (eps == 0.0) break;

        for (std::size_t i = 0; i < u; ++i) target[l + i] = H[l + i] > 0 ? 1.0 : -1.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += (w[i] = std::exp(-target[i] * H[i]));
        for (double& x : w) x /= sum;
    }
    return ens;
}

struct SemiBoostDiagnostics {
    std::vector<double> alpha_trace;
    std::size_t selected_per_round = 0;
};

// One unlabeled point's (p_i, q_i) under similarity S and ensemble scores
// H (labeled entries first). The j-over-unlabeled sums skip j == i; the
// shared S_ii term would cancel in p - q anyway.
inline std::pair<double, double> semiboost_pq(const Matrix& S, const std::vector<double>& y_pm,
                                              const std::vector<double>& H, std::size_t l,
                                              std::size_t u, std::size_t i, double C) {
    const std::size_t gi = l + i;
    double lab_pos = 0.0, lab_neg = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
        if (y_pm[j] > 0) lab_pos += S(gi, j);
        else lab_neg += S(gi, j);
    }
    double unl_pos = 0.0, unl_neg = 0.0;
    for (std::size_t j = 0; j < u; ++j) {
        if (j == i) continue;
        unl_pos += S(gi, l + j) * std::exp(H[l + j] - H[gi]);
        unl_neg += S(gi, l + j) * std::exp(H[gi] - H[l + j]);
    }
    return {lab_pos * std::exp(-2.0 * H[gi]) + 0.5 * C * unl_pos,
            lab_neg * std::exp(2.0 * H[gi]) + 0.5 * C * unl_neg};
}

// SemiBoost (Mallapragada et al.): similarity-guided boosting. Each round
// derives pseudo-labels and confidences for the unlabeled points from the
// p_i / q_i statistics, fits the weak learner on labeled + the most
// confident picks, and stops when the ensemble weight goes nonpositive.
inline BoostEnsemble semiboost_fit(const SSLDataset& d, const BaseLearnerSpec& base,
                                   std::size_t T = 20, double C = 1.0,
                                   double sample_fraction = 0.1, double rbf_gamma = -1.0,
                                   std::uint64_t seed = 0,
                                   SemiBoostDiagnostics* diag = nullptr) {
    (void)seed;
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    if (v.n_classes != 2) throw AlgorithmError("semiboost: binary only");
    if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
        throw ConfigError("semiboost: sample_fraction must be in (0, 1]");
    const std::size_t l = v.n_labeled(), u = v.n_unlabeled(), n = l + u;

    BoostEnsemble ens;
    ens.fallback = KnnClassifier(1);
    ens.fallback.fit(v.X, v.y, 2);
    {
        auto probe = make_base_classifier(base);
        detail::require_weighted_binary_base(*probe);
    }
    if (u == 0) throw DataError("semiboost: no unlabeled data");

    const Matrix all = v.all_X();
    const double gamma = rbf_gamma > 0 ? rbf_gamma : default_rbf_gamma(all);
    Matrix S(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        S(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = std::exp(-gamma * squared_distance(all.row(i), all.row(j)));
            S(i, j) = s;
            S(j, i) = s;
        }
    }
    std::vector<double> y_pm(l);
    for (std::size_t i = 0; i < l; ++i) y_pm[i] = v.y[i] == 1.0 ? 1.0 : -1.0;

    std::vector<double> H(n, 0.0);
    const std::size_t n_select = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(sample_fraction * static_cast<double>(u))));

    for (std::size_t t = 0; t < T; ++t) {
        std::vector<double> p(u, 0.0), q(u, 0.0);
        for (std::size_t i = 0; i < u; ++i) {
            const auto [pi, qi] = semiboost_pq(S, y_pm, H, l, u, i, C);
            p[i] = pi;
            q[i] = qi;
        }
        std::vector<double> z(u), conf(u);
        for (std::size_t i = 0; i < u; ++i) {
            z[i] = p[i] - q[i] > 0 ? 1.0 : -1.0;
            conf[i] = std::abs(p[i] - q[i]);
        }

        std::vector<std::size_t> order(u);
        for (std::size_t i = 0; i < u; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (conf[a] != conf[b]) return conf[a] > conf[b];
            return a < b;
        });
        const std::size_t take = std::min(n_select, u);

        Matrix fitX = v.X;
        LabelArray fitY = v.y;
        std::vector<double> fitW(l, 1.0);
        for (std::size_t s = 0; s < take; ++s) {
            const std::size_t i = order[s];
            fitX = Matrix::vstack(fitX, v.unlabeled_X.take_rows({i}));
            fitY.push_back(z[i] > 0 ? 1.0 : 0.0);
            fitW.push_back(conf[i]);
        }
        double wsum = 0.0;
        for (double x : fitW) wsum += x;
        if (wsum <= 0) break;
        for (double& x : fitW) x /= wsum;

        auto learner = make_base_classifier(base);
        learner->fit(fitX, fitY, 2, &fitW);
        const std::vector<double> pred_pm = detail::to_pm(learner->predict(v.unlabeled_X));

        double agree = 0.0, disagree = 0.0;
        for (std::size_t i = 0; i < u; ++i) {
            if (pred_pm[i] == z[i]) agree += conf[i];
            else disagree += conf[i];
        }
        double alpha;
        if (disagree == 0.0) alpha = agree > 0 ? BoostEnsemble::kAlphaCap : 0.0;
        else alpha = std::min(0.25 * std::log(agree / disagree), BoostEnsemble::kAlphaCap);
        if (diag) diag->alpha_trace.push_back(alpha);
        if (alpha <= 0.0) break;

        const std::vector<double> pred_all = detail::to_pm(learner->predict(all));
        for (std::size_t i = 0; i < n; ++i) H[i] += alpha * pred_all[i];
        ens.learners.push_back(std::move(learner));
        ens.alphas.push_back(alpha);
        ens.rounds_run = t + 1;
    }
    if (diag) diag->selected_per_round = n_select;
    return ens;
}

}  // namespace sslforge
