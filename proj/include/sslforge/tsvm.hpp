#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/linear_svm.hpp"

namespace sslforge {

// Transductive SVM by label switching: supervised warm start, balanced
// pseudo-label assignment, then alternating pair swaps and unlabeled-cost
// annealing (C*_u doubling toward C_u). Binary only.
struct TsvmResult {
    LinearSvmModel model;
    std::vector<double> pseudo_labels;     // +-1 per unlabeled point, final
    std::vector<double> objective_trace;   // value after every retrain
    std::size_t swap_count = 0;
};

inline TsvmResult tsvm_fit(const SSLDataset& d, double C_l = 1.0, double C_u = 0.1,
                           double pos_fraction = -1.0) {
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    if (v.n_classes != 2)
        throw AlgorithmError("tsvm: binary only; one-vs-rest wrapping not supported");
    const std::size_t l = v.n_labeled(), u = v.n_unlabeled();
    if (u == 0) throw DataError("tsvm: no unlabeled data");
    if (C_l <= 0 || C_u <= 0) throw ConfigError("tsvm: costs must be positive");

    std::vector<double> y_l(l);
    double pos_count = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
        y_l[i] = v.y[i] == 1.0 ? 1.0 : -1.0;
        if (y_l[i] > 0) pos_count += 1.0;
    }
    if (pos_fraction < 0) pos_fraction = pos_count / static_cast<double>(l);
    if (pos_fraction > 1.0) throw ConfigError("tsvm: pos_fraction must be in [0, 1]");

    // (1) supervised SVM on the labeled data
    const std::vector<double> C_sup(l, C_l);
    LinearSvmModel sup = linear_svm_fit(v.X, y_l, C_sup);

    // (2) pseudo-labels: the round(pos_fraction * u) highest decision
    // values become positive, ties to the lower index
    const auto n_pos = static_cast<std::size_t>(
        std::lround(pos_fraction * static_cast<double>(u)));
    std::vector<std::pair<double, std::size_t>> ranked(u);
    for (std::size_t i = 0; i < u; ++i)
        ranked[i] = {-sup.decision(v.unlabeled_X.row(i)), i};
    std::sort(ranked.begin(), ranked.end());
    std::vector<double> y_u(u, -1.0);
    for (std::size_t t = 0; t < n_pos; ++t) y_u[ranked[t].second] = 1.0;

    const Matrix all = v.all_X();
    std::vector<double> y_all(l + u);
    std::vector<double> C_all(l + u);
    for (std::size_t i = 0; i < l; ++i) {
        y_all[i] = y_l[i];
        C_all[i] = C_l;
    }

    TsvmResult r;
    double C_star = std::max(1e-5, 1e-5 * C_u);
    constexpr std::size_t kSwapCap = 100000;

    // (3) annealing loop with objective-decreasing pair swaps inside
    while (true) {
        for (std::size_t i = 0; i < u; ++i) {
            y_all[l + i] = y_u[i];
            C_all[l + i] = C_star;
        }
        LinearSvmModel m = linear_svm_fit(all, y_all, C_all);
        double obj = svm_primal_objective(m, all, y_all, C_all);
        r.objective_trace.push_back(obj);

        while (true) {
            // slacks of the unlabeled points under the current solution
            double best_pos = 0.0, best_neg = 0.0;
            std::size_t idx_pos = u, idx_neg = u;
            for (std::size_t i = 0; i < u; ++i) {
                const double xi =
                    std::max(0.0, 1.0 - y_u[i] * m.decision(v.unlabeled_X.row(i)));
                if (y_u[i] > 0 && xi > best_pos) {
                    best_pos = xi;
                    idx_pos = i;
                } else if (y_u[i] < 0 && xi > best_neg) {
                    best_neg = xi;
                    idx_neg = i;
                }
            }
            if (idx_pos == u || idx_neg == u) break;
            if (!(best_pos > 0 && best_neg > 0 && best_pos + best_neg > 2.0)) break;

            y_u[idx_pos] = -1.0;
            y_u[idx_neg] = 1.0;
            y_all[l + idx_pos] = -1.0;
            y_all[l + idx_neg] = 1.0;
            m = linear_svm_fit(all, y_all, C_all);
            const double next_obj = svm_primal_objective(m, all, y_all, C_all);
            if (!(next_obj < obj))
                throw AlgorithmError("tsvm: swap failed to decrease the objective");
            obj = next_obj;
            r.objective_trace.push_back(obj);
            if (++r.swap_count > kSwapCap)
                throw AlgorithmError("tsvm: swap loop exceeded iteration cap");
        }

        r.model = m;
        if (C_star == C_u) break;
        C_star = std::min(2.0 * C_star, C_u);
    }
    r.pseudo_labels = y_u;
    return r;
}

}  // namespace sslforge
