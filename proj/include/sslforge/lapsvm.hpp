#pragma once

#include <cmath>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/graph.hpp"
#include "sslforge/label_propagation.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Laplacian SVM in the primal with squared hinge, rbf kernel expansion
// over all (labeled + unlabeled) points, and the symmetric-normalized
// graph Laplacian as the manifold penalty. Trained by gradient descent
// with backtracking halving. Binary only.
struct LapSvmModel {
    Matrix train_X;               // all points, labeled first
    std::vector<double> alpha;
    double b = 0.0;
    double rbf_gamma = 1.0;
    std::size_t iterations = 0;
    double objective = 0.0;

    double decision(std::span<const double> x) const {
        double f = b;
        for (std::size_t i = 0; i < train_X.rows(); ++i)
            f += alpha[i] * std::exp(-rbf_gamma * squared_distance(train_X.row(i), x));
        return f;
    }
};

namespace detail {

struct LapSvmProblem {
    Matrix K;                  // rbf Gram over all points
    Matrix L;                  // dense symmetric-normalized Laplacian I - S
    std::vector<double> y_pm;  // labeled targets, +-1
    std::size_t l = 0, n = 0;
    double gamma_A = 0.0, gamma_I = 0.0;

    double objective(const std::vector<double>& alpha, double b,
                     std::vector<double>* f_out = nullptr) const {
        std::vector<double> f(n, b);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += K(i, j) * alpha[j];
            f[i] += s;
        }
        double hinge = 0.0;
        for (std::size_t i = 0; i < l; ++i) {
            const double h = std::max(0.0, 1.0 - y_pm[i] * f[i]);
            hinge += h * h;
        }
        hinge /= static_cast<double>(l);
        double quad = 0.0;  // alpha^T K alpha; K symmetric
        std::vector<double> ka(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) ka[i] = f[i] - b;
        for (std::size_t i = 0; i < n; ++i) quad += alpha[i] * ka[i];
        double manifold = 0.0;  // (K alpha)^T L (K alpha)
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += L(i, j) * ka[j];
            manifold += ka[i] * s;
        }
        if (f_out) *f_out = std::move(f);
        return hinge + gamma_A * quad +
               gamma_I / (static_cast<double>(n) * n) * manifold;
    }

    void gradient(const std::vector<double>& alpha, double b, std::vector<double>& g_alpha,
                  double& g_b) const {
        std::vector<double> f;
        objective(alpha, b, &f);
        std::vector<double> ka(n);
        for (std::size_t i = 0; i < n; ++i) ka[i] = f[i] - b;

        // dJ/df from the squared hinge (labeled rows only)
        std::vector<double> gf(n, 0.0);
        for (std::size_t i = 0; i < l; ++i) {
            const double h = std::max(0.0, 1.0 - y_pm[i] * f[i]);
            gf[i] = -2.0 * h * y_pm[i] / static_cast<double>(l);
        }
        std::vector<double> lka(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += L(i, j) * ka[j];
            lka[i] = s;
        }
        g_alpha.assign(n, 0.0);
        const double mscale = 2.0 * gamma_I / (static_cast<double>(n) * n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += K(i, j) * (gf[j] + mscale * lka[j]);
            g_alpha[i] = s + 2.0 * gamma_A * ka[i];
        }
        g_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) g_b += gf[i];
    }
};

inline LapSvmProblem build_lapsvm_problem(const SSLDataset& v, double gamma_A,
                                          double gamma_I, double rbf_gamma,
                                          std::size_t knn_k) {
    LapSvmProblem p;
    p.l = v.n_labeled();
    p.n = p.l + v.n_unlabeled();
    p.gamma_A = gamma_A;
    p.gamma_I = gamma_I;
    const Matrix all = v.all_X();
    if (rbf_gamma <= 0) rbf_gamma = default_rbf_gamma(all);
    p.K = Matrix(p.n, p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        p.K(i, i) = 1.0;
        for (std::size_t j = i + 1; j < p.n; ++j) {
            const double kij = std::exp(-rbf_gamma * squared_distance(all.row(i), all.row(j)));
            p.K(i, j) = kij;
            p.K(j, i) = kij;
        }
    }
    p.y_pm.resize(p.l);
    for (std::size_t i = 0; i < p.l; ++i) p.y_pm[i] = v.y[i] == 1.0 ? 1.0 : -1.0;
    if (gamma_I != 0.0 && p.n >= 2) {
        const std::size_t k = std::min(knn_k, p.n - 1);
        const AffinityGraph g = build_knn_graph(all, k, GraphWeight::rbf, rbf_gamma);
        const Matrix S = normalized_adjacency(g);
        p.L = Matrix(p.n, p.n);
        for (std::size_t i = 0; i < p.n; ++i) {
            p.L(i, i) = 1.0;
            for (std::size_t j = 0; j < p.n; ++j) p.L(i, j) -= S(i, j);
        }
    } else {
        p.L = Matrix(p.n, p.n);  // zero penalty
        p.gamma_I = 0.0;
    }
    return p;
}

}  // namespace detail

inline LapSvmModel lapsvm_fit(const SSLDataset& d, double gamma_A = 1e-2,
                              double gamma_I = 1e-2, double rbf_gamma = -1.0,
                              std::size_t knn_k = 7, std::size_t iters = 500) {
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    if (v.n_classes != 2) throw AlgorithmError("lapsvm: binary only");
    if (gamma_A < 0 || gamma_I < 0) throw ConfigError("lapsvm: penalties must be >= 0");

    const Matrix all = v.all_X();
    const double gamma = rbf_gamma > 0 ? rbf_gamma : default_rbf_gamma(all);
    detail::LapSvmProblem p = detail::build_lapsvm_problem(v, gamma_A, gamma_I, gamma, knn_k);

    LapSvmModel m;
    m.train_X = all;
    m.rbf_gamma = gamma;
    m.alpha.assign(p.n, 0.0);
    m.b = 0.0;

    double obj = p.objective(m.alpha, m.b);
    double step = 1.0;
    std::vector<double> g_alpha;
    double g_b = 0.0;
    for (std::size_t it = 0; it < iters; ++it) {
        p.gradient(m.alpha, m.b, g_alpha, g_b);
        bool accepted = false;
        bool stalled = false;
        step *= 2.0;  // allow recovery after previous halvings
        std::vector<double> trial(p.n);
        for (int halving = 0; halving < 60; ++halving) {
            for (std::size_t i = 0; i < p.n; ++i) trial[i] = m.alpha[i] - step * g_alpha[i];
            const double trial_b = m.b - step * g_b;
            const double trial_obj = p.objective(trial, trial_b);
            if (!std::isfinite(trial_obj))
                throw AlgorithmError("lapsvm: non-finite objective during line search");
            if (trial_obj <= obj) {
                m.alpha = trial;
                m.b = trial_b;
                accepted = true;
                m.iterations = it + 1;
                stalled = obj - trial_obj < 1e-14 * (1.0 + std::abs(obj));
                obj = trial_obj;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || stalled) break;
    }
    m.objective = obj;
    return m;
}

// Gradient of the LapSVM objective for verification against finite
// differences; exposed for tests.
inline void lapsvm_objective_gradient(const SSLDataset& d, double gamma_A, double gamma_I,
                                      double rbf_gamma, std::size_t knn_k,
                                      const std::vector<double>& alpha, double b,
                                      double& objective, std::vector<double>& g_alpha,
                                      double& g_b) {
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    if (rbf_gamma <= 0) rbf_gamma = default_rbf_gamma(v.all_X());
    detail::LapSvmProblem p =
        detail::build_lapsvm_problem(v, gamma_A, gamma_I, rbf_gamma, knn_k);
    objective = p.objective(alpha, b);
    p.gradient(alpha, b, g_alpha, g_b);
}

}  // namespace sslforge
